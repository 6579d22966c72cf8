"""Time the numba kernels against the numpy fallback on the preset codes.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--only min_weight]

Each row reports the best wall time per backend and checks that both
backends return the same value.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mczcodes import family, kernels
from mczcodes.css import build_css, logical_basis, standard_form
from mczcodes.gates import gate_arrays
from mczcodes.scheduler import all_to_all, compile_circuit


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    for name in ("rs8-cz", "rs16-ccz", "rs25-cz"):
        inst = family.preset(name)
        sf = standard_form(inst)
        css = build_css(sf, inst)
        F = inst.field
        G = css.generator
        yield f"min_weight {name} dX", lambda b, F=F, G=G, k=css.k: kernels.min_weight(F, G, lead=k, backend=b)[0]

        rows = inst.code.gens
        m = inst.m_max
        yield (f"tuple_sums {name} order {m}",
               lambda b, F=F, rows=rows, m=m, u=inst.u: kernels.tuple_sums(F, [rows] * (m + 1), u, backend=b))

        arity = 3 if name == "rs16-ccz" else 2
        sched = compile_circuit(inst, css, sf, all_to_all(inst, arity))
        pos, betas = gate_arrays(css, sched.physical_gates())
        rng = np.random.default_rng(0)
        states = [logical_basis(css, F.random(rng, css.k)) for _ in range(arity)]
        if arity == 2:
            states = [np.concatenate([logical_basis(css, F.random(rng, css.k)) for _ in range(8)])
                      for _ in range(arity)]
        sizes = "x".join(str(s.shape[0]) for s in states)
        yield (f"phase_table {name} all-to-all ({sizes})",
               lambda b, F=F, s=states, p=pos, be=betas: kernels.phase_table(F, s, p, be, backend=b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", default="", help="substring filter on case names")
    args = ap.parse_args()

    print(f"numba available: {kernels.HAVE_NUMBA}")
    print(f"{'case':<48} {'numba s':>10} {'numpy s':>10} {'speedup':>8}  same")
    for label, fn in cases():
        if args.only and args.only not in label:
            continue
        fn("numba")  # compile outside the timed runs
        t_nb, a = best_of(lambda: fn("numba"), args.repeat)
        t_np, b = best_of(lambda: fn("numpy"), args.repeat)
        same = bool(np.array_equal(np.asarray(a), np.asarray(b)))
        print(f"{label:<48} {t_nb:>10.4f} {t_np:>10.4f} {t_np / max(t_nb, 1e-9):>8.1f}  {same}")


if __name__ == "__main__":
    main()
