"""Command-line entry point: ``mczcodes <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when some check fails (a JSON
failure list is printed), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from math import floor
from pathlib import Path

import numpy as np

from . import codes, family, io, kernels
from .css import build_css, css_distance, independence_table, standard_form
from .errors import BudgetExceeded, MczError, ParseError
from .family import FamilyInstance
from .gates import (
    LogicalGate,
    PhysicalGate,
    corollary_sum_check,
    layer_is_depth_one,
    logical_phase,
    modulation_build,
    physical_layer,
    physical_phase,
    verify_main_theorem,
)
from .gf import field_create
from .scheduler import all_to_all, compile_circuit, random_circuit, schedule_depth

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Report:
    """Named checks with the claim each one corresponds to."""

    lines: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool | None, claim: str, detail: str = "") -> None:
        self.lines.append({"check": name, "passed": passed, "claim": claim, "detail": detail})

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.lines if r["passed"] is False]

    def render(self) -> str:
        out = []
        width = max((len(r["check"]) for r in self.lines), default=0)
        for r in self.lines:
            tag = {True: "PASS", False: "FAIL", None: "INFO"}[r["passed"]]
            line = f"{tag}  {r['check']:<{width}}  {r['claim']}"
            if r["detail"]:
                line += f"  [{r['detail']}]"
            out.append(line)
        return "\n".join(out)


# ---------------------------------------------------------------------------
# input helpers


def load_instance(spec: str) -> FamilyInstance:
    """A preset name or the path of an instance file."""
    if spec in family.PRESETS:
        return family.preset(spec)
    path = Path(spec)
    if not path.exists():
        raise ParseError(f"{spec!r} is neither a preset ({', '.join(sorted(family.PRESETS))}) nor a file")
    return io.instance_from_dict(io.read_json(path))


def _json_arg(text: str):
    """Inline JSON or the path of a JSON file."""
    p = Path(text)
    if p.exists():
        return io.read_json(p)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"could not parse {text!r} as JSON or find it as a file") from exc


def _emit(obj: dict, out: str | None) -> None:
    text = io.write_json(obj, out)
    if out is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {out}")


def _pipeline(inst: FamilyInstance):
    sf = standard_form(inst)
    return sf, build_css(sf, inst)


# ---------------------------------------------------------------------------
# subcommands


def cmd_bounds(args) -> int:
    rep = family.bound_report(args.ell, args.s, args.N, args.k, args.arity)
    rows = [("ell", rep.ell), ("s", rep.s), ("N", rep.N),
            ("K_lb", rep.K_lb), ("D_lb", rep.D_lb), ("Dperp_lb", rep.Dperp_lb)]
    if rep.k is not None:
        rows += [("k", rep.k), ("d_lb", rep.d_lb)]
    if rep.depth_ub is not None:
        rows += [("m", rep.m), ("depth_ub", rep.depth_ub)]
    width = max(len(n) for n, _ in rows)
    for name, v in rows:
        exact = str(v)
        fl = f"  (floor {floor(v)})" if not isinstance(v, int) and v is not None else ""
        print(f"{name:<{width}}  {exact}{fl}")
    machine = {
        "ell": rep.ell, "s": rep.s, "N": rep.N,
        "K_lb": str(rep.K_lb), "D_lb": str(rep.D_lb), "Dperp_lb": str(rep.Dperp_lb),
        "k": rep.k, "d_lb": None if rep.d_lb is None else str(rep.d_lb),
        "m": rep.m, "depth_ub": rep.depth_ub, "floors": rep.floors,
    }
    print("--- machine ---")
    print(json.dumps(machine, sort_keys=True))
    if args.out:
        io.write_json(machine, args.out)
    return EXIT_OK


def cmd_grs(args) -> int:
    F = field_create(args.p, args.e)
    inst = family.grs_build(F, args.k, args.subgroup, args.coset_rep, args.m_max, args.name or "")
    _emit(io.instance_to_dict(inst), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    inst = load_instance(args.instance)
    _, css = _pipeline(inst)
    _emit(io.css_to_dict(css), args.out)
    return EXIT_OK


def cmd_circuit(args) -> int:
    inst = load_instance(args.instance)
    m = args.arity or inst.m_max
    if args.random:
        rng = np.random.default_rng(args.seed)
        gates = random_circuit(inst, m, args.random, rng)
    else:
        gates = all_to_all(inst, m, args.gamma)
    _emit(io.circuit_to_dict(gates, m), args.out)
    return EXIT_OK


def _logical_circuit(path: str) -> tuple[int, list[LogicalGate]]:
    m, gates = io.circuit_from_dict(io.read_json(path))
    if any(not isinstance(g, LogicalGate) for g in gates):
        raise ParseError(f"{path}: expected a logical circuit (gates with gamma)")
    return m, gates


def cmd_compile(args) -> int:
    inst = load_instance(args.instance)
    sf, css = _pipeline(inst)
    m, gates = _logical_circuit(args.circuit)
    sched = compile_circuit(inst, css, sf, gates, m)
    bound = family.depth_bound(len(inst.group), m)
    print(f"depth {schedule_depth(sched)} (bound {bound})", file=sys.stderr)
    _emit(io.schedule_to_dict(sched), args.out)
    return EXIT_OK


def cmd_phase(args) -> int:
    inst = load_instance(args.instance)
    sf, css = _pipeline(inst)
    F = inst.field
    m, gates = io.circuit_from_dict(io.read_json(args.circuit))
    inputs = np.asarray(_json_arg(args.inputs), dtype=np.int64)
    if inputs.ndim != 2 or inputs.shape[0] != m:
        raise ParseError(f"inputs must be {m} vectors")
    if np.any((inputs < 0) | (inputs >= F.q)):
        raise ParseError(f"inputs must be field elements in [0, {F.q})")
    out: dict = {"m": m}
    if gates and isinstance(gates[0], PhysicalGate):
        if inputs.shape[1] != css.n:
            raise ParseError(f"physical strings must have length {css.n}")
        out["physical_phase"] = physical_phase(css, gates, inputs)
        _emit(out, args.out)
        return EXIT_OK
    if inputs.shape[1] != css.k:
        raise ParseError(f"logical vectors must have length {css.k}")
    out["logical_phase"] = logical_phase(css, gates, inputs)
    # push the compiled schedule through random coset representatives
    sched = compile_circuit(inst, css, sf, gates, m)
    rng = np.random.default_rng(args.seed)
    phys = sched.physical_gates()
    agree = True
    for _ in range(args.samples):
        strings = []
        for x in inputs:
            s = F.matmul(x[None, :], css.g1)[0]
            if css.g0.shape[0]:
                s = F.add(s, F.matmul(F.random(rng, css.g0.shape[0])[None, :], css.g0)[0])
            strings.append(s)
        agree &= physical_phase(css, phys, strings) == out["logical_phase"]
    out["compiled_depth"] = schedule_depth(sched)
    out["samples"] = args.samples
    out["compiled_phase_agrees"] = bool(agree)
    _emit(out, args.out)
    if not agree:
        _failures([{"check": "compiled_phase", "passed": False,
                    "claim": "compiled physical circuit reproduces the logical phase"}])
        return EXIT_FAIL
    return EXIT_OK


def cmd_distance(args) -> int:
    inst = load_instance(args.instance)
    _, css = _pipeline(inst)
    r = css_distance(css, args.budget)
    out = {"n": css.n, "k": css.k, "dX": r.dX, "dZ": r.dZ, "d": r.d, "exact": r.exact,
           "D": r.D, "Dperp": r.Dperp, "bound": r.bound, "meets_bound": r.meets_bound}
    _emit(out, args.out)
    if r.meets_bound is False:
        _failures([{"check": "distance", "passed": False,
                    "claim": "punctured distance is at least min(D, D_perp) - k"}])
        return EXIT_FAIL
    return EXIT_OK


def run_checks(inst: FamilyInstance, arity: int | None, seed: int, budget: int, samples: int) -> Report:
    """The full invariant suite on one instance."""
    rep = Report()
    F = inst.field
    c = inst.code
    top = arity or inst.m_max

    validation = family.validate(inst, budget)
    for chk in validation.checks:
        rep.add(f"instance.{chk.name}", chk.passed, chk.claim, chk.detail)
    if not validation.ok:
        rep.add("downstream", None, "gate and distance checks need a valid instance", "skipped")
        return rep

    ladder = [codes.mult_property_check(c, inst.u, m) for m in range(1, inst.m_max + 2)]
    rep.add("mult.ladder", all(ladder[:-1]),
            "u * C^{*m} lies in the dual for every order up to m_max",
            "orders 1..%d: %s" % (inst.m_max + 1, "".join("T" if b else "F" for b in ladder)))
    oracle = [codes.mult_property_orthogonality(c, inst.u, m) for m in range(1, inst.m_max + 2)]
    rep.add("mult.oracle", oracle == ladder,
            "containment test agrees with the direct orthogonality sums")
    if c.contains_vectors(np.ones(inst.N, dtype=np.int64))[0]:
        down = codes.mult_downgrade_check(c, inst.u, inst.m_max)
        rep.add("mult.downgrade", down == ladder[inst.m_max - 1],
                "with the all-ones word, the top order implies every lower order")

    try:
        sf, css = _pipeline(inst)
    except MczError as exc:
        rep.add("css.build", False, "standard form and block independence", str(exc))
        return rep
    k = sf.k
    delta = np.array_equal(sf.g_tilde[:k, :k], np.eye(k, dtype=np.int64)) and not np.any(sf.g_tilde[k:, :k])
    rep.add("css.standard_form", delta, "g~_Q(Q') is the Kronecker delta on logical labels")
    T = independence_table(css)
    pattern = np.zeros_like(T, dtype=bool)
    pattern[np.arange(k), np.arange(k)] = True
    rep.add("css.independence", bool(np.array_equal(T != 0, pattern)),
            "<G_a, u * G_b> vanishes except on g1 self-pairs",
            f"[[{css.n}, {css.k}]]")

    for m in range(1, top + 1):
        r = corollary_sum_check(inst, m)
        rep.add(f"corollary.order{m}", r.passed,
                "physical and logical halves of sum_i u_i prod_j f^j(i) cancel",
                f"{r.checked} tuples" + ("" if r.passed else f", witness {r.witness}"))

    rng = np.random.default_rng(seed)
    L = list(sf.logical_labels)
    for m in range(2, top + 1):
        ok, depth_ok, n_id = True, True, 0
        witness = ""
        for sig_idx in itertools.product(range(len(inst.group)), repeat=m - 1):
            sigmas = [inst.group[i] for i in sig_idx]
            for S in [(Q,) for Q in L] + [tuple(L)]:
                gamma = {Q: int(F.random(rng, nonzero=True)) for Q in S}
                mod = modulation_build(css, sf, S, gamma)
                res = verify_main_theorem(css, sf, mod, sigmas, samples=samples, rng=rng)
                n_id += res.checked
                if not res.passed and ok:
                    ok = False
                    witness = f"sigmas {sig_idx}, S {S}, tuple {res.witness}"
                depth_ok &= layer_is_depth_one(physical_layer(css, mod, sigmas))
        rep.add(f"theorem.order{m}", ok,
                "modulated physical layer implements the logical gates (pre-trace identity)",
                f"{n_id} generator tuples" + (f", {witness}" if witness else ""))
        rep.add(f"depth_one.order{m}", depth_ok, "each compiled layer touches every qudit at most once")

        sched = compile_circuit(inst, css, sf, all_to_all(inst, m), m)
        bound = family.depth_bound(len(inst.group), m)
        rep.add(f"schedule.order{m}", schedule_depth(sched) <= bound,
                "all-to-all circuit compiles within depth k^(m-1)",
                f"depth {schedule_depth(sched)}, bound {bound}")

    try:
        r = css_distance(css, budget)
        if r.exact:
            rep.add("distance", r.meets_bound, "punctured distance is at least min(D, D_perp) - k",
                    f"dX {r.dX}, dZ {r.dZ}, bound {r.bound}")
        else:
            rep.add("distance", None, "punctured distance is at least min(D, D_perp) - k", "over budget")
    except BudgetExceeded:
        rep.add("distance", None, "punctured distance is at least min(D, D_perp) - k", "over budget")
    return rep


def cmd_check(args) -> int:
    inst = load_instance(args.instance)
    rep = run_checks(inst, args.arity, args.seed, args.budget, args.samples)
    print(rep.render())
    if args.out:
        io.write_json({"checks": rep.lines}, args.out)
    if rep.failures:
        _failures(rep.failures)
        return EXIT_FAIL
    return EXIT_OK


def _failures(items: list[dict]) -> None:
    print(json.dumps({"failures": items}, sort_keys=True))


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mczcodes", description=__doc__.splitlines()[0])
    ap.add_argument("--backend", choices=["numba", "numpy"], help="kernel backend (default from MCZCODES_BACKEND)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help=f"preset ({', '.join(sorted(family.PRESETS))}) or instance file")
        p.add_argument("--out", help="write the result to this path instead of stdout")
        p.add_argument("--budget", type=_positive, default=codes.DEFAULT_BUDGET, help="enumeration cap")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--arity", type=int, help="gate arity m (default: the instance m_max)")

    p = sub.add_parser("bounds", help="closed-form parameter bounds")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int)
    common(p, instance=False)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("grs", help="write a Reed-Solomon instance file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--subgroup", type=int, required=True, help="|V|, a power of p")
    p.add_argument("--coset-rep", type=int, default=0)
    p.add_argument("--m-max", type=int)
    p.add_argument("--name")
    common(p, instance=False)
    p.set_defaults(fn=cmd_grs)

    p = sub.add_parser("build", help="instance -> CSS artifact")
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("check", help="full invariant suite on an instance")
    common(p)
    p.add_argument("--samples", type=int, default=4, help="traced-phase samples per layer")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("circuit", help="write an all-to-all or random logical circuit")
    common(p)
    p.add_argument("--random", type=int, metavar="SIZE", help="random circuit with SIZE gates")
    p.add_argument("--gamma", type=int, default=1)
    p.set_defaults(fn=cmd_circuit)

    p = sub.add_parser("compile", help="logical circuit -> schedule")
    common(p)
    p.add_argument("circuit")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("phase", help="phase exponent of a circuit on given inputs")
    common(p)
    p.add_argument("circuit")
    p.add_argument("inputs", help="JSON list of m vectors (logical x or physical strings), inline or file")
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(fn=cmd_phase)

    p = sub.add_parser("distance", help="exact CSS distance within budget")
    common(p)
    p.set_defaults(fn=cmd_distance)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    saved = kernels.BACKEND
    if args.backend:
        kernels.BACKEND = args.backend
    try:
        return args.fn(args)
    except (ParseError, MczError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        kernels.BACKEND = saved


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
