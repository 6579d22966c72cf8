"""Hot loops: codeword enumeration, multilinear tuple sums, sparse phase tables.

Each kernel has a numba ``@njit`` implementation working on dense add/mul
tables and a pure-numpy implementation built on :class:`FieldSpec` array
arithmetic.  The default backend comes from the ``MCZCODES_BACKEND``
environment variable (``numba`` or ``numpy``); every public function also
takes an explicit ``backend`` argument.  Both paths return identical values.
"""

from __future__ import annotations

import os

import numpy as np

from .gf import FieldSpec

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _default_backend() -> str:
    env = os.environ.get("MCZCODES_BACKEND", "").strip().lower()
    if env in ("numpy", "python", "0", "off"):
        return "numpy"
    if env and env != "numba":
        raise ValueError(f"MCZCODES_BACKEND must be 'numba' or 'numpy', got {env!r}")
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _default_backend()

CHUNK = 1 << 16


def _resolve(F: FieldSpec, backend: str | None) -> str:
    b = backend or BACKEND
    if b not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {b!r}")
    # table-driven kernels need dense tables
    if b == "numba" and (not HAVE_NUMBA or not F.has_tables):
        return "numpy"
    return b


def _concat(blocks) -> tuple[np.ndarray, np.ndarray]:
    blocks = [np.ascontiguousarray(b, dtype=np.int64) for b in blocks]
    offsets = np.zeros(len(blocks) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([b.shape[0] for b in blocks])
    ncols = blocks[0].shape[1] if blocks else 0
    cat = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, ncols), dtype=np.int64)
    return cat.reshape(-1, ncols), offsets


# ---------------------------------------------------------------------------
# minimum weight over message enumeration
#
# Messages are enumerated up to scalars: the first nonzero digit among the
# leading ``lead`` digits is 1, digits before it are 0 and every digit after
# it is free.  Block f (first nonzero at f) holds q^(K-1-f) messages, so the
# scan covers sum_{f<lead} q^(K-1-f) messages instead of q^K.


def message_count(q: int, K: int, lead: int) -> int:
    return sum(q ** (K - 1 - f) for f in range(lead))


@njit(cache=True)
def _decode_message(r, q, K, msg):
    f = 0
    size = 1
    for _ in range(K - 1):
        size *= q
    while r >= size:
        r -= size
        f += 1
        size //= q
    for j in range(K):
        msg[j] = 0
    msg[f] = 1
    for j in range(f + 1, K):
        msg[j] = r % q
        r //= q


@njit(cache=True)
def _min_weight_nb(G, q, add, mul, start, stop, stop_weight):
    K, n = G.shape
    best = n + 1
    best_r = -1
    msg = np.zeros(K, dtype=np.int64)
    cw = np.zeros(n, dtype=np.int64)
    for r in range(start, stop):
        _decode_message(r, q, K, msg)
        for i in range(n):
            cw[i] = 0
        for j in range(K):
            c = msg[j]
            if c != 0:
                for i in range(n):
                    cw[i] = add[cw[i], mul[c, G[j, i]]]
        w = 0
        for i in range(n):
            if cw[i] != 0:
                w += 1
        if w < best:
            best = w
            best_r = r
            if w <= stop_weight:
                break
    return best, best_r


def decode_messages(q: int, K: int, r: np.ndarray) -> np.ndarray:
    """Vectorised inverse of the projective enumeration order."""
    r = np.asarray(r, dtype=np.int64).copy()
    msg = np.zeros((r.size, K), dtype=np.int64)
    first = np.zeros(r.size, dtype=np.int64)
    size = q ** (K - 1)
    done = np.zeros(r.size, dtype=bool)
    for f in range(K):
        here = ~done & (r < size)
        first[here] = f
        done |= here
        r[~done] -= size
        size //= q
    msg[np.arange(r.size), first] = 1
    for j in range(K):
        sel = j > first
        msg[sel, j] = r[sel] % q
        r[sel] //= q
    return msg


def _min_weight_np(F, G, start, stop, stop_weight):
    K, n = G.shape
    best, best_r = n + 1, -1
    for lo in range(start, stop, CHUNK):
        r = np.arange(lo, min(stop, lo + CHUNK), dtype=np.int64)
        cw = F.matmul(decode_messages(F.q, K, r), G)
        w = np.count_nonzero(cw, axis=1)
        j = int(np.argmin(w))
        if w[j] < best:
            best, best_r = int(w[j]), int(r[j])
            if best <= stop_weight:
                break
    return best, best_r


def min_weight(F: FieldSpec, G, lead: int | None = None, start: int = 0, stop: int | None = None,
               stop_weight: int = 1, backend: str | None = None) -> tuple[int, np.ndarray | None]:
    """Minimum weight of ``msg @ G`` over messages with a nonzero leading part.

    Only messages whose first ``lead`` digits are not all zero are scanned
    (``lead`` defaults to every row, i.e. all nonzero messages), one per
    scalar class; ``[start, stop)`` selects a slice of the enumeration for
    partitioned scans.  The scan stops early at weight ``<= stop_weight``.
    Returns ``(weight, message)`` where ``message`` is the first minimiser in
    scan order, or ``(n + 1, None)`` for an empty range.
    """
    G = np.ascontiguousarray(G, dtype=np.int64)
    K = G.shape[0]
    lead = K if lead is None else lead
    total = message_count(F.q, K, lead)
    stop = total if stop is None else min(stop, total)
    if _resolve(F, backend) == "numba":
        w, r = _min_weight_nb(G, F.q, F.add_table, F.mul_table, start, stop, stop_weight)
    else:
        w, r = _min_weight_np(F, G, start, stop, stop_weight)
    if r < 0:
        return int(w), None
    return int(w), decode_messages(F.q, K, np.array([r]))[0]


# ---------------------------------------------------------------------------
# weighted multilinear sums over tuples of rows


@njit(cache=True)
def _odometer_step(digits, sizes):
    """Advance the last-axis-fastest counter; return the highest axis that changed."""
    j = digits.shape[0] - 1
    while j > 0 and digits[j] + 1 == sizes[j]:
        digits[j] = 0
        j -= 1
    digits[j] += 1
    return j


@njit(cache=True)
def _tuple_sums_nb(cat, offsets, weight, add, mul):
    # pre[j, i] holds weight_i times the block 0..j-1 factors; a step only
    # refreshes the levels from the changed axis down
    m = offsets.shape[0] - 1
    n = cat.shape[1]
    sizes = offsets[1:] - offsets[:-1]
    total = 1
    for j in range(m):
        total *= sizes[j]
    out = np.zeros(total, dtype=np.int64)
    if total == 0:
        return out
    digits = np.zeros(m, dtype=np.int64)
    pre = np.zeros((m + 1, n), dtype=np.int64)
    pre[0, :] = weight
    changed = 0
    for flat in range(total):
        for j in range(changed, m):
            row = offsets[j] + digits[j]
            for i in range(n):
                v = pre[j, i]
                pre[j + 1, i] = mul[v, cat[row, i]] if v != 0 else 0
        acc = 0
        for i in range(n):
            acc = add[acc, pre[m, i]]
        out[flat] = acc
        if flat + 1 < total:
            changed = _odometer_step(digits, sizes)
    return out


def _tuple_sums_np(F, blocks, weight):
    m = len(blocks)
    n = weight.shape[0]
    prod = weight.reshape((1,) * m + (n,))
    for j, B in enumerate(blocks):
        shape = [1] * m + [n]
        shape[j] = B.shape[0]
        prod = F.mul(prod, B.reshape(shape))
    return F.sum(prod, axis=-1)


def tuple_sums(F: FieldSpec, blocks, weight, backend: str | None = None) -> np.ndarray:
    """``out[t0,...,t_{m-1}] = sum_i weight_i * prod_j blocks[j][t_j, i]`` over GF(q)."""
    weight = np.ascontiguousarray(weight, dtype=np.int64)
    blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
    shape = tuple(b.shape[0] for b in blocks)
    if _resolve(F, backend) == "numba":
        cat, offsets = _concat(blocks)
        return _tuple_sums_nb(cat, offsets, weight, F.add_table, F.mul_table).reshape(shape)
    return np.asarray(_tuple_sums_np(F, blocks, weight), dtype=np.int64).reshape(shape)


# ---------------------------------------------------------------------------
# diagonal phase polynomial on tuples of computational strings


@njit(cache=True)
def _phase_table_nb(cat, offsets, positions, betas, mul, tr, p):
    m = offsets.shape[0] - 1
    sizes = offsets[1:] - offsets[:-1]
    total = 1
    for j in range(m):
        total *= sizes[j]
    out = np.zeros(total, dtype=np.int64)
    if total == 0:
        return out
    ngates = betas.shape[0]
    digits = np.zeros(m, dtype=np.int64)
    pre = np.zeros((m + 1, ngates), dtype=np.int64)
    pre[0, :] = betas
    changed = 0
    for flat in range(total):
        for j in range(changed, m):
            row = offsets[j] + digits[j]
            for g in range(ngates):
                v = pre[j, g]
                pre[j + 1, g] = mul[v, cat[row, positions[g, j]]] if v != 0 else 0
        acc = 0
        for g in range(ngates):
            acc += tr[pre[m, g]]
        out[flat] = acc % p
        if flat + 1 < total:
            changed = _odometer_step(digits, sizes)
    return out


def _phase_table_np(F, blocks, positions, betas):
    m = len(blocks)
    shape = tuple(b.shape[0] for b in blocks)
    acc = np.zeros(shape, dtype=np.int64)
    for g in range(betas.shape[0]):
        prod = np.full((1,) * m, betas[g], dtype=np.int64)
        for j, B in enumerate(blocks):
            s = [1] * m
            s[j] = B.shape[0]
            prod = F.mul(prod, B[:, positions[g, j]].reshape(s))
        acc = acc + F.trace(prod)
    return acc % F.p


def phase_table(F: FieldSpec, blocks, positions, betas, backend: str | None = None) -> np.ndarray:
    """Phase exponents in Z_p of a diagonal multi-control-Z circuit.

    ``blocks[j]`` holds computational strings for code block j (one per row).
    Gate g multiplies ``betas[g]`` with the digits at ``positions[g, j]`` of
    the block-j string; the exponent is the sum of traces mod p.  The output
    has one axis per block.
    """
    blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
    positions = np.ascontiguousarray(positions, dtype=np.int64).reshape(-1, len(blocks))
    betas = np.ascontiguousarray(betas, dtype=np.int64).reshape(-1)
    shape = tuple(b.shape[0] for b in blocks)
    if _resolve(F, backend) == "numba":
        cat, offsets = _concat(blocks)
        out = _phase_table_nb(cat, offsets, positions, betas, F.mul_table, F.trace_table, F.p)
        return out.reshape(shape)
    return _phase_table_np(F, blocks, positions, betas)
