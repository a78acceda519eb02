"""Independent reference computations used by the tests.

Nothing here imports the package's linear algebra or homology code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb


def dense_rank(rows: list[list[Fraction]]) -> int:
    """Plain row reduction over Q."""
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / p[col]
                m[i] = [a - f * b for a, b in zip(m[i], p)]
        rank += 1
    return rank


def _circles(pd, loops: int, state) -> int:
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            a = parent[a]
        return a

    for x, bit in zip(pd, state):
        pairs = ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))
        for i, j in pairs:
            parent[find(x[i])] = find(x[j])
    labels = {a for x in pd for a in x}
    return len({find(a) for a in labels}) + loops


def jones_unnormalised(pd, loops: int, n_plus: int, n_minus: int) -> dict[int, int]:
    """(-1)^{n-} q^{n+ - 2 n-} sum_states (-q)^r (q + 1/q)^{#circles}."""
    total: dict[int, int] = {}
    for state in product((0, 1), repeat=len(pd)):
        r = sum(state)
        k = _circles(pd, loops, state)
        # (q + 1/q)^k expanded
        for i in range(k + 1):
            e = r + (k - 2 * i) + n_plus - 2 * n_minus
            c = comb(k, i) * (-1) ** (r + n_minus)
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c}


def euler_characteristic(kh: dict[tuple[int, int], int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for (h, q), v in kh.items():
        out[q] = out.get(q, 0) + (-1) ** h * v
    return {q: c for q, c in out.items() if c}


def filtered_dims(qs: dict[int, list[int]], dense_d: dict[int, list[list[Fraction]]]) -> dict[tuple[int, int], int]:
    """d(h, s) = dim F_s H^h - dim F_{s+1} H^h via subspace dimensions.

    dim F_s H = dim(Z n C_{>=s}) - dim(B n C_{>=s}), each intersection
    computed as dim U + dim W - dim(U + W) with explicit spanning sets.
    """
    out: dict[tuple[int, int], int] = {}
    for h, qh in qs.items():
        n = len(qh)
        if not n:
            continue
        dh = dense_d.get(h, [])
        dprev = dense_d.get(h - 1, [])
        # boundaries as column vectors of dprev (n rows)
        bcols = [[row[j] for row in dprev] for j in range(len(dprev[0]))] if dprev and dprev[0] else []

        def fdim(s):
            idx = [i for i in range(n) if qh[i] >= s]
            # cycles supported on idx: kernel of dh restricted to those columns
            sub = [[row[i] for i in idx] for row in dh] if dh else []
            z = len(idx) - (dense_rank(sub) if sub else 0)
            unit = [[1 if i == j else 0 for i in range(n)] for j in idx]
            rb = dense_rank(bcols) if bcols else 0
            b_cap = rb + len(idx) - dense_rank(bcols + unit) if (bcols or unit) else 0
            return z - b_cap

        levels = sorted(set(qh))
        for k, s in enumerate(levels):
            nxt = levels[k + 1] if k + 1 < len(levels) else s + 1
            v = fdim(s) - fdim(nxt)
            if v:
                out[(h, s)] = out.get((h, s), 0) + v
    return out
