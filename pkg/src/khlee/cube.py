"""Khovanov/Lee cube-of-resolutions complexes.

Generators live at cube vertices ``r`` (bitmask of 1-smoothed crossings) and
label every circle of the resolution by ``v+`` or ``v-``.  Gradings are

    h = |r| - n_-          q = (#v+ - #v-) + |r| + n_+ - 2 n_-

so the crossingless unknot sits at (0, +-1).  At ``a != 0`` the differential
is filtered: every entry raises q by 0 or 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .diagram import LinkDiagram, Orientation
from .linalg import SparseMatrix

PLUS, MINUS = 1, -1
LEE_A = Fraction(1, 4)


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """V = Q v- + Q v+ with Lee deformation parameter ``a``.

    Elements of V^{(x)k} are dicts from label tuples (entries PLUS/MINUS) to
    coefficients.
    """

    a: Fraction = Fraction(0)

    def unit(self):
        return {(PLUS,): Fraction(1)}

    def counit(self, label: int) -> Fraction:
        return Fraction(1) if label == MINUS else Fraction(0)

    def mult(self, x: int, y: int) -> dict:
        if x == PLUS and y == PLUS:
            return {(PLUS,): Fraction(1)}
        if x == MINUS and y == MINUS:
            return {(PLUS,): self.a} if self.a else {}
        return {(MINUS,): Fraction(1)}

    def comult(self, x: int) -> dict:
        if x == PLUS:
            return {(MINUS, PLUS): Fraction(1), (PLUS, MINUS): Fraction(1)}
        out = {(MINUS, MINUS): Fraction(1)}
        if self.a:
            out[(PLUS, PLUS)] = self.a
        return out

    # linear extensions, used by the axiom checks
    def m(self, elt: dict) -> dict:
        out: dict = {}
        for (x, y), c in elt.items():
            for k, v in self.mult(x, y).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def delta(self, elt: dict) -> dict:
        out: dict = {}
        for (x,), c in elt.items():
            for k, v in self.comult(x).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}


def apply_on_factor(f, elt: dict, pos: int, arity: int) -> dict:
    """Apply ``f`` (label tuple of length ``arity`` -> element) to the
    factors ``pos:pos+arity`` of every term of ``elt``."""
    out: dict = {}
    for key, c in elt.items():
        for k, v in f(key[pos:pos + arity]).items():
            nk = key[:pos] + k + key[pos + arity:]
            out[nk] = out.get(nk, 0) + c * v
    return {k: v for k, v in out.items() if v}


@dataclass
class FilteredComplex:
    """Cochain complex over Q with a q-grading on every generator.

    ``qs[h]`` lists generator q-gradings in degree h; ``d[h]`` is the sparse
    matrix C^h -> C^{h+1}.  ``labels[h]`` optionally describes generators.
    """

    qs: dict[int, list[int]]
    d: dict[int, SparseMatrix]
    a: Fraction = Fraction(0)
    labels: dict[int, list] | None = None
    transport: "Transport | None" = field(default=None, repr=False)

    def degrees(self) -> list[int]:
        return sorted(h for h, q in self.qs.items() if q)

    def dim(self, h: int) -> int:
        return len(self.qs.get(h, ()))

    def total_dim(self) -> int:
        return sum(len(q) for q in self.qs.values())

    def differential(self, h: int) -> SparseMatrix:
        if h in self.d:
            return self.d[h]
        return SparseMatrix.zero(self.dim(h + 1), self.dim(h))

    def d_squared_is_zero(self) -> bool:
        for h in self.degrees():
            if not (self.differential(h + 1) @ self.differential(h)).is_zero():
                return False
        return True

    def entry_shifts(self) -> set[int]:
        """q(target) - q(source) over all nonzero differential entries."""
        out = set()
        for h, m in self.d.items():
            for r, c, _ in m.entries():
                out.add(self.qs[h + 1][r] - self.qs[h][c])
        return out

    def is_filtered(self) -> bool:
        return all(s >= 0 for s in self.entry_shifts())

    def graded_dims(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for h, qs in self.qs.items():
            for q in qs:
                out[(h, q)] = out.get((h, q), 0) + 1
        return out


@dataclass
class LeeCycle:
    """A chain in degree ``h`` of a complex, in its generator coordinates."""

    h: int
    vector: dict[int, Fraction]
    orientation: Orientation | None = None

    def __add__(self, other: "LeeCycle") -> "LeeCycle":
        return self.combine(other, 1)

    def __sub__(self, other: "LeeCycle") -> "LeeCycle":
        return self.combine(other, -1)

    def __neg__(self) -> "LeeCycle":
        return LeeCycle(self.h, {k: -v for k, v in self.vector.items()})

    def scale(self, c) -> "LeeCycle":
        return LeeCycle(self.h, {k: c * v for k, v in self.vector.items() if c * v})

    def combine(self, other: "LeeCycle", c) -> "LeeCycle":
        if other.h != self.h:
            raise ValueError("cannot add chains in different homological degrees")
        out = dict(self.vector)
        for k, v in other.vector.items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return LeeCycle(self.h, out)


# ---- resolutions -------------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.p = {i: i for i in items}

    def find(self, i):
        p = self.p
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if rj < ri:
                ri, rj = rj, ri
            self.p[rj] = ri


def smoothing_pairs(crossing, bit: int):
    """Arc pairs joined by the 0- or 1-smoothing of a PD crossing."""
    i, j, k, l = crossing
    return ((i, j), (k, l)) if bit == 0 else ((i, l), (j, k))


def resolution(d: LinkDiagram, r: int) -> tuple[list[int], dict[int, int]]:
    """Circles of the resolution ``r`` as (sorted circle keys, arc -> circle
    position).  Free loops get keys -1, -2, ..."""
    uf = _UnionFind(d.arcs)
    for x, cr in enumerate(d.crossings):
        for a, b in smoothing_pairs(cr, (r >> x) & 1):
            uf.union(a, b)
    roots = sorted({uf.find(a) for a in d.arcs})
    keys = [-(i + 1) for i in range(d.loops)][::-1] + roots
    pos = {k: n for n, k in enumerate(keys)}
    return keys, {a: pos[uf.find(a)] for a in d.arcs}


def _popcount(r: int) -> int:
    return bin(r).count("1")


def build_complex(d: LinkDiagram, a=0) -> FilteredComplex:
    """The Khovanov (a = 0) or Khovanov-Lee complex of ``d``."""
    a = Fraction(a)
    alg = FrobeniusAlgebra(a)
    n = len(d.crossings)
    n_plus, n_minus = d.n_plus, d.n_minus
    res = [resolution(d, r) for r in range(2 ** n)]
    index: dict[tuple[int, tuple], int] = {}
    qs: dict[int, list[int]] = {}
    labels: dict[int, list] = {}
    for r in sorted(range(2 ** n), key=lambda r: (_popcount(r), r)):
        h = _popcount(r) - n_minus
        keys, _ = res[r]
        for lab in product((PLUS, MINUS), repeat=len(keys)):
            q = sum(lab) + _popcount(r) + n_plus - 2 * n_minus
            lst = qs.setdefault(h, [])
            index[(r, lab)] = len(lst)
            lst.append(q)
            labels.setdefault(h, []).append((r, lab))
    entries: dict[int, list] = {}
    for r in range(2 ** n):
        h = _popcount(r) - n_minus
        keys, arc_c = res[r]
        for x in range(n):
            if (r >> x) & 1:
                continue
            r2 = r | (1 << x)
            sign = -1 if _popcount(r & ((1 << x) - 1)) % 2 else 1
            keys2, arc_c2 = res[r2]
            cr = d.crossings[x]
            A, B = arc_c[cr[0]], arc_c[cr[2]]
            # circle correspondence away from the crossing
            other = {}
            for arc, c in arc_c.items():
                if c != A and c != B:
                    other[c] = arc_c2[arc]
            for c in range(len(keys)):
                if c not in other and c != A and c != B:
                    other[c] = c  # free loops occupy the leading positions
            for lab in product((PLUS, MINUS), repeat=len(keys)):
                src = index[(r, lab)]
                base = [0] * len(keys2)
                for c, c2 in other.items():
                    base[c2] = lab[c]
                if A != B:
                    C = arc_c2[cr[0]]
                    outs = [({C: k[0]}, v) for k, v in alg.mult(lab[A], lab[B]).items()]
                else:
                    C1, C2 = arc_c2[cr[0]], arc_c2[cr[1]]
                    outs = [({C1: k[0], C2: k[1]}, v) for k, v in alg.comult(lab[A]).items()]
                for assign, v in outs:
                    tgt = list(base)
                    for c2, l2 in assign.items():
                        tgt[c2] = l2
                    entries.setdefault(h, []).append((index[(r2, tuple(tgt))], src, sign * v))
    dmat = {}
    for h, ents in entries.items():
        dmat[h] = SparseMatrix(len(qs[h + 1]), len(qs[h]), ents)
    return FilteredComplex(qs, dmat, a, labels)


# ---- canonical generators ------------------------------------------------------------

def oriented_resolution(d: LinkDiagram, o: Orientation) -> int:
    signs = d.signs_under(o)
    return sum(1 << x for x, s in enumerate(signs) if s < 0)


def _raw_labels(d: LinkDiagram, o: Orientation) -> tuple[int, tuple[int, ...]]:
    """Vertex of the oriented resolution and a +-1 per circle such that the
    two circles at every crossing get opposite signs; reversing ``o``
    reverses every sign."""
    r = oriented_resolution(d, o)
    keys, arc_c = resolution(d, r)
    adj: dict[int, set[int]] = {c: set() for c in range(len(keys))}
    for x, cr in enumerate(d.crossings):
        if (r >> x) & 1:
            c1, c2 = arc_c[cr[0]], arc_c[cr[1]]
        else:
            c1, c2 = arc_c[cr[0]], arc_c[cr[2]]
        if c1 == c2:
            raise AssertionError("oriented resolution joins a circle to itself")
        adj[c1].add(c2)
        adj[c2].add(c1)
    sign = [0] * len(keys)
    n_cross_comps = d.n_components - d.loops
    for c in range(len(keys)):
        if sign[c]:
            continue
        # reference: the smallest arc in this Seifert component, or the loop
        comp = [c]
        seen = {c}
        i = 0
        while i < len(comp):
            for e in adj[comp[i]]:
                if e not in seen:
                    seen.add(e)
                    comp.append(e)
            i += 1
        if keys[c] < 0:
            loop_idx = d.loops - 1 - (-keys[c] - 1)
            ref_c, base = c, o[n_cross_comps + loop_idx]
        else:
            arcs = [arc for arc, cc in arc_c.items() if cc in seen]
            ref_arc = min(arcs)
            ref_c, base = arc_c[ref_arc], o[d.component_of[ref_arc]]
        sign[ref_c] = base
        stack = [ref_c]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not sign[w]:
                    sign[w] = -sign[u]
                    stack.append(w)
                elif sign[w] == sign[u]:
                    raise AssertionError("Seifert graph is not bipartite")
    return r, tuple(sign)


def pair_sign(d: LinkDiagram, o: Orientation) -> int:
    """Relative sign fixing canonical(o) against canonical(reverse(o)).

    The orientation whose first component is +1 uses the raw labelling; its
    reverse is scaled by this sign so that canonical(o) + canonical(ō) lies
    in q-gradings congruent to -|L| mod 4.
    """
    if not len(o) or o[0] == 1:
        return 1
    r, sign = _raw_labels(d, o)
    q0 = -len(sign) + _popcount(r) + d.n_plus - 2 * d.n_minus
    return 1 if (q0 + d.n_components) % 4 == 0 else -1


def lee_canonical_cycle(d: LinkDiagram, o: Orientation, c: FilteredComplex | None = None) -> LeeCycle:
    """Lee's generator for ``o`` at a = 1/4: circles of the oriented
    resolution labelled x+ = v- + v+/2 or x- = v- - v+/2."""
    if c is not None and c.a != LEE_A:
        raise ValueError("canonical cycles are defined on the a = 1/4 complex")
    r, sign = _raw_labels(d, o)
    h = _popcount(r) - d.n_minus
    half = Fraction(1, 2)
    eps = pair_sign(d, o)
    index = _label_index(d, c, h) if c is not None else None
    vec: dict = {}
    for lab in product((PLUS, MINUS), repeat=len(sign)):
        coeff = Fraction(eps)
        for s, l in zip(sign, lab):
            if l == PLUS:
                coeff *= s * half
        key = (r, lab) if index is None else index[(r, lab)]
        vec[key] = coeff
    return LeeCycle(h, vec, o)


def _label_index(d, c: FilteredComplex, h: int) -> dict:
    cache = c.__dict__.setdefault("_label_index", {})
    if h not in cache:
        cache[h] = {lab: i for i, lab in enumerate(c.labels[h])}
    return cache[h]


# ---- filtered Gaussian elimination -------------------------------------------------------

@dataclass
class Transport:
    """Chain map from a complex to its simplification, recorded as a list of
    cancellations ``(h, b1, b2, phi, gamma)``."""

    steps: list = field(default_factory=list)
    final_index: dict[int, dict[int, int]] = field(default_factory=dict)

    def push(self, h: int, v: dict) -> dict:
        z = dict(v)
        for sh, b1, b2, phi, gamma in self.steps:
            if sh == h:
                z.pop(b1, None)
            elif sh + 1 == h:
                c = z.pop(b2, None)
                if c:
                    f = c / phi
                    for e, g in gamma.items():
                        nv = z.get(e, 0) - g * f
                        if nv:
                            z[e] = nv
                        else:
                            z.pop(e, None)
        idx = self.final_index.get(h, {})
        return {idx[k]: v for k, v in z.items() if v}

    def push_cycle(self, cyc: LeeCycle) -> LeeCycle:
        return LeeCycle(cyc.h, self.push(cyc.h, cyc.vector), cyc.orientation)


def simplify(c: FilteredComplex, track: bool = True) -> FilteredComplex:
    """Cancel every differential entry that is an isomorphism between two
    generators of equal q (a filtered homotopy equivalence).

    The result carries ``transport`` for pushing chains of ``c`` forward.
    """
    cols: dict[int, dict[int, dict[int, Fraction]]] = {}
    rows: dict[int, dict[int, dict[int, Fraction]]] = {}
    alive: dict[int, set[int]] = {h: set(range(len(q))) for h, q in c.qs.items()}
    for h in c.qs:
        cols[h] = {j: {} for j in range(c.dim(h))}
        rows[h] = {i: {} for i in range(c.dim(h + 1))}
    for h, m in c.d.items():
        for i, j, v in m.entries():
            cols[h][j][i] = v
            rows[h][i][j] = v
    tr = Transport()

    def drop_gen(h, g):
        """Remove generator g of degree h with all incident entries."""
        alive[h].discard(g)
        for i in cols.get(h, {}).pop(g, {}):
            rows[h][i].pop(g, None)
        if h - 1 in rows:
            for j in rows[h - 1].pop(g, {}):
                cols[h - 1][j].pop(g, None)

    changed = True
    while changed:
        changed = False
        for h in sorted(c.qs):
            if h not in cols or h + 1 not in c.qs:
                continue
            qh, qh1 = c.qs[h], c.qs[h + 1]
            order = sorted(alive[h], key=lambda j: (len(cols[h].get(j, ())), j))
            for b1 in order:
                if b1 not in alive[h]:
                    continue
                col = cols[h][b1]
                cands = [i for i in col if qh1[i] == qh[b1]]
                if not cands:
                    continue
                b2 = min(cands, key=lambda i: (len(rows[h][i]), i))
                phi = col[b2]
                gamma = {e: v for e, v in col.items() if e != b2}
                delta = {s: v for s, v in rows[h][b2].items() if s != b1}
                if track:
                    tr.steps.append((h, b1, b2, phi, gamma))
                for s, dv in delta.items():
                    f = dv / phi
                    cs = cols[h][s]
                    for e, gv in gamma.items():
                        nv = cs.get(e, 0) - gv * f
                        if nv:
                            cs[e] = nv
                            rows[h][e][s] = nv
                        else:
                            cs.pop(e, None)
                            rows[h][e].pop(s, None)
                drop_gen(h, b1)
                drop_gen(h + 1, b2)
                changed = True
    final_index = {h: {g: n for n, g in enumerate(sorted(alive[h]))} for h in c.qs}
    tr.final_index = final_index
    qs = {h: [c.qs[h][g] for g in sorted(alive[h])] for h in c.qs}
    d = {}
    for h in cols:
        if h + 1 not in c.qs:
            continue
        ents = []
        for j in alive[h]:
            for i, v in cols[h][j].items():
                ents.append((final_index[h + 1][i], final_index[h][j], v))
        if ents:
            d[h] = SparseMatrix(len(qs[h + 1]), len(qs[h]), ents)
    labels = None
    if c.labels is not None:
        labels = {h: [c.labels[h][g] for g in sorted(alive[h])] for h in c.qs}
    qs = {h: q for h, q in qs.items() if q}
    return FilteredComplex(qs, d, c.a, labels, tr if track else None)
