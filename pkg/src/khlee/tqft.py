"""The orientation TQFT: vector spaces spanned by orientations of closed
1-manifolds and the (sign-ambiguous) maps of abstract cobordisms.

Every circle carries a reference orientation, and handles are attached so
that reference orientations extend over the surface.  An orientation of a
cobordism is then one sign per connected component, restricting to that
sign on every boundary circle of the component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .linalg import SparseMatrix


class CobordismError(ValueError):
    pass


@dataclass(frozen=True)
class OneManifold:
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise CobordismError(f"repeated circle label in {self.labels}")

    @classmethod
    def circles(cls, n: int) -> "OneManifold":
        return cls(tuple(f"c{i + 1}" for i in range(n)))

    def __len__(self):
        return len(self.labels)

    def orientations(self) -> list[tuple[int, ...]]:
        """All orientations, lexicographic with + before -."""
        return list(product((1, -1), repeat=len(self.labels)))

    def index(self, o: Sequence[int]) -> int:
        i = 0
        for s in o:
            i = 2 * i + (0 if s > 0 else 1)
        return i

    def dim(self) -> int:
        return 2 ** len(self.labels)


@dataclass
class OrientationVector:
    """An element of the orientation space of ``manifold``."""

    manifold: OneManifold
    coeffs: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.manifold)
        clean = {}
        for o, c in self.coeffs.items():
            o = tuple(o)
            if len(o) != n or any(s not in (1, -1) for s in o):
                raise ValueError(f"bad orientation {o} for {n} circles")
            if c:
                clean[o] = Fraction(c)
        self.coeffs = clean

    @classmethod
    def basis(cls, X: OneManifold, o) -> "OrientationVector":
        return cls(X, {tuple(o): 1})

    def reverse(self) -> "OrientationVector":
        return OrientationVector(self.manifold, {tuple(-s for s in o): c for o, c in self.coeffs.items()})

    def __add__(self, other):
        out = dict(self.coeffs)
        for o, c in other.coeffs.items():
            out[o] = out.get(o, 0) + c
        return OrientationVector(self.manifold, out)

    def __neg__(self):
        return OrientationVector(self.manifold, {o: -c for o, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, OrientationVector) and self.manifold == other.manifold and self.coeffs == other.coeffs

    def inner(self, other: "OrientationVector") -> Fraction:
        return sum((c * other.coeffs.get(o, 0) for o, c in self.coeffs.items()), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_dict(self) -> dict[int, Fraction]:
        return {self.manifold.index(o): c for o, c in self.coeffs.items()}

    @classmethod
    def from_dict(cls, X: OneManifold, v: dict[int, object]) -> "OrientationVector":
        os = X.orientations()
        return cls(X, {os[i]: c for i, c in v.items()})


def mod4_grading(v: OrientationVector) -> int | None:
    """-|X| on the +1 eigenspace of reversal, 2-|X| on the -1 eigenspace;
    None for the zero vector or inhomogeneous vectors."""
    if v.is_zero():
        return None
    n = len(v.manifold)
    r = v.reverse()
    if r == v:
        return (-n) % 4
    if r == -v:
        return (2 - n) % 4
    return None


# ---- cobordisms ---------------------------------------------------------------------

HANDLE_KINDS = ("birth", "death", "merge", "split")


@dataclass(frozen=True)
class Handle:
    kind: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __str__(self):
        if self.kind == "birth":
            return f"birth {self.outputs[0]}"
        if self.kind == "death":
            return f"death {self.inputs[0]}"
        return f"{self.kind} {' '.join(self.inputs)} -> {' '.join(self.outputs)}"


_HANDLE_RE = re.compile(r"^\s*(birth|death|merge|split)\s+([^;]*?)\s*$")


def parse_handles(text: str) -> list[Handle]:
    """``birth c3; merge c1 c3 -> c1; split c1 -> c1 c4; death c2``."""
    out = []
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _HANDLE_RE.match(part)
        if not m:
            raise CobordismError(f"cannot parse handle {part.strip()!r}")
        kind, rest = m.groups()
        if "->" in rest:
            lhs, rhs = (s.split() for s in rest.split("->", 1))
        else:
            lhs, rhs = rest.split(), []
        if kind == "birth":
            if len(lhs) != 1 or rhs:
                raise CobordismError("birth takes one new circle")
            out.append(Handle(kind, (), tuple(lhs)))
        elif kind == "death":
            if len(lhs) != 1 or rhs:
                raise CobordismError("death takes one circle")
            out.append(Handle(kind, tuple(lhs), ()))
        elif kind == "merge":
            if len(lhs) != 2 or len(rhs) != 1:
                raise CobordismError("merge needs 'merge a b -> c'")
            out.append(Handle(kind, tuple(lhs), tuple(rhs)))
        else:
            if len(lhs) != 1 or len(rhs) != 2:
                raise CobordismError("split needs 'split a -> b c'")
            out.append(Handle(kind, tuple(lhs), tuple(rhs)))
    return out


class Cobordism:
    """An abstract orientable cobordism given by a handle sequence."""

    def __init__(self, source: OneManifold, handles: Iterable[Handle | str]):
        self.source = source
        hs: list[Handle] = []
        for h in handles:
            hs.extend(parse_handles(h) if isinstance(h, str) else [h])
        self.handles = tuple(hs)
        self._build()

    @classmethod
    def parse(cls, source: OneManifold, text: str) -> "Cobordism":
        return cls(source, parse_handles(text))

    def _build(self):
        current = list(self.source.labels)
        parent: dict[int, int] = {}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        node_of: dict[str, int] = {}
        chi: dict[int, int] = {}
        for lab in current:
            n = len(parent)
            parent[n] = n
            node_of[lab] = n
        source_nodes = [node_of[l] for l in current]
        levels = [tuple(current)]
        for h in self.handles:
            for lab in h.inputs:
                if lab not in current:
                    raise CobordismError(f"{h}: circle {lab} does not exist")
            if len(set(h.inputs)) != len(h.inputs):
                raise CobordismError(f"{h}: repeated input circle")
            rest = [l for l in current if l not in h.inputs]
            for lab in h.outputs:
                if lab in rest or h.outputs.count(lab) > 1:
                    raise CobordismError(f"{h}: circle {lab} already exists")
            if h.kind == "birth":
                n = len(parent)
                parent[n] = n
                node_of[h.outputs[0]] = n
                chi[n] = chi.get(n, 0) + 1
                current.append(h.outputs[0])
            elif h.kind == "death":
                r = find(node_of[h.inputs[0]])
                chi[r] = chi.get(r, 0) + 1
                current.remove(h.inputs[0])
            elif h.kind == "merge":
                a, b = find(node_of[h.inputs[0]]), find(node_of[h.inputs[1]])
                if a != b:
                    parent[b] = a
                    chi[a] = chi.get(a, 0) + chi.pop(b, 0)
                chi[a] = chi.get(a, 0) - 1
                pos = current.index(h.inputs[0])
                current[pos] = h.outputs[0]
                current.remove(h.inputs[1])
                node_of[h.outputs[0]] = a
            else:
                r = find(node_of[h.inputs[0]])
                chi[r] = chi.get(r, 0) - 1
                pos = current.index(h.inputs[0])
                current[pos] = h.outputs[0]
                current.append(h.outputs[1])
                node_of[h.outputs[0]] = node_of[h.outputs[1]] = r
            levels.append(tuple(current))
        self.target = OneManifold(tuple(current))
        self.levels = levels
        roots = sorted({find(i) for i in parent})
        self._comp_index = {r: k for k, r in enumerate(roots)}
        self.source_comp = tuple(self._comp_index[find(n)] for n in source_nodes)
        self.target_comp = tuple(self._comp_index[find(node_of[l])] for l in current)
        self.component_chi = tuple(chi.get(r, 0) for r in roots)

    # ---- topology ---------------------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.component_chi)

    @property
    def euler_characteristic(self) -> int:
        return sum(self.component_chi)

    def boundary_counts(self, k: int) -> tuple[int, int]:
        return self.source_comp.count(k), self.target_comp.count(k)

    def reversal_exponents(self) -> tuple[int, ...]:
        """(chi - |A_k n X| + |A_k n Y|)/2 for every component A_k."""
        out = []
        for k, c in enumerate(self.component_chi):
            nx, ny = self.boundary_counts(k)
            e = c - nx + ny
            if e % 2:
                raise CobordismError("non-orientable component")
            out.append(e // 2)
        return tuple(out)

    def genus(self, k: int) -> int:
        nx, ny = self.boundary_counts(k)
        return (2 - self.component_chi[k] - nx - ny) // 2

    # ---- maps -------------------------------------------------------------------

    def orientations(self) -> list[tuple[int, ...]]:
        return list(product((1, -1), repeat=self.n_components))

    def sigma(self, o: Sequence[int]) -> int:
        """The sign function, +1 on the all-positive orientation."""
        s = 1
        for sign, e in zip(o, self.reversal_exponents()):
            if sign < 0 and e % 2:
                s = -s
        return s

    def restrict_source(self, o) -> tuple[int, ...]:
        return tuple(o[k] for k in self.source_comp)

    def restrict_target(self, o) -> tuple[int, ...]:
        return tuple(o[k] for k in self.target_comp)

    def induced_map(self) -> SparseMatrix:
        """sum over orientations o of sigma(o) <alpha, o|X> o|Y, as a matrix."""
        X, Y = self.source, self.target
        acc: dict[tuple[int, int], int] = {}
        for o in self.orientations():
            key = (Y.index(self.restrict_target(o)), X.index(self.restrict_source(o)))
            acc[key] = acc.get(key, 0) + self.sigma(o)
        return SparseMatrix(Y.dim(), X.dim(), ((r, c, v) for (r, c), v in acc.items() if v))

    def handle_map(self) -> SparseMatrix:
        """Composite of the elementary handle maps, one handle at a time."""
        M = _identity(len(self.source))
        for h, before, after in zip(self.handles, self.levels, self.levels[1:]):
            M = elementary_map(h, OneManifold(before), OneManifold(after)) @ M
        return M

    def apply(self, v: OrientationVector) -> OrientationVector:
        if v.manifold != self.source:
            raise CobordismError("vector does not live on the source manifold")
        return OrientationVector.from_dict(self.target, self.induced_map().apply(v.to_dict()))


def _identity(n: int) -> SparseMatrix:
    N = 2 ** n
    return SparseMatrix(N, N, ((i, i, 1) for i in range(N)))


def elementary_map(h: Handle, X: OneManifold, Y: OneManifold) -> SparseMatrix:
    """Handle maps: birth a -> a (x) (o - ō); split extends; merge keeps
    matching orientations with sign + (o) or - (ō) and kills the rest; death
    sends both orientations of the circle to 1."""
    ents: dict[tuple[int, int], int] = {}
    for o in X.orientations():
        lab = dict(zip(X.labels, o))
        outs: list[tuple[dict, int]] = []
        if h.kind == "birth":
            for s in (1, -1):
                outs.append(({**lab, h.outputs[0]: s}, s))
        elif h.kind == "death":
            d = dict(lab)
            del d[h.inputs[0]]
            outs.append((d, 1))
        elif h.kind == "merge":
            a, b = lab[h.inputs[0]], lab[h.inputs[1]]
            if a == b:
                d = {k: v for k, v in lab.items() if k not in h.inputs}
                d[h.outputs[0]] = a
                outs.append((d, a))
        else:
            s = lab[h.inputs[0]]
            d = {k: v for k, v in lab.items() if k != h.inputs[0]}
            d[h.outputs[0]] = d[h.outputs[1]] = s
            outs.append((d, 1))
        for d, c in outs:
            key = (Y.index(tuple(d[l] for l in Y.labels)), X.index(o))
            ents[key] = ents.get(key, 0) + c
    return SparseMatrix(Y.dim(), X.dim(), ((r, c, v) for (r, c), v in ents.items() if v))


def compose(A: Cobordism, B: Cobordism) -> Cobordism:
    """A then B."""
    if A.target != B.source:
        raise CobordismError(f"target {A.target.labels} of A is not the source {B.source.labels} of B")
    return Cobordism(A.source, A.handles + B.handles)


def equal_up_to_sign(M: SparseMatrix, N: SparseMatrix) -> bool:
    if M == N:
        return True
    neg = SparseMatrix(N.nrows, N.ncols, ((r, c, -v) for r, c, v in N.entries()))
    return M == neg


def res_component(X: OneManifold, i: int, sign: int) -> SparseMatrix:
    """Orthogonal projection onto orientations with circle i oriented by sign."""
    ents = [(X.index(o), X.index(o), 1) for o in X.orientations() if o[i] == sign]
    return SparseMatrix(X.dim(), X.dim(), ents)


def res_relative(X: OneManifold, i: int, j: int, relative: int) -> SparseMatrix:
    """Projection onto orientations with o_i * o_j = relative, times the
    sign of o_i."""
    ents = [(X.index(o), X.index(o), o[i]) for o in X.orientations() if o[i] * o[j] == relative]
    return SparseMatrix(X.dim(), X.dim(), ents)


def reversal_map(X: OneManifold, i: int) -> SparseMatrix:
    """Reverse the reference orientation of circle i (a relabelling)."""
    ents = []
    for o in X.orientations():
        o2 = list(o)
        o2[i] = -o2[i]
        ents.append((X.index(o2), X.index(o), 1))
    return SparseMatrix(X.dim(), X.dim(), ents)


def res_relative_via_cobordism(X: OneManifold, i: int, j: int) -> SparseMatrix:
    """Merge circles i and j, split them apart again, and restore the
    circle order; realises the relative restriction for o_i = o_j."""
    a, b = X.labels[i], X.labels[j]
    tmp = "_m"
    while tmp in X.labels:
        tmp += "_"
    c = Cobordism(X, [Handle("merge", (a, b), (tmp,)), Handle("split", (tmp,), (a, b))])
    Y = c.target
    perm = SparseMatrix(X.dim(), Y.dim(), (
        (X.index(tuple(o[Y.labels.index(l)] for l in X.labels)), Y.index(o), 1) for o in Y.orientations()))
    return perm @ c.induced_map()


def res_component_via_merge(X: OneManifold, i: int, sign: int) -> SparseMatrix:
    """alpha -> alpha (x) o_sign on a new circle, then merge it into circle i."""
    a = X.labels[i]
    tmp = "_u"
    while tmp in X.labels:
        tmp += "_"
    Xu = OneManifold(X.labels + (tmp,))
    insert = SparseMatrix(Xu.dim(), X.dim(), ((Xu.index(o + (sign,)), X.index(o), 1) for o in X.orientations()))
    merge = Cobordism(Xu, [Handle("merge", (a, tmp), (a,))])
    return merge.induced_map() @ insert


def lee_dictionary_check() -> dict[str, bool]:
    """Compare the elementary handle maps with Lee's algebra at a = 1/4 in the
    basis x+ = X + 1/2, x- = X - 1/2 (o <-> x+, ō <-> x-)."""
    # multiplication and comultiplication on x+-: x+x+ = x+, x-x- = -x-,
    # x+x- = 0, Delta(x+-) = x+- (x) x+-, iota(1) = x+ - x-, eps(x+-) = 1.
    X1, X2 = OneManifold(("a",)), OneManifold(("a", "b"))
    mlee = SparseMatrix(2, 4, [(0, 0, 1), (1, 3, -1)])
    dlee = SparseMatrix(4, 2, [(0, 0, 1), (3, 1, 1)])
    ilee = SparseMatrix(2, 1, [(0, 0, 1), (1, 0, -1)])
    elee = SparseMatrix(1, 2, [(0, 0, 1), (0, 1, 1)])
    X0 = OneManifold(())
    return {
        "merge": elementary_map(Handle("merge", ("a", "b"), ("a",)), X2, X1) == mlee,
        "split": elementary_map(Handle("split", ("a",), ("a", "b")), X1, X2) == dlee,
        "birth": elementary_map(Handle("birth", (), ("a",)), X0, X1) == ilee,
        "death": elementary_map(Handle("death", ("a",), ()), X1, X0) == elee,
    }


def random_handles(X: OneManifold, n: int, rng, max_circles: int = 6) -> list[Handle]:
    """n random handles starting from X, never exceeding max_circles."""
    current = list(X.labels)
    fresh = 0
    out: list[Handle] = []

    def new_label():
        nonlocal fresh
        while True:
            fresh += 1
            lab = f"n{fresh}"
            if lab not in current:
                return lab

    for _ in range(n):
        kinds = []
        if len(current) < max_circles:
            kinds += ["birth", "split"] if current else ["birth"]
        if current:
            kinds.append("death")
        if len(current) >= 2:
            kinds.append("merge")
        kind = rng.choice(kinds)
        if kind == "birth":
            lab = new_label()
            out.append(Handle(kind, (), (lab,)))
            current.append(lab)
        elif kind == "death":
            lab = rng.choice(current)
            out.append(Handle(kind, (lab,), ()))
            current.remove(lab)
        elif kind == "merge":
            a, b = rng.sample(current, 2)
            out.append(Handle(kind, (a, b), (a,)))
            current.remove(b)
        else:
            a = rng.choice(current)
            b = new_label()
            out.append(Handle(kind, (a,), (a, b)))
            current.append(b)
    return out
