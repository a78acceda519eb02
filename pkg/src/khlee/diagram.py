"""Oriented link diagrams in planar-diagram (PD) form.

Crossings follow the KnotTheory convention: ``X[i, j, k, l]`` lists the four
arc labels counterclockwise, starting from the incoming under-strand, so the
under-strand runs ``i -> k`` and the over-strand joins ``j`` and ``l``.  A
crossing is positive when the over-strand runs ``l -> j``.

Crossingless unknotted components are carried separately as *free loops*
(``Loop[a]`` in the text format).  Components are indexed first by the minimal
arc label they contain, then free loops in order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

Crossing = tuple[int, int, int, int]
Slot = tuple[int, int]  # (crossing index, position 0..3)


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram input."""


@dataclass(frozen=True)
class Orientation:
    """A sign per component: +1 keeps the stored direction, -1 reverses it."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"orientation signs must be +-1, got {self.signs}")

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, i):
        return self.signs[i]

    def __iter__(self):
        return iter(self.signs)

    def reverse(self) -> "Orientation":
        return Orientation(tuple(-s for s in self.signs))

    @classmethod
    def stored(cls, n: int) -> "Orientation":
        return cls((1,) * n)


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``crossings`` are PD quadruples; ``loops`` counts free unknotted circles;
    ``directions`` holds one +-1 flag per crossing component and only matters
    for components that never pass under a crossing (the PD code pins the
    direction of every other component, and for those the flag is +1).
    """

    crossings: tuple[Crossing, ...]
    loops: int = 0
    directions: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(a) for a in x) for x in self.crossings))
        _check_labels(self.crossings)
        comps = self._traversals
        if self.directions is None:
            object.__setattr__(self, "directions", (1,) * len(comps))
        elif len(self.directions) != len(comps):
            raise DiagramError("directions must give one flag per crossing component")
        for (arcs, pinned), flag in zip(comps, self.directions):
            if pinned and flag != 1:
                raise DiagramError("direction flag set on a component pinned by the PD code")

    # ---- structure -------------------------------------------------------

    @cached_property
    def _slot_arc(self) -> dict[Slot, int]:
        return {(x, p): a for x, cr in enumerate(self.crossings) for p, a in enumerate(cr)}

    @cached_property
    def _arc_ends(self) -> dict[int, list[Slot]]:
        ends: dict[int, list[Slot]] = {}
        for slot, a in self._slot_arc.items():
            ends.setdefault(a, []).append(slot)
        return ends

    @cached_property
    def _traversals(self) -> list[tuple[list[tuple[int, Slot]], bool]]:
        """Each crossing component as a list of (arc, head slot) in canonical
        direction, plus whether the PD code pins that direction."""
        ends = self._arc_ends
        slot_arc = self._slot_arc
        seen: set[int] = set()
        out = []
        for start in sorted(ends):
            if start in seen:
                continue
            walk = []
            arc, head = start, ends[start][0]
            while True:
                walk.append((arc, head))
                seen.add(arc)
                x, p = head
                nxt_tail = (x, (p + 2) % 4)
                arc = slot_arc[nxt_tail]
                e = ends[arc]
                head = e[1] if e[0] == nxt_tail else e[0]
                if (arc, head) == walk[0]:
                    break
                if arc == start:
                    raise DiagramError(f"inconsistent strand through arc {start}")
            # slot 0 is always a head, slot 2 always a tail
            votes = set()
            for arc, head in walk:
                tail = ends[arc][0] if ends[arc][1] == head else ends[arc][1]
                if head[1] == 0 or tail[1] == 2:
                    votes.add(1)
                if head[1] == 2 or tail[1] == 0:
                    votes.add(-1)
            if len(votes) > 1:
                raise DiagramError("under-strand directions disagree along a component")
            pinned = bool(votes)
            if votes == {-1} or (not pinned and _prefers_reverse(walk)):
                walk = _reverse_walk(walk, ends)
            out.append((walk, pinned))
        return out

    @cached_property
    def _heads(self) -> dict[int, Slot]:
        """Head slot of every arc under the stored orientation."""
        heads = {}
        for (walk, _), flag in zip(self._traversals, self.directions):
            if flag == -1:
                walk = _reverse_walk(walk, self._arc_ends)
            for arc, head in walk:
                heads[arc] = head
        return heads

    @cached_property
    def component_of(self) -> dict[int, int]:
        """Map arc label -> component index."""
        return {arc: c for c, (walk, _) in enumerate(self._traversals) for arc, _ in walk}

    @property
    def n_components(self) -> int:
        return len(self._traversals) + self.loops

    def __len__(self):
        return len(self.crossings)

    @cached_property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted(self._arc_ends))

    def component_arcs(self, c: int) -> list[int]:
        """Arcs of crossing component ``c`` in stored traversal order."""
        walk, _ = self._traversals[c]
        arcs = [a for a, _ in walk]
        return arcs if self.directions[c] == 1 else arcs[::-1]

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs under the stored orientation."""
        out = []
        for x in range(len(self.crossings)):
            over_in = self._heads[self.crossings[x][1]] == (x, 1)
            out.append(-1 if over_in else 1)
        return tuple(out)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def under_component(self, x: int) -> int:
        return self.component_of[self.crossings[x][0]]

    def over_component(self, x: int) -> int:
        return self.component_of[self.crossings[x][1]]

    def signs_under(self, o: Orientation) -> tuple[int, ...]:
        """Crossing signs after reorienting components by ``o``."""
        self._check_orientation(o)
        return tuple(
            s * o[self.under_component(x)] * o[self.over_component(x)]
            for x, s in enumerate(self.signs)
        )

    def orientations(self) -> list[Orientation]:
        """All 2^|L| orientations, lexicographic with +1 before -1."""
        n = self.n_components
        out = []
        for bits in range(2 ** n):
            out.append(Orientation(tuple(-1 if bits >> (n - 1 - i) & 1 else 1 for i in range(n))))
        return out

    def _check_orientation(self, o: Orientation):
        if len(o) != self.n_components:
            raise ValueError(f"orientation has {len(o)} signs, link has {self.n_components} components")

    # ---- text ------------------------------------------------------------

    def to_pd(self) -> str:
        parts = ["X[%d,%d,%d,%d]" % x for x in self.crossings]
        top = max(self.arcs, default=0)
        parts += ["Loop[%d]" % (top + i + 1) for i in range(self.loops)]
        return "PD[" + ",".join(parts) + "]"

    def __str__(self):
        return self.to_pd()


def _prefers_reverse(walk) -> bool:
    # over-only components: traverse so the smallest arc is followed by its
    # smaller neighbour
    arcs = [a for a, _ in walk]
    i = arcs.index(min(arcs))
    return len(arcs) > 1 and arcs[i - 1] < arcs[(i + 1) % len(arcs)]


def _reverse_walk(walk, ends):
    out = []
    for arc, head in reversed(walk):
        e = ends[arc]
        out.append((arc, e[0] if e[1] == head else e[1]))
    return out


def _check_labels(crossings: Sequence[Crossing]):
    counts: dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise DiagramError(f"crossing {x} does not have four arcs")
        for a in x:
            if a <= 0:
                raise DiagramError(f"arc labels must be positive, got {a}")
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise DiagramError(f"arc labels must occur exactly twice; offending: {bad}")


def _check_planar(crossings: Sequence[Crossing]):
    """Every connected piece of the 4-valent graph must have Euler
    characteristic 2 (faces are orbits of rotation after arc involution)."""
    if not crossings:
        return
    ends: dict[int, list[Slot]] = {}
    for x, cr in enumerate(crossings):
        for p, a in enumerate(cr):
            ends.setdefault(a, []).append((x, p))
    other = {}
    for a, (s, t) in ends.items():
        other[s], other[t] = t, s
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, t in ends.values():
        parent[find(s[0])] = find(t[0])
    faces: dict[int, int] = {}
    seen = set()
    for s in other:
        if s in seen:
            continue
        cur = s
        while cur not in seen:
            seen.add(cur)
            x, p = other[cur]
            cur = (x, (p + 1) % 4)
        faces[find(s[0])] = faces.get(find(s[0]), 0) + 1
    verts: dict[int, int] = {}
    for x in range(len(crossings)):
        verts[find(x)] = verts.get(find(x), 0) + 1
    for root, v in verts.items():
        if faces[root] - v != 2:
            raise DiagramError("PD code is not planar (a diagram piece has positive genus)")


# ---- constructors ------------------------------------------------------------

_PD_RE = re.compile(r"^\s*PD\s*\[(.*)\]\s*$", re.S)
_ITEM_RE = re.compile(r"\s*(X|Loop)\s*\[([^\[\]]*)\]\s*(,|$)")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``PD[X[a,b,c,d],...]`` (optionally with ``Loop[a]`` entries)."""
    m = _PD_RE.match(text)
    if not m:
        raise DiagramError(f"not a PD code: {text!r}")
    body = m.group(1).strip()
    crossings: list[Crossing] = []
    loops = 0
    pos = 0
    while pos < len(body):
        im = _ITEM_RE.match(body, pos)
        if not im:
            raise DiagramError(f"malformed PD entry near {body[pos:pos + 20]!r}")
        kind, args = im.group(1), im.group(2)
        try:
            nums = [int(t) for t in args.split(",")] if args.strip() else []
        except ValueError:
            raise DiagramError(f"non-integer arc label in {kind}[{args}]") from None
        if kind == "X":
            if len(nums) != 4:
                raise DiagramError(f"X[...] needs four labels, got {nums}")
            crossings.append(tuple(nums))
        else:
            if len(nums) != 1:
                raise DiagramError("Loop[...] takes one label")
            loops += 1
        pos = im.end()
    _check_labels(crossings)
    _check_planar(crossings)
    return LinkDiagram(tuple(crossings), loops)


def braid_closure(n_strands: int, word: Iterable[int]) -> LinkDiagram:
    """Closure of a braid word on ``n_strands`` strands.

    Generators are 1-based; ``+i`` is a positive crossing between strands at
    positions ``i`` and ``i+1`` with strands running upward.
    """
    word = list(word)
    if n_strands < 1:
        raise DiagramError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= n_strands:
            raise DiagramError(f"generator {g} out of range for {n_strands} strands")
    cur = list(range(1, n_strands + 1))
    nxt = n_strands + 1
    raw: list[list[int]] = []
    for g in word:
        i = abs(g) - 1
        left_in, right_in = cur[i], cur[i + 1]
        left_out, right_out = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # under: right_in -> left_out; over: left_in -> right_out
            raw.append([right_in, right_out, left_out, left_in])
        else:
            # under: left_in -> right_out; over: right_in -> left_out
            raw.append([left_in, right_in, right_out, left_out])
        cur[i], cur[i + 1] = left_out, right_out
    final = {cur[p]: p + 1 for p in range(n_strands)}
    touched = {a for x in raw for a in x}
    loops = sum(1 for p in range(n_strands) if (p + 1) not in touched)
    crossings = [tuple(final.get(a, a) for a in x) for x in raw]
    return _relabel(crossings, loops)


def _relabel(crossings, loops=0, directions=None) -> LinkDiagram:
    """Renumber arcs 1..2n consecutively along components."""
    if not crossings:
        return LinkDiagram((), loops)
    d = LinkDiagram(tuple(crossings), 0, directions)
    order = []
    for c in range(len(d._traversals)):
        order.extend(d.component_arcs(c))
    new = {a: i + 1 for i, a in enumerate(order)}
    out = LinkDiagram(tuple(tuple(new[a] for a in x) for x in crossings), loops)
    return _match_directions(out, d, new)


def _inverse(m, v):
    for k, w in m.items():
        if w == v:
            return k
    raise KeyError(v)


def _match_directions(new: LinkDiagram, old: LinkDiagram, relabel: dict[int, int]) -> LinkDiagram:
    """Fix over-only direction flags of ``new`` so that each arc heads the
    same way as the corresponding arc of ``old``."""
    flags = list(new.directions)
    for c, (walk, pinned) in enumerate(new._traversals):
        if pinned:
            continue
        arc_new, head_new = walk[0]
        arc_old = _inverse(relabel, arc_new)
        flags[c] = 1 if old._heads[arc_old] == head_new else -1
    return LinkDiagram(new.crossings, new.loops, tuple(flags))


def parse_braid(text: str) -> LinkDiagram:
    """Parse ``"n: g1 g2 ..."`` (an optional leading ``braid`` is accepted)."""
    t = text.strip()
    if t.lower().startswith("braid"):
        t = t[5:]
    if ":" not in t:
        raise DiagramError(f"braid must look like 'n: g1 g2 ...', got {text!r}")
    head, tail = t.split(":", 1)
    try:
        n = int(head)
        word = [int(g) for g in tail.replace(",", " ").split()]
    except ValueError:
        raise DiagramError(f"malformed braid {text!r}") from None
    return braid_closure(n, word)


def torus_link(n: int, m: int) -> LinkDiagram:
    """T(n, m) as the closure of (s1 s2 ... s_{n-1})^m on n strands."""
    if n < 1 or m < 1:
        raise DiagramError("torus_link needs n >= 1 and m >= 1")
    return braid_closure(n, list(range(1, n)) * m)


def unknot() -> LinkDiagram:
    return LinkDiagram((), 1)


def unlink(n: int) -> LinkDiagram:
    if n < 0:
        raise DiagramError("unlink needs n >= 0")
    return LinkDiagram((), n)


def cable_two_zero(p: int) -> LinkDiagram:
    """The 2-cable of T(2, p) with zero linking matrix.

    Each crossing of the standard T(2, p) braid is doubled (blackboard
    framing), then 2p negative half-twists between the two parallel copies
    cancel the framing.
    """
    if p < 1 or p % 2 == 0:
        raise DiagramError("cable_two_zero needs an odd p >= 1")
    return braid_closure(4, [2, 1, 3, 2] * p + [-1] * (2 * p))


# ---- transformations -----------------------------------------------------------

def _effective_heads(d: LinkDiagram, o: Orientation | None = None) -> dict[int, Slot]:
    heads = dict(d._heads)
    if o is None:
        return heads
    ends = d._arc_ends
    for arc, head in list(heads.items()):
        if o[d.component_of[arc]] == -1:
            e = ends[arc]
            heads[arc] = e[0] if e[1] == head else e[1]
    return heads


def _from_heads(crossings, heads: dict[int, Slot], loops: int, under_slots: dict[int, tuple[int, int]]) -> LinkDiagram:
    """Assemble a diagram whose crossing ``x`` has its under strand through
    the old positions ``under_slots[x]`` and arcs heading per ``heads``."""
    new = []
    for x, cr in enumerate(crossings):
        p, q = under_slots[x]
        inc = p if heads[cr[p]] == (x, p) else q
        new.append(tuple(cr[(inc + k) % 4] for k in range(4)))
    new = tuple(new)
    base = LinkDiagram(new, loops) if new else LinkDiagram((), loops)
    if not new:
        return base
    # slot positions shifted; translate the desired heads into new slots
    shift = {}
    for x, cr in enumerate(crossings):
        p, q = under_slots[x]
        inc = p if heads[cr[p]] == (x, p) else q
        for k in range(4):
            shift[(x, (inc + k) % 4)] = (x, k)
    flags = list(base.directions)
    for c, (walk, pinned) in enumerate(base._traversals):
        if pinned:
            continue
        arc, head = walk[0]
        want = shift[heads[arc]]
        flags[c] = 1 if want == head else -1
    return LinkDiagram(new, loops, tuple(flags))


def reorient(d: LinkDiagram, o: Orientation) -> LinkDiagram:
    """The same diagram with components reversed where ``o`` is -1."""
    d._check_orientation(o)
    heads = _effective_heads(d, o)
    return _from_heads(d.crossings, heads, d.loops, {x: (0, 2) for x in range(len(d.crossings))})


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing, keeping orientation."""
    heads = _effective_heads(d)
    return _from_heads(d.crossings, heads, d.loops, {x: (1, 3) for x in range(len(d.crossings))})


def crossing_change(d: LinkDiagram, x: int) -> LinkDiagram:
    """Swap over and under at crossing ``x`` only."""
    if not 0 <= x < len(d.crossings):
        raise IndexError(x)
    heads = _effective_heads(d)
    slots = {y: (0, 2) for y in range(len(d.crossings))}
    slots[x] = (1, 3)
    return _from_heads(d.crossings, heads, d.loops, slots)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Split union; arcs of ``d2`` are shifted past those of ``d1``."""
    off = max(d1.arcs, default=0)
    cr = d1.crossings + tuple(tuple(a + off for a in x) for x in d2.crossings)
    flags = tuple(d1.directions) + tuple(d2.directions)
    return LinkDiagram(cr, d1.loops + d2.loops, flags)


# ---- linking numbers -------------------------------------------------------------

def linking_matrix(d: LinkDiagram, o: Orientation | None = None) -> list[list[int]]:
    """Pairwise linking numbers (zero diagonal)."""
    o = o or Orientation.stored(d.n_components)
    signs = d.signs_under(o)
    n = d.n_components
    twice = [[0] * n for _ in range(n)]
    for x, s in enumerate(signs):
        i, j = d.under_component(x), d.over_component(x)
        if i != j:
            twice[i][j] += s
            twice[j][i] += s
    for row in twice:
        for v in row:
            assert v % 2 == 0, "inter-component crossings must pair up"
    return [[v // 2 for v in row] for row in twice]


def lk_total(d: LinkDiagram, o: Orientation | None = None) -> int:
    """Sum of pairwise linking numbers under ``o``."""
    m = linking_matrix(d, o)
    return sum(m[i][j] for i in range(len(m)) for j in range(i + 1, len(m)))


def torus_components(n: int, m: int) -> int:
    return gcd(n, m)
