"""Finite groups given by multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity. Subgroups
are enumerated once and kept in a canonical order (size, then the sorted
element tuple), and every downstream structure is indexed by position in
that list.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence


class GroupError(ValueError):
    """Raised for malformed group tables or bad subgroup arguments."""


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]
    id: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __le__(self, other: Subgroup) -> bool:
        return self._set <= other._set


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    left: int
    mid: int
    right: int
    representatives: tuple[int, ...]
    classes: tuple[frozenset[int], ...] = field(repr=False)


class FiniteGroup:
    """A finite group as a Cayley table.

    The table is validated on construction: closure, identity at index 0,
    inverses and associativity are all checked exhaustively.
    """

    def __init__(self, mul: Sequence[Sequence[int]], name: str = "G",
                 labels: Sequence[str] | None = None):
        n = len(mul)
        if n == 0:
            raise GroupError("empty group table")
        if n > 24:
            raise GroupError(f"groups of order {n} > 24 are not supported")
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in mul)
        self.order = n
        self.name = name
        self.identity = 0
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self._validate()
        inv = [0] * n
        for a in range(n):
            inv[a] = next(b for b in range(n) if self.mul[a][b] == 0)
        self.inverse: tuple[int, ...] = tuple(inv)

    def _validate(self) -> None:
        n, m = self.order, self.mul
        for a, row in enumerate(m):
            if len(row) != n:
                raise GroupError(f"row {a} has length {len(row)}, expected {n}")
            if any(not 0 <= v < n for v in row):
                raise GroupError(f"row {a} has entries outside 0..{n - 1}")
        for a in range(n):
            if m[0][a] != a or m[a][0] != a:
                raise GroupError(f"index 0 is not an identity (fails at element {a})")
            if 0 not in m[a]:
                raise GroupError(f"element {a} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise GroupError(f"not associative: witness triple {(a, b, c)}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conj_elt(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inverse[g]]

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        """Subgroup generated by ``gens`` (closure under multiplication)."""
        elems = {0, *gens}
        while True:
            new = {self.mul[a][b] for a in elems for b in elems} - elems
            if not new:
                break
            elems |= new
        return frozenset(elems)

    @cached_property
    def subgroups(self) -> tuple[Subgroup, ...]:
        # every subgroup is the join of its cyclic subgroups
        found = {self.generated([x]) for x in range(self.order)}
        frontier = set(found)
        while frontier:
            new = set()
            for a in frontier:
                for b in found:
                    j = self.generated(sorted(a | b))
                    if j not in found and j not in new:
                        new.add(j)
            found |= new
            frontier = new
        ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
        return tuple(Subgroup(tuple(sorted(s)), i) for i, s in enumerate(ordered))

    @cached_property
    def _subgroup_index(self) -> dict[frozenset[int], int]:
        return {frozenset(s.elements): s.id for s in self.subgroups}

    def subgroup_id(self, elements) -> int:
        try:
            return self._subgroup_index[frozenset(elements)]
        except KeyError:
            raise GroupError(f"{sorted(elements)} is not a subgroup of {self.name}") from None

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]

    @cached_property
    def containment(self) -> tuple[tuple[int, int], ...]:
        """All pairs (H, K) of subgroup ids with K <= H, including K == H."""
        subs = self.subgroups
        return tuple((h.id, k.id) for h in subs for k in subs if k <= h)

    def is_sub(self, k: int, h: int) -> bool:
        return self.subgroups[k] <= self.subgroups[h]

    def conjugate_id(self, h: int, x: int) -> int:
        return self._conj_table[x][h]

    @cached_property
    def _conj_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.subgroup_id({self.conj_elt(x, e) for e in s.elements}) for s in self.subgroups)
            for x in range(self.order)
        )

    def intersect_id(self, a: int, b: int) -> int:
        sa, sb = self.subgroups[a], self.subgroups[b]
        return self.subgroup_id(set(sa.elements) & set(sb.elements))

    def index(self, k: int, h: int) -> int:
        """[H:K] for K <= H."""
        return self.subgroups[h].order // self.subgroups[k].order

    def left_coset_reps(self, h: int, k: int) -> tuple[int, ...]:
        """Minimal representatives of the left cosets xK inside H."""
        H, K = self.subgroups[h], self.subgroups[k]
        if not K <= H:
            raise GroupError(f"subgroup {k} is not contained in {h}")
        seen: set[int] = set()
        reps = []
        for x in H.elements:
            if x in seen:
                continue
            reps.append(x)
            seen.update(self.mul[x][y] for y in K.elements)
        return tuple(reps)


def conjugate_subgroup(g: FiniteGroup, h: Subgroup, x: int) -> Subgroup:
    return g.subgroups[g.conjugate_id(h.id, x)]


def enumerate_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return list(g.subgroups)


def double_cosets(g: FiniteGroup, l: Subgroup, k: Subgroup, h: Subgroup) -> DoubleCosetDecomposition:
    if not (l <= k and h <= k):
        raise GroupError(f"double cosets need L <= K and H <= K (got L={l.id}, K={k.id}, H={h.id})")
    seen: set[int] = set()
    reps = []
    classes = []
    for x in k.elements:
        if x in seen:
            continue
        cls = frozenset(g.mul[g.mul[a][x]][b] for a in l.elements for b in h.elements)
        seen |= cls
        reps.append(x)
        classes.append(cls)
    return DoubleCosetDecomposition(l.id, k.id, h.id, tuple(reps), tuple(classes))


# -- built-in groups ---------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}",
                       labels=[f"g^{a}" if a else "e" for a in range(n)])


def klein_four() -> FiniteGroup:
    return FiniteGroup([[a ^ b for b in range(4)] for a in range(4)], name="K4",
                       labels=["e", "a", "b", "ab"])


def symmetric3() -> FiniteGroup:
    perms = sorted(itertools.permutations((1, 2, 3)))
    pos = {p: i for i, p in enumerate(perms)}

    def compose(s, t):
        # (s t)(i) = s(t(i))
        return tuple(s[t[i] - 1] for i in range(3))

    table = [[pos[compose(s, t)] for t in perms] for s in perms]
    return FiniteGroup(table, name="S3", labels=[_cycle_label(p) for p in perms])


def _cycle_label(p: tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(1, len(p) + 1):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j - 1]
        if len(cyc) > 1:
            out.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(out) or "e"


_BUILTINS = {
    "trivial": lambda: cyclic(1),
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "K4": klein_four,
    "C2xC2": klein_four,
    "S3": symmetric3,
}
_CACHE: dict[str, FiniteGroup] = {}


def builtin_group(name: str) -> FiniteGroup:
    if name not in _BUILTINS:
        raise GroupError(f"unknown built-in group {name!r}; choose from {sorted(_BUILTINS)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILTINS[name]()
    return _CACHE[name]
