"""Finite frames and finite topological spaces.

A finite lattice is a frame exactly when it is distributive, because every
join in it is a finite join; :func:`is_frame` therefore scans the binary law
over all triples. Points are handled through their meet-prime elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence


class FrameError(ValueError):
    """Raised when an order is not a lattice or a space is not a topology."""


class FiniteFrame:
    """A finite lattice stored by its order relation.

    Meet and join tables are filled in at construction; a ``FrameError`` is
    raised if some pair lacks a meet or a join.
    """

    def __init__(self, elements: Sequence[Any], leq: Sequence[Sequence[bool]]):
        n = len(elements)
        if n == 0:
            raise FrameError("a frame has at least one element")
        self.elements = tuple(elements)
        self.size = n
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        le = self.leq
        for a in range(n):
            if not le[a][a]:
                raise FrameError(f"order not reflexive at {a}")
            for b in range(n):
                if a != b and le[a][b] and le[b][a]:
                    raise FrameError(f"order not antisymmetric at {(a, b)}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if le[a][b] and le[b][c] and not le[a][c]:
                raise FrameError(f"order not transitive at {(a, b, c)}")
        self.meet = tuple(tuple(self._bound(a, b, lower=True) for b in range(n)) for a in range(n))
        self.join = tuple(tuple(self._bound(a, b, lower=False) for b in range(n)) for a in range(n))
        self.bottom = next(a for a in range(n) if all(le[a]))
        self.top = next(a for a in range(n) if all(le[b][a] for b in range(n)))

    @classmethod
    def from_order(cls, elements: Sequence[Any], leq: Callable[[Any, Any], bool]) -> FiniteFrame:
        return cls(elements, [[leq(a, b) for b in elements] for a in elements])

    def _bound(self, a: int, b: int, lower: bool) -> int:
        le = self.leq
        if lower:
            cands = [c for c in range(self.size) if le[c][a] and le[c][b]]
            best = [c for c in cands if all(le[d][c] for d in cands)]
        else:
            cands = [c for c in range(self.size) if le[a][c] and le[b][c]]
            best = [c for c in cands if all(le[c][d] for d in cands)]
        if len(best) != 1:
            kind = "meet" if lower else "join"
            raise FrameError(f"no {kind} for elements {(a, b)}; not a lattice")
        return best[0]

    def __repr__(self) -> str:
        return f"FiniteFrame(size={self.size})"

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = self.join[out][x]
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = self.meet[out][x]
        return out

    def index(self, label: Any) -> int:
        return self.elements.index(label)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram edges (a, b) with a < b and nothing strictly between."""
        le, n = self.leq, self.size
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and le[a][b] and not any(
                        c not in (a, b) and le[a][c] and le[c][b] for c in range(n)):
                    out.append((a, b))
        return tuple(out)


@dataclass(frozen=True)
class FramePoint:
    """A point of a frame, recorded by its meet-prime element."""

    meet_prime_index: int
    frame: FiniteFrame = field(compare=False, repr=False)

    def __call__(self, a: int) -> int:
        """The two-valued homomorphism: 0 iff a <= q."""
        return 0 if self.frame.leq[a][self.meet_prime_index] else 1


@dataclass(frozen=True)
class FiniteTopSpace:
    points: tuple[Any, ...]
    opens: tuple[frozenset[int], ...]

    @property
    def everything(self) -> frozenset[int]:
        return frozenset(range(len(self.points)))

    @cached_property
    def closed_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(self.everything - u for u in self.opens)

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        out = self.everything
        for c in self.closed_sets:
            if s <= c:
                out &= c
        return out

    def is_open(self, s: Iterable[int]) -> bool:
        return frozenset(s) in set(self.opens)

    def is_closed(self, s: Iterable[int]) -> bool:
        return (self.everything - frozenset(s)) in set(self.opens)

    def subspace_opens(self, sub: Iterable[int]) -> frozenset[frozenset[int]]:
        sub = frozenset(sub)
        return frozenset(u & sub for u in self.opens)


def canonical_sets(sets: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), sorted(s))))


def topology_from_subbasis(points: Sequence[Any], subbasis: Iterable[Iterable[int]]) -> FiniteTopSpace:
    everything = frozenset(range(len(points)))
    sub = {frozenset(s) for s in subbasis}
    basis = {everything} | sub
    frontier = set(basis)
    while frontier:
        new = {a & b for a in frontier for b in basis} - basis
        basis |= new
        frontier = new
    opens = {frozenset()} | basis
    frontier = set(opens)
    while frontier:
        new = {a | b for a in frontier for b in opens} - opens
        opens |= new
        frontier = new
    return FiniteTopSpace(tuple(points), canonical_sets(opens))


def validate_topology(s: FiniteTopSpace) -> list[str]:
    opens = set(s.opens)
    out = []
    if frozenset() not in opens:
        out.append("empty set not open")
    if s.everything not in opens:
        out.append("whole space not open")
    for a in s.opens:
        for b in s.opens:
            if a | b not in opens:
                out.append(f"union of {sorted(a)} and {sorted(b)} not open")
                return out
            if a & b not in opens:
                out.append(f"intersection of {sorted(a)} and {sorted(b)} not open")
                return out
    return out


# -- frame operations --------------------------------------------------------

def is_frame(l: FiniteFrame) -> tuple[bool, list[tuple[int, int, int]]]:
    m, j = l.meet, l.join
    bad = [(a, b, c) for a, b, c in itertools.product(range(l.size), repeat=3)
           if m[a][j[b][c]] != j[m[a][b]][m[a][c]]]
    return not bad, bad


def meet_primes(l: FiniteFrame) -> list[FramePoint]:
    le, m = l.leq, l.meet
    out = []
    for q in range(l.size):
        if q == l.top:
            continue
        if all(le[a][q] or le[b][q] for a in range(l.size) for b in range(l.size) if le[m[a][b]][q]):
            out.append(FramePoint(q, l))
    return out


def basic_open(points: Sequence[FramePoint], a: int) -> frozenset[int]:
    """U(a): positions of the points p with p(a) = 1."""
    return frozenset(i for i, p in enumerate(points) if p(a) == 1)


def point_space(l: FiniteFrame) -> FiniteTopSpace:
    pts = meet_primes(l)
    return topology_from_subbasis([p.meet_prime_index for p in pts],
                                  [basic_open(pts, a) for a in range(l.size)])


def check_spatial(l: FiniteFrame) -> tuple[bool, list[tuple[int, int]]]:
    pts = meet_primes(l)
    bad = []
    for a in range(l.size):
        for b in range(l.size):
            if l.leq[a][b]:
                continue
            if not any(p(a) == 1 and p(b) == 0 for p in pts):
                bad.append((a, b))
    return not bad, bad


def iota_report(l: FiniteFrame) -> dict[str, bool]:
    """Whether a -> U(a) is injective and preserves binary joins and meets."""
    pts = meet_primes(l)
    U = [basic_open(pts, a) for a in range(l.size)]
    rng = range(l.size)
    return {
        "injective": len(set(U)) == l.size,
        "joins": all(U[l.join[a][b]] == U[a] | U[b] for a in rng for b in rng),
        "meets": all(U[l.meet[a][b]] == U[a] & U[b] for a in rng for b in rng),
        "top": U[l.top] == frozenset(range(len(pts))),
        "bottom": U[l.bottom] == frozenset(),
    }


def compact_elements(l: FiniteFrame) -> set[int]:
    """Elements passing the directed-join test.

    The directed families of a finite lattice are exactly the sets with a
    greatest element, so for each a and each directed family D with
    a <= join(D) we look for d in D with a <= d. The scan ranges over all
    downsets of principal elements and the chains through them.
    """
    le = l.leq
    out = set()
    for a in range(l.size):
        ok = True
        for b in range(l.size):
            if not le[a][b]:
                continue
            down = [d for d in range(l.size) if le[d][b]]
            if l.join_all(down) != b or not any(le[a][d] for d in down):
                ok = False
                break
        if ok:
            out.add(a)
    return out


def check_coherent(l: FiniteFrame, designated: Iterable[int]) -> tuple[bool, dict[str, bool]]:
    d = set(designated)
    compact = compact_elements(l)
    parts = {
        "generates": all(l.join_all(c for c in d if l.leq[c][a]) == a for a in range(l.size)),
        "meet_closed": all(l.meet[a][b] in d for a in d for b in d),
        "top_designated": l.top in d,
        "compact": d <= compact,
    }
    return all(parts.values()), parts


def opens_frame(s: FiniteTopSpace) -> FiniteFrame:
    return FiniteFrame.from_order(list(s.opens), lambda a, b: a <= b)


def frames_isomorphic_via(a: FiniteFrame, b: FiniteFrame, f: Sequence[int]) -> bool:
    """True iff the map f (index in a -> index in b) is an order isomorphism."""
    if a.size != b.size or sorted(f) != list(range(b.size)):
        return False
    return all(a.leq[x][y] == b.leq[f[x]][f[y]] for x in range(a.size) for y in range(a.size))


# -- spectral spaces ---------------------------------------------------------

@dataclass(frozen=True)
class SpectralSpaceReport:
    t0: bool
    quasi_compact: bool
    basis_closed_under_intersection: bool
    sober: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def spectral(self) -> bool:
        return self.t0 and self.quasi_compact and self.basis_closed_under_intersection and self.sober


def is_compact_subset(s: FiniteTopSpace, k: Iterable[int]) -> bool:
    """Every open cover of k has a finite subcover, checked on the maximal cover.

    Covers are subfamilies of the finite set of opens; a greedy pass over the
    maximal cover yields a subcover of at most |k| members, which bounds every
    other cover as well.
    """
    k = frozenset(k)
    covered: set[int] = set()
    chosen = 0
    for x in sorted(k):
        if x in covered:
            continue
        u = next((u for u in s.opens if x in u), None)
        if u is None:
            return False
        covered |= u
        chosen += 1
    return chosen <= max(len(k), 1)


def check_spectral_space(s: FiniteTopSpace) -> SpectralSpaceReport:
    n = len(s.points)
    witnesses: dict[str, Any] = {}
    t0 = True
    for x, y in itertools.combinations(range(n), 2):
        if not any((x in u) != (y in u) for u in s.opens):
            t0 = False
            witnesses["t0"] = [x, y]
            break
    qc = is_compact_subset(s, s.everything)
    compact_opens = [u for u in s.opens if is_compact_subset(s, u)]
    co = set(compact_opens)
    basis_ok = all(a & b in co for a in compact_opens for b in compact_opens)
    # compact opens must form a basis: every open is a union of them
    for u in s.opens:
        if frozenset().union(*[c for c in compact_opens if c <= u]) != u:
            basis_ok = False
            witnesses["basis"] = sorted(u)
            break
    sober = True
    closed = s.closed_sets
    for c in closed:
        if not c:
            continue
        proper = [d for d in closed if d < c]
        reducible = any(a | b == c for a in proper for b in proper)
        if reducible:
            continue
        generic = [x for x in c if s.closure({x}) == c]
        if len(generic) != 1:
            sober = False
            witnesses["sober"] = {"closed": sorted(c), "generic_points": generic}
            break
    return SpectralSpaceReport(t0, qc, basis_ok, sober, witnesses)


def is_irreducible(s: FiniteTopSpace) -> bool:
    """Nonempty, and any two nonempty opens meet."""
    if not s.points:
        return False
    nonempty = [u for u in s.opens if u]
    return all(a & b for a in nonempty for b in nonempty)


def clopen_sets(s: FiniteTopSpace) -> list[frozenset[int]]:
    return [u for u in s.opens if s.is_closed(u)]


def is_connected(s: FiniteTopSpace) -> bool:
    return all(u in (frozenset(), s.everything) for u in clopen_sets(s))


# -- small fixtures ----------------------------------------------------------

def chain(n: int) -> FiniteFrame:
    return FiniteFrame(list(range(n)), [[a <= b for b in range(n)] for a in range(n)])


def powerset(k: int) -> FiniteFrame:
    subsets = canonical_sets(frozenset(c) for r in range(k + 1)
                             for c in itertools.combinations(range(k), r))
    return FiniteFrame.from_order(list(subsets), lambda a, b: a <= b)


def diamond_m3() -> FiniteFrame:
    # 0 < a, b, c < 1 with a, b, c pairwise incomparable
    names = ["0", "a", "b", "c", "1"]
    le = [[i == j or i == 0 or j == 4 for j in range(5)] for i in range(5)]
    return FiniteFrame(names, le)


def pentagon_n5() -> FiniteFrame:
    # 0 < a < b < 1, 0 < c < 1
    names = ["0", "a", "b", "c", "1"]
    rel = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)}
    le = [[i == j or (i, j) in rel for j in range(5)] for i in range(5)]
    return FiniteFrame(names, le)
