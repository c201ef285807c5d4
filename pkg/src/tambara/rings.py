"""Finite commutative rings as addition/multiplication tables, with ideal calculus.

Every ring uses index 0 for zero and index 1 for one (the zero ring has a
single element). Ideals are frozensets of element indices; a ring caches its
full ideal list, so "smallest ideal containing S" is an intersection over that
list rather than a fresh closure computation.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

# Burnside C2 mod 15 needs 225 elements at the top level.
MAX_RING_SIZE = 256
MAX_ZMOD = 64


class RingError(ValueError):
    """Raised for invalid ring tables, homomorphisms or ideal arguments."""


class FiniteCommRing:
    def __init__(self, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
                 name: str = "R", labels: Sequence[str] | None = None, check: bool = True):
        n = len(add)
        if not 1 <= n <= MAX_RING_SIZE:
            raise RingError(f"ring size {n} outside 1..{MAX_RING_SIZE}")
        self.size = n
        self.name = name
        self.add = tuple(tuple(int(v) for v in row) for row in add)
        self.mul = tuple(tuple(int(v) for v in row) for row in mul)
        self.zero = 0
        self.one = 1 if n > 1 else 0
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if check:
            self._validate()
        self.neg = tuple(self.add[a].index(0) for a in range(n))

    def __repr__(self) -> str:
        return f"FiniteCommRing({self.name!r}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    def _validate(self) -> None:
        n = self.size
        A = np.asarray(self.add, dtype=np.int64)
        M = np.asarray(self.mul, dtype=np.int64)
        if A.shape != (n, n) or M.shape != (n, n):
            raise RingError("tables must be square and of equal size")
        if A.min() < 0 or A.max() >= n or M.min() < 0 or M.max() >= n:
            raise RingError("table entries out of range")
        idx = np.arange(n)
        for T, what in ((A, "addition"), (M, "multiplication")):
            bad = np.argwhere(T != T.T)
            if bad.size:
                raise RingError(f"{what} not commutative at {tuple(bad[0])}")
            for a in range(n):
                bad = np.argwhere(T[T[a]] != T[a][T])
                if bad.size:
                    b, c = (int(v) for v in bad[0])
                    raise RingError(f"{what} not associative: witness triple {(a, b, c)}")
        if not (A[0] == idx).all():
            raise RingError("index 0 is not an additive identity")
        if not (A == 0).any(axis=1).all():
            raise RingError("missing additive inverse")
        one = 1 if n > 1 else 0
        if not (M[one] == idx).all():
            raise RingError("index 1 is not a multiplicative identity")
        for a in range(n):
            bad = np.argwhere(M[a][A] != A[M[a][:, None], M[a][None, :]])
            if bad.size:
                b, c = (int(v) for v in bad[0])
                raise RingError(f"not distributive: witness triple {(a, b, c)}")

    # -- element arithmetic

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def scale(self, k: int, a: int) -> int:
        """k·a for a non-negative integer k."""
        r = self.zero
        for _ in range(k):
            r = self.add[r][a]
        return r

    def sum(self, xs: Iterable[int]) -> int:
        return reduce(self.plus, xs, self.zero)

    def prod(self, xs: Iterable[int]) -> int:
        return reduce(self.times, xs, self.one)

    @cached_property
    def elements(self) -> range:
        return range(self.size)

    # -- ideals

    @cached_property
    def principal_ideals(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.mul[a]) for a in range(self.size))

    def ideal_sum_sets(self, i: frozenset[int], j: frozenset[int]) -> frozenset[int]:
        return frozenset(self.add[a][b] for a in i for b in j)

    @cached_property
    def ideals(self) -> tuple[frozenset[int], ...]:
        """All ideals, closed from the principal ones under pairwise sum."""
        found = set(self.principal_ideals)
        frontier = set(found)
        while frontier:
            new = set()
            for a in frontier:
                for b in found:
                    s = self.ideal_sum_sets(a, b)
                    if s not in found:
                        new.add(s)
            found |= new
            frontier = new
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    @cached_property
    def _ideal_masks(self) -> tuple[int, ...]:
        return tuple(_mask(i) for i in self.ideals)

    @cached_property
    def _ideal_by_mask(self) -> dict[int, frozenset[int]]:
        return {m: i for m, i in zip(self._ideal_masks, self.ideals)}

    def ideal_closure(self, s: Iterable[int]) -> frozenset[int]:
        """Smallest ideal containing ``s``."""
        m = _mask(s)
        out = (1 << self.size) - 1
        for im in self._ideal_masks:
            if im & m == m:
                out &= im
        return self._ideal_by_mask[out]

    def is_ideal(self, s: Iterable[int]) -> bool:
        return _mask(s) in self._ideal_by_mask

    @cached_property
    def _radical_table(self) -> dict[frozenset[int], frozenset[int]]:
        return {i: self._radical_scan(i) for i in self.ideals}

    def _radical_scan(self, i: frozenset[int]) -> frozenset[int]:
        out = set()
        for x in range(self.size):
            p = x
            # powers of x cycle within |R| steps
            for _ in range(self.size):
                if p in i:
                    out.add(x)
                    break
                p = self.mul[p][x]
        return frozenset(out)

    def radical_set(self, i: frozenset[int]) -> frozenset[int]:
        try:
            return self._radical_table[i]
        except KeyError:
            raise RingError(f"{sorted(i)} is not an ideal of {self.name}") from None

    @cached_property
    def radical_ideals(self) -> tuple[frozenset[int], ...]:
        return tuple(i for i in self.ideals if self.radical_set(i) == i)

    @cached_property
    def nilradical(self) -> frozenset[int]:
        return self.radical_set(frozenset({0}))

    @cached_property
    def whole(self) -> frozenset[int]:
        return frozenset(range(self.size))

    @cached_property
    def zero_ideal(self) -> frozenset[int]:
        return frozenset({0})

    def is_reduced(self) -> bool:
        return self.nilradical == self.zero_ideal


def _mask(s: Iterable[int]) -> int:
    m = 0
    for x in s:
        m |= 1 << x
    return m


def ring_from_elements(elements: Sequence[Hashable], add: Callable, mul: Callable,
                       zero: Hashable, one: Hashable, name: str,
                       label: Callable[[Hashable], str] = str) -> tuple[FiniteCommRing, list]:
    """Materialise a ring given abstract elements and operations.

    Zero gets index 0, one index 1, the remaining elements keep their
    relative order. Returns the ring and the element list in index order.
    """
    rest = [e for e in elements if e != zero and e != one]
    ordered = [zero] + ([one] if one != zero else []) + rest
    if len(set(ordered)) != len(ordered) or len(ordered) != len(set(elements)):
        raise RingError("duplicate or missing elements")
    pos = {e: i for i, e in enumerate(ordered)}
    try:
        addt = [[pos[add(a, b)] for b in ordered] for a in ordered]
        mult = [[pos[mul(a, b)] for b in ordered] for a in ordered]
    except KeyError as exc:
        raise RingError(f"operation leaves the element set: {exc}") from None
    return FiniteCommRing(addt, mult, name=name, labels=[label(e) for e in ordered]), ordered


# -- constructors ------------------------------------------------------------

def construct_zmod(n: int) -> FiniteCommRing:
    if not 1 <= n <= MAX_ZMOD:
        raise RingError(f"Z/n needs 1 <= n <= {MAX_ZMOD}, got {n}")
    if n == 1:
        return FiniteCommRing([[0]], [[0]], name="Z/1", labels=["0"])
    return FiniteCommRing([[(a + b) % n for b in range(n)] for a in range(n)],
                          [[(a * b) % n for b in range(n)] for a in range(n)],
                          name=f"Z/{n}", labels=[str(a) for a in range(n)])


# q -> (p, coefficients of the monic irreducible, low degree first, leading 1 omitted)
_GF_MODULI = {
    2: (2, ()),
    3: (3, ()),
    5: (5, ()),
    7: (7, ()),
    4: (2, (1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0)),     # x^3 + x + 1
    9: (3, (1, 0)),        # x^2 + 1
}


class GaloisField(FiniteCommRing):
    """GF(q) with elements indexed by sum(c_i p^i) over coefficient vectors."""

    def __init__(self, q: int):
        if q not in _GF_MODULI:
            raise RingError(f"GF(q) supported for q in {sorted(_GF_MODULI)}, got {q}")
        p, modulus = _GF_MODULI[q]
        k = max(len(modulus), 1)
        vecs = [tuple((i // p ** j) % p for j in range(k)) for i in range(q)]
        pos = {v: i for i, v in enumerate(vecs)}

        def mult(a, b):
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    prod[i + j] += x * y
            # x^k = -(modulus)
            for d in range(2 * k - 2, k - 1, -1):
                c = prod[d]
                if c:
                    prod[d] = 0
                    for j, m in enumerate(modulus):
                        prod[d - k + j] -= c * m
            return tuple(c % p for c in prod[:k])

        add = [[pos[tuple((x + y) % p for x, y in zip(a, b))] for b in vecs] for a in vecs]
        mul = [[pos[mult(a, b)] for b in vecs] for a in vecs]
        labels = [_poly_label(v) for v in vecs]
        super().__init__(add, mul, name=f"GF({q})", labels=labels)
        self.characteristic = p
        self.degree = k if modulus else 1

    @cached_property
    def frobenius(self) -> tuple[int, ...]:
        p = self.characteristic
        return tuple(self.power(x, p) for x in range(self.size))

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """Powers of Frobenius, starting with the identity."""
        out = [tuple(range(self.size))]
        for _ in range(self.degree - 1):
            out.append(tuple(self.frobenius[x] for x in out[-1]))
        return tuple(out)


def _poly_label(v: tuple[int, ...]) -> str:
    terms = []
    for i, c in enumerate(v):
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        coef = str(c) if (c != 1 or i == 0) else ""
        terms.append(coef + mono)
    return "+".join(reversed(terms)) or "0"


def construct_gf(q: int) -> GaloisField:
    return GaloisField(q)


def construct_poly_quot(base: FiniteCommRing, const: int = 0, lin: int = 0,
                        name: str | None = None) -> FiniteCommRing:
    """base[t]/(t^2 - lin·t - const); a + b·t has index a + |base|·b.

    ``const`` and ``lin`` are element indices of ``base``.
    """
    n = base.size
    if n * n > MAX_RING_SIZE:
        raise RingError(f"{base.name}[t]/(...) would have {n * n} > {MAX_RING_SIZE} elements")
    A, M = base.add, base.mul
    add = [[0] * (n * n) for _ in range(n * n)]
    mul = [[0] * (n * n) for _ in range(n * n)]
    for x in range(n * n):
        a, b = x % n, x // n
        for y in range(n * n):
            c, d = y % n, y // n
            add[x][y] = A[a][c] + n * A[b][d]
            bd = M[b][d]
            r0 = A[M[a][c]][M[bd][const]]
            r1 = A[A[M[a][d]][M[b][c]]][M[bd][lin]]
            mul[x][y] = r0 + n * r1
    labels = []
    for x in range(n * n):
        a, b = base.labels[x % n], base.labels[x // n]
        labels.append(a if x < n else (f"{b}t" if x % n == 0 else f"{a}+{b}t"))
    rel = name or f"{base.name}[t]/(t^2-{base.labels[lin]}t-{base.labels[const]})"
    return FiniteCommRing(add, mul, name=rel, labels=labels)


_REL_RE = re.compile(r"^t2=(.*)$")


def parse_relation(base: FiniteCommRing, rel: str) -> tuple[int, int]:
    """Parse ``t2=2t``, ``t2=1+t``, ``t2=0`` into (const, lin) element indices."""
    m = _REL_RE.match(rel.replace(" ", "").replace("^", ""))
    if not m:
        raise RingError(f"cannot parse relation {rel!r}; expected e.g. 't2=2t'")
    const = lin = 0
    for term in filter(None, m.group(1).split("+")):
        if term.endswith("t"):
            lin += int(term[:-1] or 1)
        else:
            const += int(term)
    return base.scale(const, base.one), base.scale(lin, base.one)


def product_ring(r1: FiniteCommRing, r2: FiniteCommRing, name: str | None = None) -> FiniteCommRing:
    elems = list(itertools.product(range(r1.size), range(r2.size)))
    ring, _ = ring_from_elements(
        elems,
        lambda a, b: (r1.add[a[0]][b[0]], r2.add[a[1]][b[1]]),
        lambda a, b: (r1.mul[a[0]][b[0]], r2.mul[a[1]][b[1]]),
        (0, 0), (r1.one, r2.one), name or f"{r1.name}x{r2.name}",
        label=lambda e: f"({r1.labels[e[0]]},{r2.labels[e[1]]})",
    )
    return ring


def product_ring_pairs(r1: FiniteCommRing, r2: FiniteCommRing) -> list[tuple[int, int]]:
    """Index -> (component, component) for :func:`product_ring`'s ordering."""
    elems = list(itertools.product(range(r1.size), range(r2.size)))
    zero, one = (0, 0), (r1.one, r2.one)
    return [zero] + ([one] if one != zero else []) + [e for e in elems if e not in (zero, one)]


def quotient_ring(r: FiniteCommRing, i: frozenset[int],
                  name: str | None = None) -> tuple[FiniteCommRing, tuple[int, ...]]:
    """R/I with cosets ordered by their least member; returns (ring, surjection)."""
    if not r.is_ideal(i):
        raise RingError(f"{sorted(i)} is not an ideal of {r.name}")
    rep_of = [0] * r.size
    reps = []
    for x in range(r.size):
        if any(r.sub(x, y) in i for y in reps):
            continue
        reps.append(x)
    for x in range(r.size):
        rep_of[x] = next(y for y in reps if r.sub(x, y) in i)
    pos = {y: k for k, y in enumerate(reps)}
    add = [[pos[rep_of[r.add[a][b]]] for b in reps] for a in reps]
    mul = [[pos[rep_of[r.mul[a][b]]] for b in reps] for a in reps]
    q = FiniteCommRing(add, mul, name=name or f"{r.name}/I", labels=[r.labels[y] for y in reps])
    return q, tuple(pos[rep_of[x]] for x in range(r.size))


def subring(r: FiniteCommRing, members: Iterable[int],
            name: str | None = None) -> tuple[FiniteCommRing, tuple[int, ...]]:
    """Materialise a subring; returns (ring, embedding local index -> index in r)."""
    ms = sorted(set(members))
    if 0 not in ms or r.one not in ms:
        raise RingError("subring must contain zero and one")
    ring, order = ring_from_elements(ms, lambda a, b: r.add[a][b], lambda a, b: r.mul[a][b],
                                     0, r.one, name or f"sub({r.name})", label=lambda e: r.labels[e])
    return ring, tuple(order)


# -- ideals as values -------------------------------------------------------

@dataclass(frozen=True)
class RingIdeal:
    ring: FiniteCommRing = field(compare=False, hash=False, repr=False)
    members: frozenset[int]

    def __post_init__(self):
        if not self.ring.is_ideal(self.members):
            raise RingError(f"{sorted(self.members)} is not an ideal of {self.ring.name}")

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: RingIdeal) -> bool:
        return self.members <= other.members

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __repr__(self) -> str:
        return f"RingIdeal({self.ring.name}, {sorted(self.members)})"


def _same_ring(i: RingIdeal, j: RingIdeal) -> FiniteCommRing:
    if i.ring is not j.ring:
        raise RingError(f"ideals live in different rings ({i.ring.name} vs {j.ring.name})")
    return i.ring


def enumerate_ring_ideals(r: FiniteCommRing) -> list[RingIdeal]:
    return [RingIdeal(r, i) for i in r.ideals]


def principal_ideal(r: FiniteCommRing, x: int) -> RingIdeal:
    return RingIdeal(r, r.principal_ideals[x])


def ring_radical(i: RingIdeal) -> RingIdeal:
    return RingIdeal(i.ring, i.ring.radical_set(i.members))


def ring_ideal_sum(i: RingIdeal, j: RingIdeal) -> RingIdeal:
    r = _same_ring(i, j)
    return RingIdeal(r, r.ideal_sum_sets(i.members, j.members))


def ring_ideal_product(i: RingIdeal, j: RingIdeal) -> RingIdeal:
    r = _same_ring(i, j)
    return RingIdeal(r, r.ideal_closure({r.mul[a][b] for a in i.members for b in j.members}))


def ring_ideal_intersect(i: RingIdeal, j: RingIdeal) -> RingIdeal:
    r = _same_ring(i, j)
    return RingIdeal(r, i.members & j.members)


def is_ring_prime(r: FiniteCommRing, p: frozenset[int]) -> bool:
    if r.one in p or r.size == 1:
        return False
    return all(a in p or b in p for a in range(r.size) for b in range(r.size) if r.mul[a][b] in p)


def ring_primes(r: FiniteCommRing) -> list[RingIdeal]:
    return [RingIdeal(r, i) for i in r.ideals if is_ring_prime(r, i)]


def ring_zariski_frame(r: FiniteCommRing):
    """Radical ideals of ``r`` ordered by inclusion, as a FiniteFrame."""
    from .frames import FiniteFrame

    rad = list(r.radical_ideals)
    return FiniteFrame.from_order(
        [RingIdeal(r, i) for i in rad],
        lambda a, b: a.members <= b.members,
    )


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class RingHom:
    source: FiniteCommRing = field(compare=False, repr=False)
    target: FiniteCommRing = field(compare=False, repr=False)
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def violations(self) -> list[str]:
        s, t, f = self.source, self.target, self.map
        out = []
        if len(f) != s.size:
            return [f"map has {len(f)} entries, source has {s.size}"]
        if f[0] != 0:
            out.append("zero not preserved")
        if f[s.one] != t.one:
            out.append("one not preserved")
        for a in range(s.size):
            for b in range(a, s.size):
                if f[s.add[a][b]] != t.add[f[a]][f[b]]:
                    out.append(f"addition fails at {(a, b)}")
                    return out
                if f[s.mul[a][b]] != t.mul[f[a]][f[b]]:
                    out.append(f"multiplication fails at {(a, b)}")
                    return out
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def preimage(self, j: Iterable[int]) -> frozenset[int]:
        js = set(j)
        return frozenset(x for x in range(self.source.size) if self.map[x] in js)

    def image(self, i: Iterable[int]) -> frozenset[int]:
        return frozenset(self.map[x] for x in i)
