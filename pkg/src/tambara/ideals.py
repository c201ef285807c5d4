"""Tambara ideals: validation, generation, products, radicals and primes.

An ideal is a tuple of ring ideals indexed by subgroup id. Two ideals are
equal when their levels agree, so they hash and sort canonically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .functor import TambaraFunctor, TambaraMorphism
from .rings import RingIdeal

Element = tuple[int, int]  # (subgroup id, element index)


@dataclass(frozen=True, eq=False)
class TambaraIdeal:
    functor: TambaraFunctor = field(repr=False)
    levels: tuple[frozenset[int], ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, TambaraIdeal) and self.levels == other.levels

    def __hash__(self) -> int:
        return hash(self.levels)

    def __le__(self, other: TambaraIdeal) -> bool:
        return all(a <= b for a, b in zip(self.levels, other.levels))

    def __lt__(self, other: TambaraIdeal) -> bool:
        return self <= other and self != other

    def __contains__(self, item: Element) -> bool:
        h, x = item
        return x in self.levels[h]

    def level(self, h: int) -> RingIdeal:
        return RingIdeal(self.functor.levels[h], self.levels[h])

    @property
    def is_proper(self) -> bool:
        t = self.functor
        return t.levels[t.top].one not in self.levels[t.top]

    def is_whole(self) -> bool:
        return all(len(l) == r.size for l, r in zip(self.levels, self.functor.levels))

    def is_zero(self) -> bool:
        return all(l == {0} for l in self.levels)

    def sort_key(self) -> tuple:
        return (sum(map(len, self.levels)), tuple(tuple(sorted(l)) for l in self.levels))

    def as_dict(self) -> dict:
        return {"functor": self.functor.name,
                "levels": {str(h): sorted(l) for h, l in enumerate(self.levels)}}

    def __repr__(self) -> str:
        body = ", ".join(f"{h}:{sorted(l)}" for h, l in enumerate(self.levels))
        return f"TambaraIdeal({self.functor.name}; {body})"


@dataclass(frozen=True)
class GeneralizedProduct:
    level: int
    value: int
    x: Element
    y: Element
    x_translate: tuple[int, int]   # (K, g) for x
    y_translate: tuple[int, int]

    def recompute(self, t: TambaraFunctor) -> int:
        mu = t.translate(self.x[0], self.x[1], self.level, *self.x_translate)
        nu = t.translate(self.y[0], self.y[1], self.level, *self.y_translate)
        return t.levels[self.level].mul[mu][nu]


def _cache(t: TambaraFunctor, name: str) -> dict:
    return t.__dict__.setdefault(f"_ideal_cache_{name}", {})


def canonical(ideals: Iterable[TambaraIdeal]) -> list[TambaraIdeal]:
    return sorted(set(ideals), key=TambaraIdeal.sort_key)


# -- validity ----------------------------------------------------------------

def validate_ideal(t: TambaraFunctor, levels: Sequence[Iterable[int]]) -> tuple[bool, list[dict]]:
    lv = [frozenset(l) for l in levels]
    G = t.group
    bad: list[dict] = []
    if len(lv) != t.n_sub:
        return False, [{"rule": "shape", "detail": f"{len(lv)} levels for {t.n_sub} subgroups"}]
    for h, l in enumerate(lv):
        if not t.levels[h].is_ideal(l):
            bad.append({"rule": "I1", "subgroup": h, "members": sorted(l)})
    for h, k in G.containment:
        if h == k:
            continue
        for x in sorted(lv[h]):
            if t.res[h, k][x] not in lv[k]:
                bad.append({"rule": "I2", "pair": [h, k], "x": x, "image": t.res[h, k][x]})
                break
        for x in sorted(lv[k]):
            if t.tr[h, k][x] not in lv[h]:
                bad.append({"rule": "I3", "pair": [h, k], "x": x, "image": t.tr[h, k][x]})
                break
        for x in sorted(lv[k]):
            if t.nm[h, k][x] not in lv[h]:
                bad.append({"rule": "I4", "pair": [h, k], "x": x, "image": t.nm[h, k][x]})
                break
    for g in range(G.order):
        for h in range(t.n_sub):
            gh = G.conjugate_id(h, g)
            img = frozenset(t.conj[g, h][x] for x in lv[h])
            if img != lv[gh]:
                bad.append({"rule": "I5", "g": g, "subgroup": h})
    return not bad, bad


def make_ideal(t: TambaraFunctor, levels: Sequence[Iterable[int]]) -> TambaraIdeal:
    ok, bad = validate_ideal(t, levels)
    if not ok:
        raise ValueError(f"not a Tambara ideal of {t.name}: {bad[0]}")
    return TambaraIdeal(t, tuple(frozenset(l) for l in levels))


def zero_ideal(t: TambaraFunctor) -> TambaraIdeal:
    return TambaraIdeal(t, tuple(frozenset({0}) for _ in t.levels))


def whole_ideal(t: TambaraFunctor) -> TambaraIdeal:
    return TambaraIdeal(t, tuple(r.whole for r in t.levels))


# -- generation --------------------------------------------------------------

def _close(t: TambaraFunctor, seeds: Sequence[Iterable[int]]) -> tuple[frozenset[int], ...]:
    """Least Tambara ideal containing the seed sets.

    Each pass ideal-closes every level, then pushes every member through all
    res/tr/nm/conj maps. Norms are not additive, so images of all members are
    needed, not only of generators.
    """
    G = t.group
    cur = [t.levels[h].ideal_closure(s) for h, s in enumerate(seeds)]
    while True:
        new = [set(c) for c in cur]
        for h, k in G.containment:
            if h == k:
                continue
            res, tr, nm = t.res[h, k], t.tr[h, k], t.nm[h, k]
            new[k].update(res[x] for x in cur[h])
            new[h].update(tr[x] for x in cur[k])
            new[h].update(nm[x] for x in cur[k])
        for g in range(1, G.order):
            for h in range(t.n_sub):
                c = t.conj[g, h]
                new[G.conjugate_id(h, g)].update(c[x] for x in cur[h])
        nxt = [t.levels[h].ideal_closure(s) for h, s in enumerate(new)]
        if nxt == cur:
            return tuple(cur)
        cur = nxt


def generate_ideal(t: TambaraFunctor, gens: Iterable[Element]) -> TambaraIdeal:
    seeds: list[set[int]] = [set() for _ in t.levels]
    for h, x in gens:
        if not 0 <= x < t.levels[h].size:
            raise ValueError(f"element {x} not in level {h} of {t.name}")
        seeds[h].add(x)
    return TambaraIdeal(t, _close(t, seeds))


def principal(t: TambaraFunctor, h: int, x: int) -> TambaraIdeal:
    cache = _cache(t, "principal")
    if (h, x) not in cache:
        cache[h, x] = generate_ideal(t, [(h, x)])
    return cache[h, x]


def ideal_sum(ideals: Sequence[TambaraIdeal]) -> TambaraIdeal:
    if not ideals:
        raise ValueError("ideal_sum needs at least one ideal")
    t = _same_functor(ideals)
    levels = []
    for h, r in enumerate(t.levels):
        acc = frozenset({0})
        for i in ideals:
            acc = r.ideal_sum_sets(acc, i.levels[h])
        levels.append(acc)
    return TambaraIdeal(t, tuple(levels))


def ideal_intersection(ideals: Sequence[TambaraIdeal]) -> TambaraIdeal:
    t = _same_functor(ideals)
    return TambaraIdeal(t, tuple(frozenset.intersection(*[i.levels[h] for i in ideals])
                                 for h in range(t.n_sub)))


def ideal_product(i: TambaraIdeal, j: TambaraIdeal) -> TambaraIdeal:
    """The ideal generated by the levelwise products I(G/H)·J(G/H)."""
    t = _same_functor([i, j])
    key = (i.levels, j.levels)
    cache = _cache(t, "product")
    if key not in cache:
        seeds = []
        for h, r in enumerate(t.levels):
            m = r.mul
            seeds.append({m[a][b] for a in i.levels[h] for b in j.levels[h]})
        cache[key] = TambaraIdeal(t, _close(t, seeds))
    return cache[key]


def ideal_power(i: TambaraIdeal, n: int) -> TambaraIdeal:
    out = i
    for _ in range(n - 1):
        out = ideal_product(out, i)
    return out


def _same_functor(ideals: Sequence[TambaraIdeal]) -> TambaraFunctor:
    t = ideals[0].functor
    if any(i.functor is not t for i in ideals):
        raise ValueError("ideals belong to different functors")
    return t


# -- translates and generalized products ---------------------------------

def multiplicative_translates(t: TambaraFunctor, x: Element, target: int) -> set[int]:
    h, v = x
    return set(t.translates(h, v, target))


def generalized_products(t: TambaraFunctor, x: Element, y: Element) -> list[GeneralizedProduct]:
    out = []
    D = t.translate_descriptors
    for l in range(t.n_sub):
        mul = t.levels[l].mul
        xs = [(d, t.translate(x[0], x[1], l, *d)) for d in D[x[0], l]]
        ys = [(d, t.translate(y[0], y[1], l, *d)) for d in D[y[0], l]]
        for (dx, mu), (dy, nu) in itertools.product(xs, ys):
            out.append(GeneralizedProduct(l, mul[mu][nu], x, y, dx, dy))
    return out


def generalized_product_values(t: TambaraFunctor, x: Element, y: Element) -> list[frozenset[int]]:
    """Per level L, the set of generalized products of x and y landing in T(G/L)."""
    out = []
    for l in range(t.n_sub):
        mul = t.levels[l].mul
        xs, ys = t.translates(x[0], x[1], l), t.translates(y[0], y[1], l)
        out.append(frozenset(mul[a][b] for a in xs for b in ys))
    return out


def q_predicate(i: TambaraIdeal, x: Element, y: Element) -> tuple[bool, GeneralizedProduct | None]:
    t = i.functor
    for l, vals in enumerate(generalized_product_values(t, x, y)):
        if not vals <= i.levels[l]:
            first = next(p for p in generalized_products(t, x, y)
                         if p.level == l and p.value not in i.levels[l])
            return False, first
    return True, None


def _q_fast(i: TambaraIdeal, x: Element, y: Element) -> bool:
    return all(v <= i.levels[l] for l, v in enumerate(generalized_product_values(i.functor, x, y)))


def product_generators(i_gens: Sequence[Element], j_gens: Sequence[Element],
                       t: TambaraFunctor) -> list[Element]:
    """Finite generator set for <I_gens><J_gens>: all generalized products of generator pairs."""
    out = set()
    for x in i_gens:
        for y in j_gens:
            for l, vals in enumerate(generalized_product_values(t, x, y)):
                out.update((l, v) for v in vals)
    return sorted(out)


# -- radicals ----------------------------------------------------------------

def radical(i: TambaraIdeal) -> TambaraIdeal:
    """Levelwise ring radical."""
    t = i.functor
    return TambaraIdeal(t, tuple(r.radical_set(l) for r, l in zip(t.levels, i.levels)))


def power_chain_floor(t: TambaraFunctor, h: int, x: int) -> TambaraIdeal:
    """Where <x> ⊇ <x>^2 ⊇ ... stabilises."""
    cache = _cache(t, "chain")
    if (h, x) not in cache:
        p = principal(t, h, x)
        cur = p
        while True:
            nxt = ideal_product(cur, p)
            if nxt == cur:
                break
            cur = nxt
        cache[h, x] = cur
    return cache[h, x]


def radical_by_definition(i: TambaraIdeal) -> TambaraIdeal:
    """{x : <x>^n ⊆ I for some n >= 1}, using the stabilised power chain."""
    t = i.functor
    levels = []
    for h, r in enumerate(t.levels):
        levels.append(frozenset(x for x in range(r.size) if power_chain_floor(t, h, x) <= i))
    return TambaraIdeal(t, tuple(levels))


def radical_by_primes(i: TambaraIdeal, primes: Sequence[TambaraIdeal]) -> TambaraIdeal:
    over = [p for p in primes if i <= p]
    if not over:
        return whole_ideal(i.functor)
    return ideal_intersection(over)


def nilradical(t: TambaraFunctor) -> TambaraIdeal:
    return radical(zero_ideal(t))


def is_radical(i: TambaraIdeal) -> bool:
    return radical(i) == i


# -- primes ------------------------------------------------------------------

def is_prime(p: TambaraIdeal) -> tuple[bool, tuple[Element, Element] | None]:
    """Generalized-product criterion, exhaustive over element pairs."""
    t = p.functor
    if not p.is_proper:
        return False, None
    outside = [(h, x) for h, x in t.elements() if x not in p.levels[h]]
    for idx, a in enumerate(outside):
        for b in outside[idx:]:
            if _q_fast(p, a, b):
                return False, (a, b)
    return True, None


def is_prime_by_ideals(p: TambaraIdeal, ideals: Sequence[TambaraIdeal]) -> bool:
    """IJ ⊆ P implies I ⊆ P or J ⊆ P, over the given list of all ideals."""
    if not p.is_proper:
        return False
    for i in ideals:
        if i <= p:
            continue
        for j in ideals:
            if not j <= p and ideal_product(i, j) <= p:
                return False
    return True


def enumerate_ideals(t: TambaraFunctor, radical_only: bool = False) -> list[TambaraIdeal]:
    """All (radical) Tambara ideals, filtered from tuples of ring ideals."""
    cache = _cache(t, "enum")
    if radical_only in cache:
        return cache[radical_only]
    choices = [r.radical_ideals if radical_only else r.ideals for r in t.levels]
    found = []
    for combo in itertools.product(*choices):
        if validate_ideal(t, combo)[0]:
            found.append(TambaraIdeal(t, tuple(combo)))
    cache[radical_only] = canonical(found)
    return cache[radical_only]


def prime_ideals(t: TambaraFunctor) -> list[TambaraIdeal]:
    """Nakaoka primes: the prime filter over radical ideals (primes are radical)."""
    cache = _cache(t, "primes")
    if "p" not in cache:
        cache["p"] = [i for i in enumerate_ideals(t, radical_only=True) if is_prime(i)[0]]
    return cache["p"]


def prime_ideals_slow(t: TambaraFunctor) -> list[TambaraIdeal]:
    """Prime filter over every ideal, using the ideal-pair definition."""
    all_ideals = enumerate_ideals(t)
    return [p for p in all_ideals if is_prime_by_ideals(p, all_ideals)]


def are_coprime(i: TambaraIdeal, j: TambaraIdeal) -> bool:
    return ideal_sum([i, j]).is_whole()


# -- morphisms -----------------------------------------------------------------

def preimage_ideal(m: TambaraMorphism, j: TambaraIdeal) -> TambaraIdeal:
    if j.functor is not m.target:
        raise ValueError("ideal does not live on the morphism's target")
    return TambaraIdeal(m.source, tuple(m.level_hom(h).preimage(j.levels[h])
                                        for h in range(m.source.n_sub)))


def pushforward_ideal(m: TambaraMorphism, i: TambaraIdeal) -> TambaraIdeal:
    if i.functor is not m.source:
        raise ValueError("ideal does not live on the morphism's source")
    seeds = [m.level_hom(h).image(i.levels[h]) for h in range(m.source.n_sub)]
    return TambaraIdeal(m.target, _close(m.target, seeds))


def radical_extension(m: TambaraMorphism, i: TambaraIdeal) -> TambaraIdeal:
    return radical(pushforward_ideal(m, i))


def kernel(m: TambaraMorphism) -> TambaraIdeal:
    return preimage_ideal(m, zero_ideal(m.target))
