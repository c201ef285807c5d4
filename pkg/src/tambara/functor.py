"""Tambara functors as explicit tables, their axiom checker and constructions.

Restriction, transfer and norm tables are stored for every pair ``K <= H`` of
subgroup ids (including ``K == H``), conjugations for every group element and
subgroup. Keys are ``(H, K)`` with the map going between levels ``H`` and ``K``
in the natural direction: ``res[H, K]: T(G/H) -> T(G/K)`` while
``tr[H, K], nm[H, K]: T(G/K) -> T(G/H)``. ``conj[g, H]: T(G/H) -> T(G/gHg^-1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .groups import FiniteGroup, double_cosets
from .rings import (FiniteCommRing, GaloisField, RingHom, construct_poly_quot,
                    construct_zmod, product_ring, product_ring_pairs, quotient_ring, subring)

Table = tuple[int, ...]


class TambaraError(ValueError):
    """Raised for invalid constructions or morphisms."""


class TambaraFunctor:
    def __init__(self, group: FiniteGroup, levels: Sequence[FiniteCommRing],
                 res: Mapping[tuple[int, int], Sequence[int]],
                 tr: Mapping[tuple[int, int], Sequence[int]],
                 nm: Mapping[tuple[int, int], Sequence[int]],
                 conj: Mapping[tuple[int, int], Sequence[int]],
                 name: str = "T", builtin: bool = False):
        self.group = group
        self.levels = tuple(levels)
        self.res = {k: tuple(v) for k, v in res.items()}
        self.tr = {k: tuple(v) for k, v in tr.items()}
        self.nm = {k: tuple(v) for k, v in nm.items()}
        self.conj = {k: tuple(v) for k, v in conj.items()}
        self.name = name
        # reciprocity beyond prime order is taken on trust for built-ins only
        self.builtin = builtin

    def __repr__(self) -> str:
        return f"TambaraFunctor({self.name!r} over {self.group.name})"

    def level(self, h: int) -> FiniteCommRing:
        return self.levels[h]

    @property
    def n_sub(self) -> int:
        return len(self.group.subgroups)

    @property
    def top(self) -> int:
        return self.group.whole.id

    def is_zero(self) -> bool:
        return all(r.size == 1 for r in self.levels)

    def elements(self) -> Iterable[tuple[int, int]]:
        """All (subgroup id, element) pairs."""
        for h, r in enumerate(self.levels):
            for x in range(r.size):
                yield h, x

    # -- structure-map shortcuts

    def restrict(self, h: int, k: int, x: int) -> int:
        return self.res[h, k][x]

    def transfer(self, h: int, k: int, x: int) -> int:
        return self.tr[h, k][x]

    def norm(self, h: int, k: int, x: int) -> int:
        return self.nm[h, k][x]

    def conjugate(self, g: int, h: int, x: int) -> int:
        return self.conj[g, h][x]

    def shape_errors(self) -> list[str]:
        G = self.group
        out = []
        if len(self.levels) != len(G.subgroups):
            return [f"{len(self.levels)} levels for {len(G.subgroups)} subgroups"]
        for h, k in G.containment:
            src_res, dst_res = self.levels[h].size, self.levels[k].size
            for fam, table, src, dst in (("res", self.res, src_res, dst_res),
                                         ("tr", self.tr, dst_res, src_res),
                                         ("nm", self.nm, dst_res, src_res)):
                t = table.get((h, k))
                if t is None:
                    out.append(f"missing {fam} map for pair {(h, k)}")
                elif len(t) != src or any(not 0 <= v < dst for v in t):
                    out.append(f"{fam} map for pair {(h, k)} has wrong shape")
        for g in range(G.order):
            for h in range(len(G.subgroups)):
                t = self.conj.get((g, h))
                gh = G.conjugate_id(h, g)
                if t is None:
                    out.append(f"missing conj map for {(g, h)}")
                elif len(t) != self.levels[h].size or any(not 0 <= v < self.levels[gh].size for v in t):
                    out.append(f"conj map for {(g, h)} has wrong shape")
        return out

    def replace(self, **kw) -> TambaraFunctor:
        """Copy with some tables swapped out (used for mutation tests)."""
        args = dict(group=self.group, levels=self.levels, res=self.res, tr=self.tr,
                    nm=self.nm, conj=self.conj, name=self.name, builtin=False)
        args.update(kw)
        return TambaraFunctor(**args)

    # -- cached combinatorics

    @cached_property
    def translate_descriptors(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        """(H, L) -> sorted distinct (K, g) with K <= H and gKg^-1 <= L."""
        G = self.group
        out: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for h in range(self.n_sub):
            for l in range(self.n_sub):
                descs = []
                for k in range(self.n_sub):
                    if not G.is_sub(k, h):
                        continue
                    for g in range(G.order):
                        if G.is_sub(G.conjugate_id(k, g), l):
                            descs.append((k, g))
                out[h, l] = descs
        return {key: tuple(v) for key, v in out.items()}

    def translate(self, h: int, x: int, l: int, k: int, g: int) -> int:
        gk = self.group.conjugate_id(k, g)
        return self.nm[l, gk][self.conj[g, k][self.res[h, k][x]]]

    def translates(self, h: int, x: int, l: int) -> frozenset[int]:
        key = (h, x, l)
        cache = self._translate_cache
        if key not in cache:
            cache[key] = frozenset(self.translate(h, x, l, k, g)
                                   for k, g in self.translate_descriptors[h, l])
        return cache[key]

    @cached_property
    def _translate_cache(self) -> dict:
        return {}


# -- axiom checking ------------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    status: str            # "pass", "fail", "assumed", "unverified", "n/a"
    checked: int = 0
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {"axiom": self.name, "status": self.status, "checked": self.checked,
                "witness": self.witness}


@dataclass
class AxiomReport:
    functor: str
    shape_errors: list[str] = field(default_factory=list)
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.shape_errors and all(r.passed for r in self.results)

    def get(self, name: str) -> AxiomResult:
        return next(r for r in self.results if r.name == name)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def as_dict(self) -> dict:
        return {"functor": self.functor, "ok": self.ok, "shape_errors": self.shape_errors,
                "axioms": [r.as_dict() for r in self.results]}


class _Check:
    """Counts checked tuples and keeps the first failure."""

    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.witness: dict | None = None

    def __call__(self, ok: bool, **witness) -> bool:
        self.count += 1
        if not ok and self.witness is None:
            self.witness = witness
        return ok

    def result(self) -> AxiomResult:
        return AxiomResult(self.name, "pass" if self.witness is None else "fail", self.count, self.witness)


def _check_maps(t: TambaraFunctor) -> AxiomResult:
    G, L = t.group, t.levels
    c = _Check("maps")
    for h, k in G.containment:
        Rh, Rk = L[h], L[k]
        r, tr, nm = t.res[h, k], t.tr[h, k], t.nm[h, k]
        if h == k:
            ident = tuple(range(Rh.size))
            c(r == ident, map="res", pair=[h, k], detail="not the identity")
            c(tr == ident, map="tr", pair=[h, k], detail="not the identity")
            c(nm == ident, map="nm", pair=[h, k], detail="not the identity")
        v = RingHom(Rh, Rk, r).violations()
        c(not v, map="res", pair=[h, k], detail=v[:1])
        c(tr[0] == 0, map="tr", pair=[h, k], detail="zero not preserved")
        c(nm[Rk.one] == Rh.one, map="nm", pair=[h, k], detail="one not preserved")
        for a in range(Rk.size):
            for b in range(a, Rk.size):
                c(tr[Rk.add[a][b]] == Rh.add[tr[a]][tr[b]], map="tr", pair=[h, k], args=[a, b],
                  detail="not additive")
                c(nm[Rk.mul[a][b]] == Rh.mul[nm[a]][nm[b]], map="nm", pair=[h, k], args=[a, b],
                  detail="not multiplicative")
    for g in range(G.order):
        for h in range(t.n_sub):
            gh = G.conjugate_id(h, g)
            m = t.conj[g, h]
            v = RingHom(L[h], L[gh], m).violations()
            c(not v and sorted(m) == list(range(L[gh].size)), map="conj", pair=[g, h],
              detail=v[:1] or "not bijective")
    return c.result()


def _check_t1(t: TambaraFunctor) -> AxiomResult:
    G = t.group
    c = _Check("T1")
    subs = range(t.n_sub)
    for h in subs:
        for k in subs:
            if not G.is_sub(k, h):
                continue
            for l in subs:
                if not G.is_sub(l, k):
                    continue
                for x in range(t.levels[h].size):
                    c(t.res[k, l][t.res[h, k][x]] == t.res[h, l][x], map="res", chain=[l, k, h], x=x)
                for x in range(t.levels[l].size):
                    c(t.nm[h, k][t.nm[k, l][x]] == t.nm[h, l][x], map="nm", chain=[l, k, h], x=x)
                    c(t.tr[h, k][t.tr[k, l][x]] == t.tr[h, l][x], map="tr", chain=[l, k, h], x=x)
    for h in subs:
        for x in range(t.levels[h].size):
            c(t.conj[0, h][x] == x, map="conj", g=0, subgroup=h, x=x, detail="c_e not identity")
        for g in range(G.order):
            for k in range(G.order):
                kh = G.conjugate_id(h, k)
                gk = G.mul[g][k]
                for x in range(t.levels[h].size):
                    c(t.conj[g, kh][t.conj[k, h][x]] == t.conj[gk, h][x], map="conj",
                      g=g, h=k, subgroup=h, x=x)
    return c.result()


def _check_inner(t: TambaraFunctor) -> AxiomResult:
    G = t.group
    c = _Check("inner")
    for s in G.subgroups:
        for g in s.elements:
            for x in range(t.levels[s.id].size):
                c(t.conj[g, s.id][x] == x, g=g, subgroup=s.id, x=x)
    return c.result()


def _check_t2(t: TambaraFunctor) -> AxiomResult:
    G = t.group
    c = _Check("T2")
    for h, k in G.containment:
        for g in range(G.order):
            gh, gk = G.conjugate_id(h, g), G.conjugate_id(k, g)
            for x in range(t.levels[h].size):
                c(t.conj[g, k][t.res[h, k][x]] == t.res[gh, gk][t.conj[g, h][x]],
                  map="res", pair=[h, k], g=g, x=x)
            for x in range(t.levels[k].size):
                c(t.conj[g, h][t.nm[h, k][x]] == t.nm[gh, gk][t.conj[g, k][x]],
                  map="nm", pair=[h, k], g=g, x=x)
                c(t.conj[g, h][t.tr[h, k][x]] == t.tr[gh, gk][t.conj[g, k][x]],
                  map="tr", pair=[h, k], g=g, x=x)
    return c.result()


def _double_coset_terms(t: TambaraFunctor, h: int, l: int, k: int) -> list[tuple[int, int, int]]:
    """(gamma, gamma H gamma^-1, L cap gamma H gamma^-1) for each class of L\\K/H."""
    G = t.group
    S = G.subgroups
    dc = double_cosets(G, S[l], S[k], S[h])
    out = []
    for gamma in dc.representatives:
        gh = G.conjugate_id(h, gamma)
        out.append((gamma, gh, G.intersect_id(l, gh)))
    return out


def _check_t3_t4(t: TambaraFunctor) -> tuple[AxiomResult, AxiomResult]:
    G = t.group
    c3, c4 = _Check("T3"), _Check("T4")
    subs = range(t.n_sub)
    for k in subs:
        for h in subs:
            if not G.is_sub(h, k):
                continue
            for l in subs:
                if not G.is_sub(l, k):
                    continue
                terms = _double_coset_terms(t, h, l, k)
                RL = t.levels[l]
                for x in range(t.levels[h].size):
                    add_terms = []
                    mul_terms = []
                    for gamma, gh, m in terms:
                        y = t.res[gh, m][t.conj[gamma, h][x]]
                        add_terms.append(t.tr[l, m][y])
                        mul_terms.append(t.nm[l, m][y])
                    lhs3 = t.res[k, l][t.tr[k, h][x]]
                    c3(lhs3 == RL.sum(add_terms), H=h, L=l, K=k, x=x, lhs=lhs3, rhs=RL.sum(add_terms))
                    lhs4 = t.res[k, l][t.nm[k, h][x]]
                    c4(lhs4 == RL.prod(mul_terms), H=h, L=l, K=k, x=x, lhs=lhs4, rhs=RL.prod(mul_terms))
    return c3.result(), c4.result()


def _check_t5(t: TambaraFunctor) -> AxiomResult:
    c = _Check("T5")
    for h, k in t.group.containment:
        Rh, Rk = t.levels[h], t.levels[k]
        tr, res = t.tr[h, k], t.res[h, k]
        for x in range(Rh.size):
            rx = res[x]
            for y in range(Rk.size):
                c(tr[Rk.mul[rx][y]] == Rh.mul[x][tr[y]], pair=[h, k], x=x, y=y)
    return c.result()


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def free_orbit_reps(group: FiniteGroup) -> list[frozenset[int]]:
    """Orbit representatives of nonempty proper subsets of G under left translation."""
    n = group.order
    seen: set[frozenset[int]] = set()
    reps = []
    for r in range(1, n):
        for s in itertools.combinations(range(n), r):
            fs = frozenset(s)
            if fs in seen:
                continue
            orbit = {frozenset(group.mul[g][x] for x in fs) for g in range(n)}
            seen |= orbit
            reps.append(min(orbit, key=lambda o: sorted(o)))
    return reps


def _check_reciprocity(t: TambaraFunctor) -> AxiomResult:
    """Sum reciprocity for norms from the trivial subgroup when |G| is prime.

    N(a+b) = N(a) + N(b) + sum over free orbits of t(prod_g c_g(f(g))), where f
    runs over orbit representatives of non-constant functions G -> {a, b}.
    For C2 this is N(a+b) = N(a) + N(b) + t(a c_gamma(b)).
    """
    G = t.group
    if G.order == 1:
        return AxiomResult("T6-sum", "n/a")
    if not _is_prime(G.order):
        return AxiomResult("T6-sum", "assumed" if t.builtin else "unverified",
                           witness=None if t.builtin else {"reason": "no finite check for non-prime order"})
    e, top = 0, t.top
    Re, Rg = t.levels[e], t.levels[top]
    nm, tr = t.nm[top, e], t.tr[top, e]
    reps = free_orbit_reps(G)
    c = _Check("T6-sum")
    for a in range(Re.size):
        for b in range(Re.size):
            total = Rg.add[nm[a]][nm[b]]
            for s in reps:
                term = Re.prod(t.conj[g, e][b if g in s else a] for g in range(G.order))
                total = Rg.add[total][tr[term]]
            lhs = nm[Re.add[a][b]]
            c(lhs == total, a=a, b=b, lhs=lhs, rhs=total)
    return c.result()


def check_axioms(t: TambaraFunctor) -> AxiomReport:
    rep = AxiomReport(t.name, shape_errors=t.shape_errors())
    if rep.shape_errors:
        return rep
    rep.results.append(_check_maps(t))
    rep.results.append(_check_t1(t))
    rep.results.append(_check_inner(t))
    rep.results.append(_check_t2(t))
    r3, r4 = _check_t3_t4(t)
    rep.results.extend([r3, r4, _check_t5(t), _check_reciprocity(t)])
    return rep


# -- constructions -----------------------------------------------------------

def _require_ok(t: TambaraFunctor) -> TambaraFunctor:
    rep = check_axioms(t)
    if not rep.ok:
        first = rep.shape_errors[:1] or [f.as_dict() for f in rep.failures()[:1]]
        raise TambaraError(f"{t.name} fails the Tambara axioms: {first}")
    return t


def constant_functor(r: FiniteCommRing, g: FiniteGroup, name: str | None = None) -> TambaraFunctor:
    n = g.order
    ident = tuple(range(r.size))
    res, tr, nm = {}, {}, {}
    for h, k in g.containment:
        idx = g.index(k, h)
        res[h, k] = ident
        tr[h, k] = tuple(r.scale(idx, x) for x in ident)
        nm[h, k] = tuple(r.power(x, idx) for x in ident)
    conj = {(x, h): ident for x in range(n) for h in range(len(g.subgroups))}
    return TambaraFunctor(g, [r] * len(g.subgroups), res, tr, nm, conj,
                          name=name or f"const({r.name},{g.name})", builtin=True)


def fixed_point_functor(r: FiniteCommRing, g: FiniteGroup, action: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
                        name: str | None = None) -> TambaraFunctor:
    """Levels are the fixed subrings R^H; norms and transfers run over H/K."""
    sigma = [tuple(action[x]) for x in range(g.order)]
    for x, s in enumerate(sigma):
        if RingHom(r, r, s).violations() or sorted(s) != list(range(r.size)):
            raise TambaraError(f"action of group element {x} is not a ring automorphism")
    for a in range(g.order):
        for b in range(g.order):
            ab = g.mul[a][b]
            if any(sigma[ab][v] != sigma[a][sigma[b][v]] for v in range(r.size)):
                raise TambaraError(f"action is not a homomorphism at {(a, b)}")
    levels, emb, pos = [], [], []
    for s in g.subgroups:
        fixed = [v for v in range(r.size) if all(sigma[h][v] == v for h in s.elements)]
        ring, order = subring(r, fixed, name=f"{r.name}^{s.id}")
        levels.append(ring)
        emb.append(order)
        pos.append({v: i for i, v in enumerate(order)})
    res, tr, nm = {}, {}, {}
    for h, k in g.containment:
        reps = g.left_coset_reps(h, k)
        res[h, k] = tuple(pos[k][emb[h][i]] for i in range(levels[h].size))
        tr_t, nm_t = [], []
        for i in range(levels[k].size):
            v = emb[k][i]
            imgs = [sigma[c][v] for c in reps]
            tr_t.append(pos[h][r.sum(imgs)])
            nm_t.append(pos[h][r.prod(imgs)])
        tr[h, k], nm[h, k] = tuple(tr_t), tuple(nm_t)
    conj = {}
    for x in range(g.order):
        for s in g.subgroups:
            xs = g.conjugate_id(s.id, x)
            conj[x, s.id] = tuple(pos[xs][sigma[x][emb[s.id][i]]] for i in range(levels[s.id].size))
    t = TambaraFunctor(g, levels, res, tr, nm, conj, name=name or f"fix({r.name},{g.name})", builtin=True)
    return _require_ok(t)


def frobenius_action(field_: GaloisField, g: FiniteGroup) -> list[tuple[int, ...]]:
    """Cyclic group C_n acting by generator -> Frobenius; needs deg | n."""
    if not g.name.startswith("C"):
        raise TambaraError("frobenius action needs a cyclic built-in group")
    autos = field_.automorphisms
    if g.order % len(autos):
        raise TambaraError(f"Frobenius of {field_.name} has order {len(autos)}, not dividing {g.order}")
    return [autos[x % len(autos)] for x in range(g.order)]


def burnside_c2_mod(n: int) -> TambaraFunctor:
    """The C2 Burnside Tambara functor reduced mod odd n."""
    from .groups import builtin_group

    if n % 2 == 0 or not 3 <= n <= 15:
        raise TambaraError(f"burnside_c2_mod needs odd n with 3 <= n <= 15, got {n}")
    g = builtin_group("C2")
    base = construct_zmod(n)
    two = base.scale(2, base.one)
    top = construct_poly_quot(base, const=0, lin=two, name=f"Z/{n}[t]/(t^2-2t)")
    # a + b t has index a + n b
    res_top = tuple((x % n + 2 * (x // n)) % n for x in range(n * n))
    tr_e = tuple(n * a for a in range(n))
    nm_e = tuple(a + n * (((a * a - a) // 2) % n) for a in range(n))
    res = {(0, 0): tuple(range(n)), (1, 1): tuple(range(n * n)), (1, 0): res_top}
    tr = {(0, 0): tuple(range(n)), (1, 1): tuple(range(n * n)), (1, 0): tr_e}
    nm = {(0, 0): tuple(range(n)), (1, 1): tuple(range(n * n)), (1, 0): nm_e}
    conj = {(x, h): tuple(range([n, n * n][h])) for x in range(2) for h in range(2)}
    t = TambaraFunctor(g, [base, top], res, tr, nm, conj, name=f"burnside_c2_mod({n})", builtin=True)
    return _require_ok(t)


def zero_functor(g: FiniteGroup) -> TambaraFunctor:
    return constant_functor(construct_zmod(1), g, name=f"zero({g.name})")


def product_functor(t1: TambaraFunctor, t2: TambaraFunctor, name: str | None = None) -> TambaraFunctor:
    if t1.group is not t2.group:
        raise TambaraError("product needs functors over the same group")
    g = t1.group
    levels, pairs, pos = [], [], []
    for h in range(t1.n_sub):
        r1, r2 = t1.levels[h], t2.levels[h]
        levels.append(product_ring(r1, r2))
        pr = product_ring_pairs(r1, r2)
        pairs.append(pr)
        pos.append({p: i for i, p in enumerate(pr)})

    def lift(tables1, tables2, key, src, dst):
        return tuple(pos[dst][(tables1[key][a], tables2[key][b])] for a, b in pairs[src])

    res, tr, nm = {}, {}, {}
    for h, k in g.containment:
        res[h, k] = lift(t1.res, t2.res, (h, k), h, k)
        tr[h, k] = lift(t1.tr, t2.tr, (h, k), k, h)
        nm[h, k] = lift(t1.nm, t2.nm, (h, k), k, h)
    conj = {}
    for x in range(g.order):
        for h in range(t1.n_sub):
            conj[x, h] = lift(t1.conj, t2.conj, (x, h), h, g.conjugate_id(h, x))
    t = TambaraFunctor(g, levels, res, tr, nm, conj, name=name or f"{t1.name}x{t2.name}",
                       builtin=t1.builtin and t2.builtin)
    return _require_ok(t)


def product_projections(p: TambaraFunctor, t1: TambaraFunctor, t2: TambaraFunctor
                        ) -> tuple[TambaraMorphism, TambaraMorphism]:
    maps1, maps2 = [], []
    for h in range(p.n_sub):
        pr = product_ring_pairs(t1.levels[h], t2.levels[h])
        maps1.append(tuple(a for a, _ in pr))
        maps2.append(tuple(b for _, b in pr))
    return TambaraMorphism(p, t1, maps1), TambaraMorphism(p, t2, maps2)


def quotient_functor(t: TambaraFunctor, ideal, name: str | None = None
                     ) -> tuple[TambaraFunctor, TambaraMorphism]:
    """T/I levelwise, re-indexed by least coset members, with the projection."""
    from .ideals import validate_ideal

    levels_in = [frozenset(v) for v in getattr(ideal, "levels", ideal)]
    ok, bad = validate_ideal(t, levels_in)
    if not ok:
        raise TambaraError(f"not a Tambara ideal of {t.name}: {bad[:1]}")
    g = t.group
    levels, surj, reps = [], [], []
    for h, r in enumerate(t.levels):
        q, s = quotient_ring(r, levels_in[h], name=f"{r.name}/I")
        levels.append(q)
        surj.append(s)
        first = {}
        for x, c in enumerate(s):
            first.setdefault(c, x)
        reps.append([first[c] for c in range(q.size)])

    def induce(table, key, src, dst):
        return tuple(surj[dst][table[key][x]] for x in reps[src])

    res, tr, nm = {}, {}, {}
    for h, k in g.containment:
        res[h, k] = induce(t.res, (h, k), h, k)
        tr[h, k] = induce(t.tr, (h, k), k, h)
        nm[h, k] = induce(t.nm, (h, k), k, h)
    conj = {(x, h): induce(t.conj, (x, h), h, g.conjugate_id(h, x))
            for x in range(g.order) for h in range(t.n_sub)}
    q = TambaraFunctor(g, levels, res, tr, nm, conj, name=name or f"{t.name}/I", builtin=t.builtin)
    _require_ok(q)
    return q, TambaraMorphism(t, q, surj)


def reduction(t: TambaraFunctor) -> tuple[TambaraFunctor, TambaraMorphism]:
    from .ideals import nilradical

    return quotient_functor(t, nilradical(t), name=f"{t.name}_red")


# -- morphisms ---------------------------------------------------------------

class TambaraMorphism:
    def __init__(self, source: TambaraFunctor, target: TambaraFunctor, phi: Sequence[Sequence[int]]):
        if source.group is not target.group:
            raise TambaraError("morphism between functors over different groups")
        self.source = source
        self.target = target
        self.phi = tuple(tuple(m) for m in phi)

    def __repr__(self) -> str:
        return f"TambaraMorphism({self.source.name} -> {self.target.name})"

    def __call__(self, h: int, x: int) -> int:
        return self.phi[h][x]

    def level_hom(self, h: int) -> RingHom:
        return RingHom(self.source.levels[h], self.target.levels[h], self.phi[h])

    def violations(self) -> list[str]:
        s, t, f = self.source, self.target, self.phi
        g = s.group
        out = []
        for h in range(s.n_sub):
            v = self.level_hom(h).violations()
            if v:
                out.append(f"level {h}: {v[0]}")
        if out:
            return out
        for h, k in g.containment:
            for x in range(s.levels[h].size):
                if f[k][s.res[h, k][x]] != t.res[h, k][f[h][x]]:
                    return [f"does not commute with res{(h, k)} at {x}"]
            for x in range(s.levels[k].size):
                if f[h][s.tr[h, k][x]] != t.tr[h, k][f[k][x]]:
                    return [f"does not commute with tr{(h, k)} at {x}"]
                if f[h][s.nm[h, k][x]] != t.nm[h, k][f[k][x]]:
                    return [f"does not commute with nm{(h, k)} at {x}"]
        for x in range(g.order):
            for h in range(s.n_sub):
                xh = g.conjugate_id(h, x)
                for y in range(s.levels[h].size):
                    if f[xh][s.conj[x, h][y]] != t.conj[x, h][f[h][y]]:
                        return [f"does not commute with conj{(x, h)} at {y}"]
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def is_isomorphism(self) -> bool:
        return self.is_valid() and all(
            sorted(m) == list(range(self.target.levels[h].size)) and len(m) == self.target.levels[h].size
            for h, m in enumerate(self.phi))


def identity_morphism(t: TambaraFunctor) -> TambaraMorphism:
    return TambaraMorphism(t, t, [tuple(range(r.size)) for r in t.levels])


def compose(f: TambaraMorphism, g: TambaraMorphism) -> TambaraMorphism:
    """g after f."""
    return TambaraMorphism(f.source, g.target,
                           [tuple(g.phi[h][f.phi[h][x]] for x in range(f.source.levels[h].size))
                            for h in range(f.source.n_sub)])


def mod_map_morphism(source: TambaraFunctor, target: TambaraFunctor) -> TambaraMorphism:
    """Levelwise reduction x -> x mod m between constant functors on Z/n -> Z/m."""
    phi = []
    for rs, rt in zip(source.levels, target.levels):
        m = rt.size
        phi.append(tuple(int(rs.labels[x]) % m for x in range(rs.size)))
    mor = TambaraMorphism(source, target, phi)
    v = mor.violations()
    if v:
        raise TambaraError(f"mod-{target.levels[0].size} map is not a morphism: {v[0]}")
    return mor


def tables_isomorphic(a: TambaraFunctor, b: TambaraFunctor) -> bool:
    """Search for a levelwise ring isomorphism commuting with all structure maps.

    Candidate level bijections are ring isomorphisms; the search is small for
    the fixture sizes and stops at the first commuting family.
    """
    if a.group is not b.group or [r.size for r in a.levels] != [r.size for r in b.levels]:
        return False
    cands = [_ring_isos(ra, rb) for ra, rb in zip(a.levels, b.levels)]
    if any(not c for c in cands):
        return False
    for combo in itertools.product(*cands):
        if TambaraMorphism(a, b, combo).is_valid():
            return True
    return False


def _ring_isos(a: FiniteCommRing, b: FiniteCommRing, limit: int = 5000) -> list[tuple[int, ...]]:
    """Ring isomorphisms a -> b by backtracking on additive generators."""
    if a.size != b.size:
        return []
    n = a.size
    out: list[tuple[int, ...]] = []

    def extend(m: dict[int, int]) -> None:
        if len(out) >= limit:
            return
        # close under + and *
        changed = True
        while changed:
            changed = False
            items = list(m.items())
            for x, fx in items:
                for y, fy in items:
                    for op_a, op_b in ((a.add, b.add), (a.mul, b.mul)):
                        z, fz = op_a[x][y], op_b[fx][fy]
                        if z in m:
                            if m[z] != fz:
                                return
                        else:
                            m[z] = fz
                            changed = True
        if len(set(m.values())) != len(m):
            return
        if len(m) == n:
            out.append(tuple(m[x] for x in range(n)))
            return
        x = min(set(range(n)) - set(m))
        for y in sorted(set(range(n)) - set(m.values())):
            extend(dict(m) | {x: y})

    extend({0: 0, a.one: b.one})
    return out
