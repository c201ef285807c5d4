"""The frame of radical Tambara ideals and the Nakaoka spectrum.

Everything here is a finite scan: radical ideals are enumerated, ordered by
inclusion and packed into a :class:`FiniteFrame`; primes come from the
generalized-product criterion; topologies are generated from the basic opens
D_H(x). The ``verify_*`` functions compare the two sides and return
:class:`SpectralReport` sections with concrete witnesses on failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

from . import frames as fr
from .frames import FiniteFrame, FiniteTopSpace
from .functor import TambaraFunctor, TambaraMorphism, product_functor, quotient_functor, reduction
from .ideals import (TambaraIdeal, enumerate_ideals, generalized_product_values,
                     generate_ideal, ideal_intersection, ideal_sum, is_prime, nilradical,
                     preimage_ideal, prime_ideals, principal, radical, radical_extension)
from .rings import is_ring_prime, product_ring_pairs, ring_primes


class SpectralReport:
    """Named pass/fail sections; merging is a key-wise union."""

    def __init__(self, sections: dict[str, dict] | None = None):
        self.sections: dict[str, dict] = dict(sections or {})

    def add(self, name: str, ok: bool, witness: Any = None, **info) -> bool:
        entry = {"ok": bool(ok)}
        if not ok:
            entry["witness"] = witness if witness is not None else "unspecified"
        entry.update(info)
        self.sections[name] = entry
        return ok

    def merge(self, other: SpectralReport, prefix: str = "") -> SpectralReport:
        for k, v in other.sections.items():
            self.sections[prefix + k] = v
        return self

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.sections.values())

    def failures(self) -> dict[str, dict]:
        return {k: v for k, v in self.sections.items() if not v["ok"]}

    def __getitem__(self, name: str) -> dict:
        return self.sections[name]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "sections": {k: self.sections[k] for k in sorted(self.sections)}}

    def __repr__(self) -> str:
        bad = sorted(self.failures())
        return f"SpectralReport({len(self.sections)} sections, failures={bad})"


@dataclass
class RadIdFrame:
    functor: TambaraFunctor
    ideals: list[TambaraIdeal]
    frame: FiniteFrame
    checks: SpectralReport = field(default_factory=SpectralReport)

    def index(self, i: TambaraIdeal) -> int:
        return self._pos[i]

    @cached_property
    def _pos(self) -> dict[TambaraIdeal, int]:
        return {i: k for k, i in enumerate(self.ideals)}

    @property
    def bottom(self) -> TambaraIdeal:
        return self.ideals[self.frame.bottom]

    @property
    def top(self) -> TambaraIdeal:
        return self.ideals[self.frame.top]


@dataclass
class NakaokaSpectrum:
    functor: TambaraFunctor
    primes: list[TambaraIdeal]
    topology: FiniteTopSpace
    basic_opens: dict[tuple[int, int], frozenset[int]]

    def D(self, h: int, x: int) -> frozenset[int]:
        return self.basic_opens[h, x]

    def V(self, i: TambaraIdeal) -> frozenset[int]:
        return frozenset(k for k, p in enumerate(self.primes) if i <= p)

    def U(self, i: TambaraIdeal) -> frozenset[int]:
        return frozenset(k for k, p in enumerate(self.primes) if not i <= p)

    @cached_property
    def basis_provenance(self) -> dict[frozenset[int], list[tuple[int, int]]]:
        out: dict[frozenset[int], list[tuple[int, int]]] = {}
        for key in sorted(self.basic_opens):
            out.setdefault(self.basic_opens[key], []).append(key)
        return out


# -- construction --------------------------------------------------------------

def build_radid_frame(t: TambaraFunctor) -> RadIdFrame:
    rad = enumerate_ideals(t, radical_only=True)
    frame = FiniteFrame.from_order(rad, lambda a, b: a <= b)
    f = RadIdFrame(t, rad, frame)
    rep = f.checks
    pos = f._pos
    bad_meet = bad_join = None
    for a, b in itertools.combinations_with_replacement(range(len(rad)), 2):
        m = ideal_intersection([rad[a], rad[b]])
        if pos.get(m) != frame.meet[a][b] and bad_meet is None:
            bad_meet = [a, b]
        j = radical(ideal_sum([rad[a], rad[b]]))
        if pos.get(j) != frame.join[a][b] and bad_join is None:
            bad_join = [a, b]
    rep.add("meet_is_intersection", bad_meet is None, bad_meet)
    rep.add("join_is_radical_of_sum", bad_join is None, bad_join)
    ok, bad = fr.is_frame(frame)
    rep.add("distributive", ok, bad[:1], law="binary distributivity (finite lattice)")
    return f


def nakaoka_spectrum(t: TambaraFunctor) -> NakaokaSpectrum:
    primes = prime_ideals(t)
    basic = {}
    for h, x in t.elements():
        basic[h, x] = frozenset(k for k, p in enumerate(primes) if x not in p.levels[h])
    top = fr.topology_from_subbasis(list(range(len(primes))), basic.values())
    return NakaokaSpectrum(t, primes, top, basic)


# -- verification ----------------------------------------------------------

def frame_points_as_ideals(f: RadIdFrame) -> list[TambaraIdeal]:
    return [f.ideals[p.meet_prime_index] for p in fr.meet_primes(f.frame)]


def verify_points_primes(f: RadIdFrame, s: NakaokaSpectrum) -> SpectralReport:
    rep = SpectralReport()
    t = f.functor
    pts = fr.meet_primes(f.frame)
    as_ideals = [f.ideals[p.meet_prime_index] for p in pts]
    rep.add("points_are_primes", set(as_ideals) == set(s.primes),
            {"meet_primes": [repr(i) for i in as_ideals], "primes": [repr(p) for p in s.primes]},
            count=len(s.primes))
    # position in s.primes for each frame point
    try:
        relabel = [s.primes.index(i) for i in as_ideals]
    except ValueError:
        rep.add("topologies_agree", False, "point sets differ")
        return rep
    u_space = fr.point_space(f.frame)
    u_opens = {frozenset(relabel[i] for i in o) for o in u_space.opens}
    rep.add("topologies_agree", u_opens == set(s.topology.opens),
            {"U_opens": sorted(map(sorted, u_opens)), "D_opens": sorted(map(sorted, s.topology.opens))})

    def U(i: TambaraIdeal) -> frozenset[int]:
        a = f.index(i)
        return frozenset(relabel[k] for k in fr.basic_open(pts, a))

    bad = None
    for h, x in t.elements():
        if s.D(h, x) != U(radical(principal(t, h, x))):
            bad = [h, x]
            break
    rep.add("D_equals_U_of_radical_principal", bad is None, bad)
    bad = None
    for i in f.ideals:
        union = frozenset().union(*[s.D(h, x) for h in range(t.n_sub) for x in i.levels[h]])
        if union != U(i):
            bad = repr(i)
            break
    rep.add("U_is_union_of_D", bad is None, bad)
    for i, p in enumerate(s.primes):
        if not is_prime(p)[0]:
            rep.add("primes_pass_is_prime", False, i)
            break
    else:
        rep.add("primes_pass_is_prime", True)
    if t.group.order == 1:
        rp = {frozenset(p.members) for p in ring_primes(t.levels[0])}
        rep.add("ring_oracle", rp == {p.levels[0] for p in s.primes},
                {"ring_primes": sorted(map(sorted, rp))})
    return rep


def certify_generators(f: RadIdFrame) -> dict[int, list[tuple[int, int]]]:
    """For each radical ideal, a finite S with I = sqrt<S>, found greedily."""
    t = f.functor
    out = {}
    for k, target in enumerate(f.ideals):
        gens: list[tuple[int, int]] = []
        cur = radical(generate_ideal(t, gens))
        while cur != target:
            h, x = next((h, x) for h in range(t.n_sub)
                        for x in sorted(target.levels[h]) if x not in cur.levels[h])
            gens.append((h, x))
            cur = radical(generate_ideal(t, gens))
            if not cur <= target:
                break
        if cur == target:
            out[k] = gens
    return out


def verify_spatial_coherent_spectral(f: RadIdFrame, s: NakaokaSpectrum) -> SpectralReport:
    rep = SpectralReport()
    t = f.functor
    frame = f.frame
    ok, bad = fr.check_spatial(frame)
    rep.add("spatial", ok, bad[:1])
    io = fr.iota_report(frame)
    rep.add("iota_injective_join_meet", all(io.values()), io)
    certs = certify_generators(f)
    rep.add("radical_finitely_generated", len(certs) == len(f.ideals),
            sorted(set(range(len(f.ideals))) - set(certs)),
            generators={str(k): [list(g) for g in v] for k, v in sorted(certs.items())})
    ok, parts = fr.check_coherent(frame, certs.keys())
    rep.add("coherent", ok, parts)
    rep.add("all_compact", fr.compact_elements(frame) == set(range(frame.size)))
    # compact opens D_I for I radical f.g., closed under intersection
    compact_opens = {s.U(f.ideals[k]) for k in certs}
    rep.add("compact_opens_closed_under_intersection",
            all(a & b in compact_opens for a in compact_opens for b in compact_opens))
    sp = fr.check_spectral_space(s.topology)
    rep.add("T0", sp.t0, sp.witnesses.get("t0"))
    rep.add("quasi_compact", sp.quasi_compact)
    rep.add("compact_open_basis", sp.basis_closed_under_intersection, sp.witnesses.get("basis"))
    rep.add("sober", sp.sober, sp.witnesses.get("sober"))
    bad = None
    elems = list(t.elements())
    for a, b in itertools.combinations_with_replacement(elems, 2):
        inter = s.D(*a) & s.D(*b)
        gp = generalized_product_values(t, a, b)
        union = frozenset().union(*[s.D(l, z) for l, vals in enumerate(gp) for z in vals])
        if inter != union:
            bad = [list(a), list(b)]
            break
    rep.add("D_basis_via_generalized_products", bad is None, bad)
    # the open-set frame of the point space gives the frame back
    opens_frame = fr.opens_frame(fr.point_space(frame))
    pts = fr.meet_primes(frame)
    iso = [opens_frame.index(fr.basic_open(pts, a)) if fr.basic_open(pts, a) in opens_frame.elements else -1
           for a in range(frame.size)]
    rep.add("opens_frame_isomorphic", fr.frames_isomorphic_via(frame, opens_frame, iso))
    return rep


def non_ring_prime_levels(s: NakaokaSpectrum) -> list[tuple[int, int]]:
    """(prime index, subgroup id) where the prime's level is not a ring prime."""
    t = s.functor
    return [(k, h) for k, p in enumerate(s.primes) for h in range(t.n_sub)
            if not is_ring_prime(t.levels[h], p.levels[h])]


def levels_radical(s: NakaokaSpectrum) -> bool:
    t = s.functor
    return all(t.levels[h].radical_set(p.levels[h]) == p.levels[h]
               for p in s.primes for h in range(t.n_sub))


def full_report(t: TambaraFunctor) -> tuple[RadIdFrame, NakaokaSpectrum, SpectralReport]:
    f = build_radid_frame(t)
    s = nakaoka_spectrum(t)
    rep = SpectralReport()
    rep.merge(f.checks, "frame.")
    rep.merge(verify_points_primes(f, s), "points.")
    rep.merge(verify_spatial_coherent_spectral(f, s), "spectral.")
    return f, s, rep


# -- functoriality -----------------------------------------------------------

@dataclass
class SpectralMap:
    morphism: TambaraMorphism
    source_frame: RadIdFrame
    target_frame: RadIdFrame
    source_spectrum: NakaokaSpectrum
    target_spectrum: NakaokaSpectrum
    frame_map: list[int]     # RadId(T) index -> RadId(S) index
    point_map: list[int]     # Spec(S) index -> Spec(T) index
    report: SpectralReport

    @property
    def is_frame_isomorphism(self) -> bool:
        return fr.frames_isomorphic_via(self.source_frame.frame, self.target_frame.frame, self.frame_map)

    @property
    def is_homeomorphism(self) -> bool:
        return is_homeomorphism(self.target_spectrum.topology, self.source_spectrum.topology, self.point_map)


def is_homeomorphism(a: FiniteTopSpace, b: FiniteTopSpace, f: Sequence[int]) -> bool:
    """f: points of a -> points of b is a bijection matching the open sets."""
    if len(a.points) != len(b.points) or sorted(f) != list(range(len(b.points))):
        return False
    return {frozenset(f[x] for x in o) for o in a.opens} == set(b.opens)


def _all_subsets(n: int, limit: int = 12):
    if n <= limit:
        for r in range(n + 1):
            yield from itertools.combinations(range(n), r)
    else:
        yield ()
        yield from itertools.combinations(range(n), 1)
        yield from itertools.combinations(range(n), 2)


def spectral_map(m: TambaraMorphism) -> SpectralMap:
    T, S = m.source, m.target
    ft, fs = build_radid_frame(T), build_radid_frame(S)
    st, ss = nakaoka_spectrum(T), nakaoka_spectrum(S)
    rep = SpectralReport()
    rep.add("morphism_valid", m.is_valid(), m.violations()[:1])
    fmap = []
    for i in ft.ideals:
        img = radical_extension(m, i)
        fmap.append(fs._pos.get(img, -1))
    rep.add("extension_lands_in_radid", -1 not in fmap)
    if -1 in fmap:
        return SpectralMap(m, ft, fs, st, ss, fmap, [], rep)
    A, B = ft.frame, fs.frame
    rep.add("preserves_top", fmap[A.top] == B.top)
    bad = None
    for sub in _all_subsets(A.size):
        if fmap[A.join_all(sub)] != B.join_all(fmap[a] for a in sub):
            bad = list(sub)
            break
    rep.add("preserves_joins", bad is None, bad,
            scope="all subsets" if A.size <= 12 else "empty, singleton and binary joins")
    bad = None
    for a, b in itertools.product(range(A.size), repeat=2):
        if fmap[A.meet[a][b]] != B.meet[fmap[a]][fmap[b]]:
            bad = [a, b]
            break
    rep.add("preserves_finite_meets", bad is None, bad)
    certs_t = certify_generators(ft)
    certs_s = certify_generators(fs)
    rep.add("compact_to_compact", all(fmap[k] in certs_s for k in certs_t))
    # points: Q -> preimage(Q)
    pmap, bad = [], None
    for q in ss.primes:
        pre = preimage_ideal(m, q)
        if pre not in st.primes:
            bad = repr(q)
            pmap.append(-1)
        else:
            pmap.append(st.primes.index(pre))
    rep.add("preimage_of_prime_is_prime", bad is None, bad)
    bad = None
    for qi, q in enumerate(ss.primes):
        qidx = fs.index(q)
        below = [k for k in range(A.size) if B.leq[fmap[k]][qidx]]
        point = ft.ideals[A.join_all(below)]
        if pmap[qi] < 0 or point != st.primes[pmap[qi]]:
            bad = qi
            break
    rep.add("points_map_is_preimage", bad is None, bad)
    sp_t, sp_s = st.topology, ss.topology
    pre_open = lambda o: frozenset(k for k, v in enumerate(pmap) if v in o)
    rep.add("continuous", all(sp_s.is_open(pre_open(o)) for o in sp_t.opens))
    rep.add("spectral", all(fr.is_compact_subset(sp_s, pre_open(o)) for o in sp_t.opens
                            if fr.is_compact_subset(sp_t, o)))
    return SpectralMap(m, ft, fs, st, ss, fmap, pmap, rep)


# -- closed subspaces and connectedness ---------------------------------------------------------

def closed_immersion(t: TambaraFunctor, i: TambaraIdeal) -> SpectralReport:
    rep = SpectralReport()
    q, pi = quotient_functor(t, i)
    fq, ft = build_radid_frame(q), build_radid_frame(t)
    sq, st = nakaoka_spectrum(q), nakaoka_spectrum(t)
    root = radical(i)
    up = [k for k, j in enumerate(ft.ideals) if root <= j]
    corr = [ft._pos.get(preimage_ideal(pi, j), -1) for j in fq.ideals]
    rep.add("radid_quotient_is_upset", sorted(corr) == up, {"image": corr, "upset": up})
    rep.add("order_isomorphism", sorted(corr) == up and all(
        fq.frame.leq[a][b] == ft.frame.leq[corr[a]][corr[b]]
        for a in range(fq.frame.size) for b in range(fq.frame.size)))
    vi = sorted(st.V(i))
    pmap = []
    for p in sq.primes:
        pre = preimage_ideal(pi, p)
        pmap.append(st.primes.index(pre) if pre in st.primes else -1)
    rep.add("spec_quotient_is_V", sorted(pmap) == vi, {"image": pmap, "V": vi})
    sub = st.topology.subspace_opens(vi)
    mapped = {frozenset(pmap[k] for k in o) for o in sq.topology.opens}
    rep.add("homeomorphic_to_V", mapped == set(sub))
    return rep


@dataclass
class ConnectednessReport:
    disconnected: bool
    complemented: bool
    coprime_pair: bool
    product_decomposition: bool
    irreducible: bool
    nilradical_prime: bool
    pairs: list[dict]
    report: SpectralReport

    @property
    def four_way_consistent(self) -> bool:
        return len({self.disconnected, self.complemented, self.coprime_pair, self.product_decomposition}) == 1

    @property
    def irreducibility_consistent(self) -> bool:
        return self.irreducible == self.nilradical_prime

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "disconnected", "complemented", "coprime_pair", "product_decomposition",
            "irreducible", "nilradical_prime", "four_way_consistent",
            "irreducibility_consistent")} | {"pairs": self.pairs, "report": self.report.as_dict()}


def canonical_product_map(t: TambaraFunctor, i: TambaraIdeal, j: TambaraIdeal,
                          source: TambaraFunctor | None = None,
                          source_proj: TambaraMorphism | None = None):
    """The map T' -> (T/I) x (T/J), x -> (x mod I, x mod J), where T' is ``source``
    (a quotient of T through ``source_proj``) or T itself."""
    qi, pi = quotient_functor(t, i)
    qj, pj = quotient_functor(t, j)
    prod = product_functor(qi, qj)
    src = source or t
    phi = []
    for h in range(t.n_sub):
        pos = {p: k for k, p in enumerate(product_ring_pairs(qi.levels[h], qj.levels[h]))}
        row = [None] * src.levels[h].size
        for x in range(t.levels[h].size):
            c = source_proj.phi[h][x] if source_proj is not None else x
            v = pos[(pi.phi[h][x], pj.phi[h][x])]
            if row[c] is None:
                row[c] = v
            elif row[c] != v:
                return None, prod
        phi.append(tuple(row))
    return TambaraMorphism(src, prod, phi), prod


def crt_connectedness(t: TambaraFunctor) -> ConnectednessReport:
    f = build_radid_frame(t)
    s = nakaoka_spectrum(t)
    F = f.frame
    rep = SpectralReport()
    nil = nilradical(t)
    rep.add("bottom_is_nilradical", f.bottom == nil)
    red, pred = reduction(t)
    pairs = []
    complemented = False
    for a in range(F.size):
        for b in range(a + 1, F.size):
            if F.meet[a][b] != F.bottom or F.join[a][b] != F.top or a in (F.bottom, F.top):
                continue
            complemented = True
            I, J = f.ideals[a], f.ideals[b]
            levelwise = ideal_sum([I, J]).is_whole() and ideal_intersection([I, J]) == nil
            vi, vj = s.V(I), s.V(J)
            clopen = (s.topology.is_open(vi) and s.topology.is_closed(vi)
                      and s.topology.is_open(vj) and s.topology.is_closed(vj))
            partition = not (vi & vj) and (vi | vj) == s.topology.everything
            mor, prod = canonical_product_map(t, I, J, source=red, source_proj=pred)
            iso = mor is not None and mor.is_isomorphism()
            pairs.append({"I": a, "J": b, "levelwise_coprime": levelwise, "clopen": clopen,
                          "partition": partition, "reduction_is_product": iso,
                          "factor_sizes": [[r.size for r in quotient_functor(t, I)[0].levels],
                                           [r.size for r in quotient_functor(t, J)[0].levels]]})
            rep.add(f"pair_{a}_{b}", levelwise and clopen and partition and iso, pairs[-1])
    disconnected = not fr.is_connected(s.topology)
    # (iii) and (iv) are computed on the reduction
    rad_red = enumerate_ideals(red, radical_only=True)
    coprime = any(
        not I.is_zero() and not J.is_zero() and ideal_intersection([I, J]).is_zero()
        and ideal_sum([I, J]).is_whole()
        for I, J in itertools.combinations(rad_red, 2))
    product = False
    all_red = enumerate_ideals(red)
    for I, J in itertools.combinations(all_red, 2):
        if I.is_whole() or J.is_whole():
            continue
        mor, _ = canonical_product_map(red, I, J)
        if mor is not None and mor.is_isomorphism():
            product = True
            break
    irreducible = fr.is_irreducible(s.topology)
    nil_prime = is_prime(nil)[0]
    out = ConnectednessReport(disconnected, complemented, coprime, product, irreducible,
                              nil_prime, pairs, rep)
    rep.add("four_way_equivalence", out.four_way_consistent, {
        "disconnected": disconnected, "complemented": complemented,
        "coprime_pair": coprime, "product_decomposition": product})
    if not t.is_zero():
        rep.add("irreducible_iff_nilradical_prime", out.irreducibility_consistent,
                {"irreducible": irreducible, "nilradical_prime": nil_prime})
    return out
