import pytest

from tambara import frames as fr
from tambara.functor import (constant_functor, mod_map_morphism, product_projections,
                             quotient_functor, reduction, tables_isomorphic)
from tambara.groups import builtin_group
from tambara.ideals import enumerate_ideals, generate_ideal, principal, radical
from tambara.rings import construct_zmod
from tambara.spectrum import (SpectralReport, build_radid_frame, canonical_product_map,
                              certify_generators, closed_immersion, crt_connectedness, full_report,
                              is_homeomorphism, nakaoka_spectrum, non_ring_prime_levels, spectral_map)

import oracles
from conftest import fixtures

ALL = sorted(fixtures())


@pytest.mark.parametrize("name", ALL)
def test_full_report_passes(name):
    f, s, rep = full_report(fixtures()[name])
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("name", ALL)
def test_topology_matches_oracle(name):
    t = fixtures()[name]
    s = nakaoka_spectrum(t)
    primes = oracles.nakaoka_primes(t, oracles.tambara_ideals(t))
    assert {p.levels for p in s.primes} == set(primes)
    subbasis = [{k for k, p in enumerate(s.primes) if x not in p.levels[h]} for h, x in t.elements()]
    assert set(s.topology.opens) == oracles.topology_closure(range(len(s.primes)), subbasis)
    assert oracles.is_sober(s.topology.opens, s.topology.points)


def test_z6_spectrum_is_discrete_two_points():
    s = nakaoka_spectrum(fixtures()["z6-c2"])
    assert len(s.primes) == 2
    assert len(s.topology.opens) == 4
    assert len(build_radid_frame(fixtures()["z6-c2"]).ideals) == 4


def test_z4_spectrum_single_point_irreducible():
    t = fixtures()["z4-c2"]
    s = nakaoka_spectrum(t)
    assert len(s.primes) == 1
    c = crt_connectedness(t)
    assert c.irreducible and c.nilradical_prime


@pytest.mark.parametrize("name", ALL)
def test_generator_certificates(name):
    f = build_radid_frame(fixtures()[name])
    certs = certify_generators(f)
    assert set(certs) == set(range(len(f.ideals)))
    for k, gens in certs.items():
        assert radical(generate_ideal(f.functor, gens)) == f.ideals[k]


def test_basic_opens_from_principal_radicals():
    t = fixtures()["burnside9"]
    s = nakaoka_spectrum(t)
    for h, x in t.elements():
        assert s.D(h, x) == s.U(radical(principal(t, h, x)))
    assert s.basis_provenance


def _morphisms():
    fx = fixtures()
    p = fx["f2xf3-c2"]
    pr1, pr2 = product_projections(p, fx["f2-c2"], fx["f3-c2"])
    z6 = fx["z6-c2"]
    out = {"z4-reduction": reduction(fx["z4-c2"])[1], "b9-reduction": reduction(fx["burnside9"])[1],
           "z6-mod2": mod_map_morphism(z6, fx["f2-c2"]), "pr1": pr1, "pr2": pr2}
    for k, i in enumerate(enumerate_ideals(z6)):
        out[f"z6-quotient{k}"] = quotient_functor(z6, i)[1]
    return out


@pytest.mark.parametrize("key", sorted(_morphisms()))
def test_spectral_maps(key):
    sm = spectral_map(_morphisms()[key])
    assert sm.report.ok, sm.report.failures()


def test_reduction_is_homeomorphism():
    for key in ("z4-reduction", "b9-reduction"):
        sm = spectral_map(_morphisms()[key])
        assert sm.is_frame_isomorphism and sm.is_homeomorphism
    assert not spectral_map(_morphisms()["pr1"]).is_homeomorphism


@pytest.mark.parametrize("name", ["z6-c2", "burnside9", "f2-s3", "z12-trivial"])
def test_closed_immersions(name):
    t = fixtures()[name]
    for i in enumerate_ideals(t):
        rep = closed_immersion(t, i)
        assert rep.ok, rep.failures()


def test_crt_decomposition_of_z6():
    t = fixtures()["z6-c2"]
    c = crt_connectedness(t)
    assert c.disconnected and c.complemented and c.coprime_pair and c.product_decomposition
    assert len(c.pairs) == 1
    pair = c.pairs[0]
    assert pair["clopen"] and pair["partition"] and pair["reduction_is_product"]
    f = build_radid_frame(t)
    i, j = f.ideals[pair["I"]], f.ideals[pair["J"]]
    shapes = {tuple(r.size for r in quotient_functor(t, k)[0].levels) for k in (i, j)}
    assert shapes == {(2, 2), (3, 3)}
    c2 = builtin_group("C2")
    quotients = [quotient_functor(t, k)[0] for k in (i, j)]
    targets = [constant_functor(construct_zmod(n), c2) for n in (2, 3)]
    assert any(tables_isomorphic(quotients[0], a) and tables_isomorphic(quotients[1], b)
               for a, b in (targets, targets[::-1]))
    mor, prod = canonical_product_map(t, i, j)
    assert mor.is_isomorphism()


@pytest.mark.parametrize("name", ALL)
def test_connectedness_equivalences(name):
    c = crt_connectedness(fixtures()[name])
    assert c.four_way_consistent, c.as_dict()
    assert c.irreducibility_consistent
    disconnected = name in {"z6-c2", "f2xf3-c2", "z6-trivial", "z12-trivial"}
    assert c.disconnected is disconnected


def test_prime_with_non_prime_level():
    s = nakaoka_spectrum(fixtures()["burnside3"])
    bad = non_ring_prime_levels(s)
    assert bad == [(0, 1)]
    assert s.primes[0].is_zero()


def test_spectral_report_structure():
    r = SpectralReport()
    r.add("a", True)
    r.add("b", False, [1, 2])
    assert not r.ok and set(r.failures()) == {"b"}
    assert r.as_dict()["sections"]["b"]["witness"] == [1, 2]
    r2 = SpectralReport().merge(r, "x.")
    assert set(r2.sections) == {"x.a", "x.b"}


def test_is_homeomorphism_helper():
    a = fr.topology_from_subbasis(range(2), [{0}])
    b = fr.topology_from_subbasis(range(2), [{1}])
    assert is_homeomorphism(a, b, [1, 0])
    assert not is_homeomorphism(a, b, [0, 1])
