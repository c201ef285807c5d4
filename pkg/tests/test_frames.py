import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tambara import frames as fr
from tambara.frames import FiniteFrame, FiniteTopSpace, FrameError

import oracles


def _lattices():
    return {"chain3": fr.chain(3), "chain5": fr.chain(5), "bool2": fr.powerset(2),
            "bool3": fr.powerset(3), "M3": fr.diamond_m3(), "N5": fr.pentagon_n5()}


@pytest.mark.parametrize("name,dist", [("chain3", True), ("chain5", True), ("bool2", True),
                                       ("bool3", True), ("M3", False), ("N5", False)])
def test_distributivity_scan(name, dist):
    l = _lattices()[name]
    ok, bad = fr.is_frame(l)
    assert ok is dist
    brute = all(l.meet[a][l.join[b][c]] == l.join[l.meet[a][b]][l.meet[a][c]]
                for a, b, c in itertools.product(range(l.size), repeat=3))
    assert ok == brute
    if not ok:
        a, b, c = bad[0]
        assert l.meet[a][l.join[b][c]] != l.join[l.meet[a][b]][l.meet[a][c]]


@pytest.mark.parametrize("name", ["chain3", "chain5", "bool2", "bool3"])
def test_meet_primes_are_meet_irreducibles(name):
    l = _lattices()[name]
    assert {p.meet_prime_index for p in fr.meet_primes(l)} == oracles.meet_irreducibles(l.leq)


@pytest.mark.parametrize("name,points", [("chain3", 2), ("chain5", 4), ("bool2", 2), ("bool3", 3)])
def test_point_counts_and_spatiality(name, points):
    l = _lattices()[name]
    assert len(fr.meet_primes(l)) == points
    assert fr.check_spatial(l)[0]
    assert all(fr.iota_report(l).values())
    ok, parts = fr.check_coherent(l, range(l.size))
    assert ok, parts


def test_non_distributive_is_not_spatial():
    ok, bad = fr.check_spatial(fr.diamond_m3())
    assert not ok and bad


def test_points_are_two_valued_homomorphisms():
    l = fr.powerset(3)
    for p in fr.meet_primes(l):
        for a, b in itertools.product(range(l.size), repeat=2):
            assert p(l.meet[a][b]) == min(p(a), p(b))
            assert p(l.join[a][b]) == max(p(a), p(b))
        assert p(l.top) == 1 and p(l.bottom) == 0


def test_non_lattice_rejected():
    # two incomparable maximal elements: no join
    with pytest.raises(FrameError):
        FiniteFrame(["0", "a", "b"], [[1, 1, 1], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(FrameError):
        FiniteFrame(["a", "b"], [[1, 1], [1, 1]])


def test_point_space_opens_frame_isomorphic():
    l = fr.powerset(3)
    s = fr.point_space(l)
    o = fr.opens_frame(s)
    pts = fr.meet_primes(l)
    f = [o.elements.index(fr.basic_open(pts, a)) for a in range(l.size)]
    assert fr.frames_isomorphic_via(l, o, f)


def test_subbasis_topology_matches_closure_oracle():
    subs = [{0}, {1, 2}, {2, 3}]
    s = fr.topology_from_subbasis(range(4), subs)
    assert set(s.opens) == oracles.topology_closure(range(4), subs)
    assert fr.validate_topology(s) == []


def test_spectral_checks_on_small_spaces():
    sierpinski = FiniteTopSpace((0, 1), (frozenset(), frozenset({1}), frozenset({0, 1})))
    rep = fr.check_spectral_space(sierpinski)
    assert rep.spectral
    indiscrete = FiniteTopSpace((0, 1), (frozenset(), frozenset({0, 1})))
    rep = fr.check_spectral_space(indiscrete)
    assert not rep.t0 and not rep.sober
    assert oracles.is_sober(indiscrete.opens, indiscrete.points) is False
    assert fr.is_irreducible(indiscrete) and fr.is_connected(indiscrete)
    discrete = fr.topology_from_subbasis(range(2), [{0}, {1}])
    assert not fr.is_irreducible(discrete) and not fr.is_connected(discrete)
    assert len(fr.clopen_sets(discrete)) == 4


def test_closure_and_subspace():
    s = fr.topology_from_subbasis(range(3), [{0}, {0, 1}])
    assert s.closure({0}) == {0, 1, 2}
    assert s.closure({2}) == {2}
    assert s.is_closed({1, 2}) and not s.is_open({1, 2})
    assert s.subspace_opens({1, 2}) == {frozenset(), frozenset({1}), frozenset({1, 2})}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 4)), max_size=5))
def test_random_finite_t0_spaces_are_spectral(subbasis):
    s = fr.topology_from_subbasis(range(5), subbasis)
    assert set(s.opens) == oracles.topology_closure(range(5), subbasis)
    rep = fr.check_spectral_space(s)
    t0 = all(any((x in u) != (y in u) for u in s.opens) for x, y in itertools.combinations(range(5), 2))
    assert rep.t0 == t0
    assert rep.sober == oracles.is_sober(s.opens, s.points)
    # finite T0 spaces are sober
    if t0:
        assert rep.spectral
