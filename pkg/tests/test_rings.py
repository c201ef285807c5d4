import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from tambara.frames import check_spatial, meet_primes
from tambara.rings import (FiniteCommRing, RingError, RingHom, RingIdeal, construct_gf,
                           construct_poly_quot, construct_zmod, enumerate_ring_ideals, is_ring_prime,
                           parse_relation, principal_ideal, product_ring, product_ring_pairs,
                           quotient_ring, ring_ideal_intersect, ring_ideal_product, ring_ideal_sum,
                           ring_primes, ring_radical, ring_zariski_frame, subring)

import oracles

SMALL = [construct_zmod(n) for n in (1, 2, 4, 6, 8, 9, 12)] + [construct_gf(q) for q in (4, 8, 9)] + [
    construct_poly_quot(construct_zmod(2), 0, 0), construct_poly_quot(construct_zmod(3), 0, 2)]


def _id(r):
    return r.name


@pytest.mark.parametrize("r", SMALL, ids=_id)
def test_ideals_match_subset_scan(r):
    assert set(r.ideals) == oracles.ring_ideals(r)


@pytest.mark.parametrize("r", SMALL, ids=_id)
def test_radicals_and_primes_match_brute_force(r):
    for i in r.ideals:
        assert r.radical_set(i) == oracles.ring_radical(r, i)
        assert is_ring_prime(r, i) == oracles.ring_is_prime(r, i)


@pytest.mark.parametrize("n,primes", [(4, 1), (6, 2), (12, 2), (8, 1), (9, 1), (2, 1), (1, 0)])
def test_prime_counts_zmod(n, primes):
    assert len(ring_primes(construct_zmod(n))) == primes


def test_zmod_ideals_are_divisor_ideals():
    r = construct_zmod(12)
    expected = {frozenset(range(0, 12, d)) for d in (1, 2, 3, 4, 6, 12)}
    assert set(r.ideals) == expected


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_galois_fields_are_fields(q):
    f = construct_gf(q)
    assert f.size == q
    for x in range(1, q):
        assert any(f.mul[x][y] == f.one for y in range(q))
    assert len(f.ideals) == 2
    fr = f.frobenius
    assert RingHom(f, f, fr).is_valid() and sorted(fr) == list(range(q))
    assert len(f.automorphisms) == f.degree
    last = f.automorphisms[-1]
    assert tuple(fr[x] for x in last) == tuple(range(q))


def test_gf4_fixed_subfield_of_frobenius():
    f = construct_gf(4)
    fixed = [x for x in range(4) if f.frobenius[x] == x]
    assert fixed == [0, 1]
    sub, emb = subring(f, fixed)
    assert sub.size == 2 and emb == (0, 1)


def test_unsupported_sizes():
    for bad in (lambda: construct_zmod(0), lambda: construct_zmod(65), lambda: construct_gf(6),
                lambda: construct_poly_quot(construct_zmod(17))):
        with pytest.raises(RingError):
            bad()


def test_validation_rejects_bad_tables_with_witness():
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]  # 2*2 should be 1
    with pytest.raises(RingError, match="witness triple"):
        FiniteCommRing(add, mul)
    with pytest.raises(RingError):
        FiniteCommRing(add, [[0, 0, 0], [0, 1, 2], [0, 1, 1]])  # not commutative


def test_poly_quot_relation_parsing():
    z4 = construct_zmod(4)
    assert parse_relation(z4, "t2=2t") == (0, 2)
    assert parse_relation(z4, "t^2 = 1 + t") == (1, 1)
    r = construct_poly_quot(z4, *parse_relation(z4, "t2=2t"))
    t = 4  # index of t
    assert r.mul[t][t] == 2 * 4  # 2t
    with pytest.raises(RingError):
        parse_relation(z4, "t3=1")


def test_quotient_and_product():
    r = construct_zmod(12)
    i = frozenset(range(0, 12, 4))
    q, s = quotient_ring(r, i)
    assert q.size == 4
    assert RingHom(r, q, s).is_valid()
    assert all((s[x] == s[y]) == ((x - y) % 4 == 0) for x in range(12) for y in range(12))
    p = product_ring(construct_zmod(2), construct_zmod(3))
    pairs = product_ring_pairs(construct_zmod(2), construct_zmod(3))
    assert p.size == 6 and pairs[0] == (0, 0) and pairs[1] == (1, 1)
    for a, b in itertools.product(range(6), repeat=2):
        (x1, y1), (x2, y2) = pairs[a], pairs[b]
        assert pairs[p.mul[a][b]] == ((x1 * x2) % 2, (y1 * y2) % 3)
    with pytest.raises(RingError):
        quotient_ring(r, frozenset({0, 5}))


def test_ring_ideal_operations_reject_mixed_rings():
    a, b = construct_zmod(4), construct_zmod(6)
    with pytest.raises(RingError):
        ring_ideal_sum(principal_ideal(a, 2), principal_ideal(b, 2))
    with pytest.raises(RingError):
        RingIdeal(a, frozenset({0, 1}))


@pytest.mark.parametrize("n", [4, 6, 12])
def test_zariski_frame_points_are_primes(n):
    r = construct_zmod(n)
    f = ring_zariski_frame(r)
    pts = {f.elements[p.meet_prime_index].members for p in meet_primes(f)}
    assert pts == {p.members for p in ring_primes(r)}
    assert check_spatial(f)[0]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8, 9, 12, 18, 24, 30, 36]), st.data())
def test_radical_of_product_is_meet_of_radicals(n, data):
    r = construct_zmod(n)
    ideals = enumerate_ring_ideals(r)
    i, j = data.draw(st.sampled_from(ideals)), data.draw(st.sampled_from(ideals))
    ij = ring_ideal_product(i, j)
    assert ij <= ring_ideal_intersect(i, j)
    assert ring_radical(ij) == ring_ideal_intersect(ring_radical(i), ring_radical(j))
    gen = lambda k: min((x for x in k.members if x), default=n)
    assert ring_ideal_sum(i, j).members == frozenset(range(0, n, math.gcd(gen(i), gen(j))))
