import itertools
from functools import lru_cache

import pytest

from tambara.ideals import (enumerate_ideals, generalized_products, generate_ideal, ideal_intersection,
                            ideal_power, ideal_product, ideal_sum, is_prime, is_radical, kernel,
                            make_ideal, multiplicative_translates, nilradical, preimage_ideal,
                            prime_ideals, prime_ideals_slow, principal, product_generators,
                            pushforward_ideal, q_predicate, radical, radical_by_definition,
                            radical_by_primes, validate_ideal, whole_ideal, zero_ideal)
from tambara.functor import mod_map_morphism, quotient_functor

import oracles
from conftest import fixtures

ALL = sorted(fixtures())


@lru_cache(maxsize=None)
def brute(name):
    t = fixtures()[name]
    return t, oracles.tambara_ideals(t)


@pytest.mark.parametrize("name", ALL)
def test_enumeration_matches_tuple_filter(name):
    t, ideals = brute(name)
    assert {i.levels for i in enumerate_ideals(t)} == set(ideals)
    rad = {i.levels for i in enumerate_ideals(t, radical_only=True)}
    assert rad == {i for i in ideals if all(oracles.ring_radical(r, l) == l for r, l in zip(t.levels, i))}


@pytest.mark.parametrize("name,counts", [
    ("z6-c2", (4, 4, 2)), ("z4-c2", (4, 2, 1)), ("f2-c2", (2, 2, 1)), ("gf4-c2", (2, 2, 1)),
    ("burnside3", (3, 3, 2)), ("burnside9", (6, 3, 2)), ("f2xf3-c2", (4, 4, 2)),
    ("z9-c3", (4, 2, 1)), ("f2-s3", (2, 2, 1)), ("z12-trivial", (6, 4, 2))])
def test_counts(name, counts):
    t = fixtures()[name]
    assert (len(enumerate_ideals(t)), len(enumerate_ideals(t, True)), len(prime_ideals(t))) == counts


@pytest.mark.parametrize("name", ALL)
def test_principal_ideals_match_smallest_containing(name):
    t, ideals = brute(name)
    for h, x in t.elements():
        assert principal(t, h, x).levels == oracles.generated(t, ideals, [(h, x)])


@pytest.mark.parametrize("name", ["z6-c2", "z4-c2", "burnside3", "f2xf3-c2", "z9-c3", "f2-s3"])
def test_products_match_oracle(name):
    t, ideals = brute(name)
    objs = enumerate_ideals(t)
    for i, j in itertools.product(objs, repeat=2):
        ij = ideal_product(i, j)
        assert ij.levels == oracles.product(t, ideals, i.levels, j.levels)
        assert ij == ideal_product(j, i)
        assert ij <= ideal_intersection([i, j])


@pytest.mark.parametrize("name", ALL)
def test_primes_match_ideal_pair_definition(name):
    t, ideals = brute(name)
    fast = {p.levels for p in prime_ideals(t)}
    assert fast == set(oracles.nakaoka_primes(t, ideals))
    assert fast == {p.levels for p in prime_ideals_slow(t)}


@pytest.mark.parametrize("name", ["z6-c2", "z4-c2", "burnside3", "burnside9", "z9-c3", "f2xf3-c2"])
def test_radical_three_ways_and_oracle(name):
    t, ideals = brute(name)
    primes = prime_ideals(t)
    for i in enumerate_ideals(t):
        r = radical(i)
        assert r == radical_by_definition(i) == radical_by_primes(i, primes)
        assert r.levels == oracles.nakaoka_radical(t, ideals, i.levels)
        assert is_radical(r)


def test_nilradicals():
    fx = fixtures()
    assert nilradical(fx["z6-c2"]).is_zero()
    assert nilradical(fx["z4-c2"]).levels == (frozenset({0, 2}), frozenset({0, 2}))
    assert nilradical(fx["burnside9"]).levels[0] == frozenset({0, 3, 6})


@pytest.mark.parametrize("name", ["z6-c2", "burnside3"])
def test_generalized_products_generate_products(name):
    t = fixtures()[name]
    elems = list(t.elements())
    for a, b in itertools.product(elems, repeat=2):
        lhs = ideal_product(principal(t, *a), principal(t, *b))
        assert lhs == generate_ideal(t, product_generators([a], [b], t))


def test_generalized_product_records_recompute():
    t = fixtures()["burnside9"]
    gps = generalized_products(t, (0, 2), (1, 4))
    assert gps
    for g in gps:
        assert g.recompute(t) == g.value
    assert multiplicative_translates(t, (0, 2), 1) == {t.norm(1, 0, 2)}


def test_q_predicate_and_prime_witness():
    t = fixtures()["z4-c2"]
    zero = zero_ideal(t)
    # every generalized product of 2 with itself vanishes, so Q(2, 2) holds
    assert q_predicate(zero, (1, 2), (1, 2)) == (True, None)
    ok, gp = q_predicate(zero, (1, 1), (1, 1))
    assert not ok and gp.value not in zero.levels[gp.level]
    ok, pair = is_prime(zero)
    assert not ok and pair is not None
    assert is_prime(nilradical(t))[0]
    assert not is_prime(whole_ideal(t))[0]


def test_validate_reports_rule():
    t = fixtures()["z6-c2"]
    ok, bad = validate_ideal(t, [{0, 3}, {0}])
    assert not ok and bad[0]["rule"] in ("I2", "I3", "I4")
    ok, bad = validate_ideal(t, [{0, 1}, {0}])
    assert not ok and bad[0]["rule"] == "I1"
    with pytest.raises(ValueError):
        make_ideal(t, [{0, 3}, {0}])


@pytest.mark.parametrize("name", ["z6-c2", "burnside9", "f2-s3"])
def test_lattice_operations(name):
    t = fixtures()[name]
    objs = enumerate_ideals(t)
    for i, j in itertools.product(objs, repeat=2):
        s, m = ideal_sum([i, j]), ideal_intersection([i, j])
        assert i <= s and j <= s and m <= i and m <= j
        assert s in objs and m in objs
        assert radical(ideal_product(i, j)) == ideal_intersection([radical(i), radical(j)])
    i = objs[len(objs) // 2]
    assert ideal_power(i, 1) == i and ideal_power(i, 3) <= i


def test_preimage_pushforward_kernel():
    fx = fixtures()
    m = mod_map_morphism(fx["z6-c2"], fx["f2-c2"])
    assert kernel(m).levels == (frozenset({0, 2, 4}),) * 2
    for j in enumerate_ideals(fx["f2-c2"]):
        pre = preimage_ideal(m, j)
        assert pre in enumerate_ideals(fx["z6-c2"])
        assert pushforward_ideal(m, pre) == j
    q, pi = quotient_functor(fx["z6-c2"], principal(fx["z6-c2"], 1, 3))
    assert kernel(pi) == principal(fx["z6-c2"], 1, 3)
