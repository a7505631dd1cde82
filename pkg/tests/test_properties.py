"""Structural invariants as hypothesis properties.

Structured values are drawn from the library's seeded generators, with the
seed and the space chosen by hypothesis, so failures shrink to a replayable
(seed, space) pair.
"""
import random

from hypothesis import given, settings, strategies as st

from htgroups import Space
from htgroups import formats as F
from htgroups.clopen import complement, intersection, is_subset, random_clopen, type_of, union
from htgroups.constructions import (
    abelianize,
    attracting_element,
    hnn_data,
    hnn_decompose,
    random_fix_element,
    same_type_homeo,
)
from htgroups.element import (
    commutator,
    compose,
    evaluate,
    identity_locus,
    image_clopen,
    invert,
    parity,
    random_element,
)
from htgroups.germs import germ_exponent, in_fix, random_rational_set
from htgroups.testkit import germ_by_iteration, leaf_parity, expand_pair, pointwise_equal
from htgroups.words import random_point

spaces = st.builds(Space, st.integers(2, 5), st.integers(1, 3))
odd_spaces = st.builds(Space, st.sampled_from([3, 5]), st.integers(1, 3))
seeds = st.integers(0, 2**32 - 1)


@given(spaces, seeds)
def test_element_action(space, seed):
    rng = random.Random(seed)
    g, h = random_element(space, 3, rng), random_element(space, 3, rng)
    p = random_point(space, rng)
    assert evaluate(compose(g, h), p) == evaluate(g, evaluate(h, p))
    assert evaluate(invert(g), evaluate(g, p)) == p
    assert pointwise_equal(compose(g, h), compose(g, h))


@given(spaces, seeds)
def test_type_is_additive_and_preserved(space, seed):
    rng = random.Random(seed)
    E, G = random_clopen(space, rng), random_clopen(space, rng)
    m = space.modulus
    assert (type_of(union(E, G)) + type_of(intersection(E, G))) % m == (type_of(E) + type_of(G)) % m
    g = random_element(space, 3, rng)
    assert type_of(image_clopen(g, E)) == type_of(E)
    assert (type_of(E) + type_of(complement(E))) % m == space.r % m


@given(odd_spaces, seeds, st.integers(0, 4))
def test_parity_well_defined(space, seed, expansions):
    rng = random.Random(seed)
    g, h = random_element(space, 3, rng), random_element(space, 3, rng)
    raw = list(g.pairs)
    for _ in range(expansions):
        raw = expand_pair(raw, rng.randrange(len(raw)), space.n)
    assert leaf_parity(raw, space.n) == parity(g)
    assert parity(compose(g, h)) == (parity(g) + parity(h)) % 2


@given(spaces, seeds)
def test_germ_laws(space, seed):
    rng = random.Random(seed)
    S = random_rational_set(space, rng, rng.randint(1, 3))
    a, b = random_fix_element(S, rng), random_fix_element(S, rng)
    for s in S:
        assert germ_exponent(compose(a, b), s) == germ_exponent(a, s) + germ_exponent(b, s)
        assert germ_exponent(invert(a), s) == -germ_exponent(a, s)
        assert germ_exponent(compose(b, compose(a, invert(b))), s) == germ_exponent(a, s)
        assert (germ_exponent(a, s) == 0) == (s in identity_locus(a))
        assert germ_by_iteration(a, s) == germ_exponent(a, s)


@given(spaces, seeds)
def test_abelianization_kills_commutators(space, seed):
    rng = random.Random(seed)
    S = random_rational_set(space, rng, rng.randint(1, 3))
    a, b = random_fix_element(S, rng), random_fix_element(S, rng)
    assert abelianize(S, compose(a, b)) == abelianize(S, a) + abelianize(S, b)
    assert abelianize(S, commutator(a, b)).is_zero()


@settings(max_examples=50)
@given(spaces, seeds, st.integers(1, 4))
def test_hnn_round_trip(space, seed, q):
    rng = random.Random(seed)
    S = random_rational_set(space, rng, rng.randint(1, 3))
    s = S.points[rng.randrange(len(S))]
    H = hnn_data(S, s, q)
    g = random_fix_element(S, rng)
    i, j, h = hnn_decompose(H, g)
    assert is_subset(H.T, identity_locus(h))
    assert compose(H.f ** (i + j), compose(h, H.f ** -j)) == g
    assert in_fix(attracting_element(S, s), S)


@given(spaces, seeds)
def test_same_type_maps(space, seed):
    rng = random.Random(seed)
    E, E2 = random_clopen(space, rng), random_clopen(Space(space.n, rng.randint(1, 3)), rng)
    if E and E2 and type_of(E) == type_of(E2):
        h = same_type_homeo(E, E2)
        assert h.domain() == E and h.image() == E2


@given(spaces, seeds)
def test_text_round_trip(space, seed):
    rng = random.Random(seed)
    g = random_element(space, 4, rng)
    assert F.parse_element(F.format_element(g)) == g
    S = random_rational_set(space, rng, 3)
    assert F.parse_rational_set(F.format_rational_set(S), space) == S
