import random

import pytest

from htgroups.clopen import (
    complement,
    cone,
    difference,
    intersection,
    is_disjoint,
    is_subset,
    normalize,
    parse_clopen,
    format_clopen,
    random_clopen,
    split_into,
    subdivide,
    type_of,
    union,
    whole,
    empty,
)
from htgroups.errors import DomainError, ParseError
from htgroups.words import Space, random_point

V21, V31 = Space(2, 1), Space(3, 1)


def test_normalize_examples(rng):
    assert normalize(V21, [(1, 1), (1, 1, 2)]).cones == ((1, 1),)
    assert normalize(V21, [(1, 1), (1, 2)]).cones == ((1,),)
    E = normalize(V21, [(1, 1, 1), (1, 1, 2), (1, 2)])
    assert E.cones == ((1,),)
    for _ in range(100):
        assert random_point(V21, rng) in E


def test_normalize_invariants(rng):
    for space in (V21, V31, Space(4, 2)):
        for _ in range(50):
            E = random_clopen(space, rng)
            cs = E.cones
            assert list(cs) == sorted(cs)
            assert not any(a != b and b[: len(a)] == a for a in cs for b in cs)
            assert not any(all(a[:-1] + (c,) in cs for c in range(1, space.n + 1)) for a in cs if len(a) > 1)
            assert normalize(space, cs) == E


def test_boolean_examples():
    E = normalize(V31, [(1, 2, 3), (1, 1)])
    assert union(E, complement(E)) == whole(V31)
    assert intersection(cone(V21, (1, 1)), cone(V21, (1, 1, 2))).cones == ((1, 1, 2),)
    assert difference(cone(V31, (1,)), cone(V31, (1, 2))).cones == ((1, 1), (1, 3))
    assert complement(whole(V21)) == empty(V21)
    assert is_disjoint(E, complement(E)) and is_subset(E, whole(V31))


def test_boolean_ops_pointwise(rng):
    for space in (V21, V31, Space(3, 2)):
        for _ in range(10):
            E, F = random_clopen(space, rng), random_clopen(space, rng)
            for _ in range(200):
                p = random_point(space, rng)
                assert (p in (E | F)) == (p in E or p in F)
                assert (p in (E & F)) == (p in E and p in F)
                assert (p in (E - F)) == (p in E and p not in F)
                assert (p in complement(E)) == (p not in E)
            assert is_subset(E & F, E) and is_subset(E, E | F)


def test_type_examples():
    for n in (2, 3, 4, 5):
        for r in (1, 2, 3):
            space = Space(n, r)
            assert type_of(cone(space, (1, 1))) == 1 % space.modulus
            assert type_of(whole(space)) == r % space.modulus
    assert {type_of(random_clopen(V21, random.Random(i))) for i in range(20)} == {0}
    assert type_of(empty(V31)) == 0


def test_split_into():
    assert split_into(cone(V21, (1, 1)), 1) == [(1, 1)]
    assert split_into(whole(V21), 3) == [(1, 1), (1, 2, 1), (1, 2, 2)]
    with pytest.raises(DomainError):
        split_into(normalize(V31, [(1, 1), (1, 2)]), 1)
    with pytest.raises(DomainError):
        split_into(whole(V31), 2)  # wrong residue mod 2
    parts = split_into(normalize(V31, [(1, 1), (1, 2)]), 6)
    assert len(parts) == 6 and normalize(V31, parts) == normalize(V31, [(1, 1), (1, 2)])


def test_type_presentation_independent(rng):
    for space in (V31, Space(4, 2), Space(5, 1)):
        for _ in range(30):
            E = random_clopen(space, rng)
            raw = subdivide(E, rng, 5)
            assert normalize(space, raw) == E
            assert len(raw) % space.modulus == type_of(E)


def test_text_round_trip(rng):
    for _ in range(50):
        E = random_clopen(Space(3, 2), rng)
        assert parse_clopen(format_clopen(E), Space(3, 2)) == E
    assert format_clopen(normalize(V21, [(1, 1), (1, 2, 1)])) == "{1:1, 1:2.1}"
    assert parse_clopen("{}", V21) == empty(V21)
    with pytest.raises(ParseError):
        parse_clopen("1:1", V21)
