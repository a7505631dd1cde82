import dataclasses
import random

import pytest

from htgroups import RationalSet, Space, canonical_point
from htgroups.clopen import complement, cone, normalize, random_clopen, type_of, whole
from htgroups.constructions import (
    AbelImage,
    abelianize,
    attracting_all,
    attracting_cone,
    attracting_element,
    check_hnn,
    fix_clopen_iso,
    hnn_data,
    hnn_decompose,
    in_commutator,
    order_two_element,
    random_fix0_element,
    random_fix_element,
    random_supported,
    same_type_homeo,
    verify_hnn_criterion,
)
from htgroups.element import (
    commutator,
    compose,
    evaluate,
    identity,
    identity_locus,
    image_clopen,
    invert,
    make_element,
    parity,
    power,
    random_element,
)
from htgroups.errors import DomainError, PreconditionError, TypeMismatchError
from htgroups.germs import germ_exponent, germ_tuple, in_fix, in_fix0, random_rational_set
from htgroups.words import random_point

from conftest import ONE, TWO, V21

V31 = Space(3, 1)
MIXED = [Space(2, 1), Space(2, 3), Space(3, 1), Space(3, 2), Space(4, 2)]


def _check_bijection(h, E, E2, rng, samples=100):
    assert h.domain() == E and h.image() == E2
    for _ in range(samples):
        p = random_point(E.space, rng)
        if p in E:
            q = evaluate(h, p)
            assert q in E2 and evaluate(h.inverse(), q) == p


def test_same_type_examples(rng):
    C = cone(V21, (1, 1))
    assert same_type_homeo(C, C).pairs == (((1, 1), (1, 1)),)
    h = same_type_homeo(C, whole(V21))
    _check_bijection(h, C, whole(V21), rng)
    with pytest.raises(TypeMismatchError):
        same_type_homeo(cone(V31, (1, 1)), normalize(V31, [(1, 1), (1, 2)]))
    with pytest.raises(DomainError):
        same_type_homeo(normalize(V21, []), C)


def test_same_type_cross_space(rng):
    for n in (3, 4):
        for _ in range(20):
            E = random_clopen(Space(n, 2), rng)
            E2 = random_clopen(Space(n, 3), rng)
            if E and E2 and type_of(E) == type_of(E2):
                _check_bijection(same_type_homeo(E, E2), E, E2, rng, 30)


def test_fix_clopen_iso(rng):
    for space in MIXED:
        for _ in range(5):
            E = random_clopen(space, rng)
            if not E or not complement(E):
                continue
            iso = fix_clopen_iso(E)
            assert 1 <= iso.q <= max(1, space.n - 1)
            assert iso.q % space.modulus == type_of(E)
            assert iso.apply(identity(space)) == identity(iso.target)
            a, b = random_supported(E, rng), random_supported(E, rng)
            assert iso.apply(compose(a, b)) == compose(iso.apply(a), iso.apply(b))
            assert iso.unapply(iso.apply(a)) == a
            x = random_element(iso.target, 3, rng)
            assert iso.apply(iso.unapply(x)) == x
    swap = make_element(V21, [((1, 1), (1, 2)), ((1, 2), (1, 1))])
    with pytest.raises(PreconditionError):
        fix_clopen_iso(cone(V21, (1, 1))).apply(swap)
    with pytest.raises(DomainError):
        fix_clopen_iso(whole(V21))


def test_attracting_examples(S12):
    S = RationalSet.of(V21, [TWO])
    f = attracting_element(S, TWO)
    alpha, beta = attracting_cone(f, TWO)
    assert alpha[:2] == (1, 2) and beta == (2,)
    assert germ_exponent(f, TWO) == 1
    assert germ_tuple(attracting_element(S12, ONE), S12) == (1, 0)
    assert attracting_all(S) == f
    assert germ_tuple(attracting_all(S12), S12) == (1, 1)
    with pytest.raises(PreconditionError):
        attracting_element(S, ONE)


def test_attracting_random(rng):
    for i in range(40):
        space = MIXED[i % len(MIXED)]
        S = random_rational_set(space, rng, rng.randint(1, 4))
        for s in S:
            f = attracting_element(S, s)
            assert in_fix(f, S) and in_fix0(f, S.without(s)) and germ_exponent(f, s) == 1
        assert germ_tuple(attracting_all(S), S) == (1,) * len(S)


def test_hnn_examples():
    S = RationalSet.of(V21, [TWO])
    H = hnn_data(S, TWO, 1)
    assert H.T.cones == ((1, 2, 2),)
    assert H.T <= image_clopen(invert(H.f), H.T)
    assert type_of(complement(H.T)) == H.q % V21.modulus
    assert hnn_decompose(H, identity(V21)) == (0, 0, identity(V21))
    assert hnn_decompose(H, H.f) == (1, 1, identity(V21))
    with pytest.raises(PreconditionError):
        hnn_decompose(H, make_element(V21, [((1, 1), (1, 2)), ((1, 2), (1, 1))]))


def test_hnn_congruence(rng):
    for space in (Space(3, 1), Space(4, 2), Space(5, 3)):
        S = random_rational_set(space, rng, 2)
        for q in range(1, space.n + 2):
            for s in S:
                H = hnn_data(S, s, q)
                check_hnn(H)
                assert type_of(H.T) == (space.r - q) % space.modulus
                assert type_of(complement(H.T)) == q % space.modulus


def test_hnn_round_trip(rng):
    for i in range(30):
        space = MIXED[i % len(MIXED)]
        S = random_rational_set(space, rng, rng.randint(1, 3))
        H = hnn_data(S, S.points[rng.randrange(len(S))], rng.randint(1, 3))
        g = random_fix_element(S, rng)
        i_, j, h = hnn_decompose(H, g)
        assert H.T <= identity_locus(h) and in_fix(h, S)
        assert compose(power(H.f, i_ + j), compose(h, power(H.f, -j))) == g


def test_verify_criterion():
    for seed, space in enumerate(MIXED):
        rng = random.Random(seed)
        S = random_rational_set(space, rng, 2)
        rep = verify_hnn_criterion(hnn_data(S, S.points[0], 1), sample_count=8, seed=seed)
        assert rep.ok, str(rep)
        assert [c.name for c in rep.checks] == ["trivial_intersection", "ascending", "covering"]
        assert rep.as_dict()["ok"] and str(rep).splitlines()[-1].startswith("PASS")


def test_verify_negative_control():
    S = RationalSet.of(V21, [TWO])
    H = hnn_data(S, TWO, 1)
    bad = dataclasses.replace(H, T=normalize(V21, [(1, 2, 2), (1, 1, 2)]))
    with pytest.raises(AssertionError):
        check_hnn(bad)
    rep = verify_hnn_criterion(bad, sample_count=8)
    assert not rep.ok
    ascending = next(c for c in rep.checks if c.name == "ascending")
    assert not ascending.ok


def test_abelianization(rng, S12, g0):
    assert abelianize(S12, identity(V21)) == AbelImage((0, 0), 0)
    assert abelianize(S12, g0) == AbelImage((1, -1), 0)
    with pytest.raises(PreconditionError):
        abelianize(RationalSet.of(V21, [canonical_point(1, (1,), (2,))]), g0)
    for space in (V31, Space(3, 2), V21):
        S = random_rational_set(space, rng, 2)
        a, b = random_fix_element(S, rng), random_fix_element(S, rng)
        assert abelianize(S, compose(a, b)) == abelianize(S, a) + abelianize(S, b)
        assert abelianize(S, commutator(a, b)).is_zero()
        assert (abelianize(S, a) + -abelianize(S, a)).is_zero()


def test_commutator_membership(rng):
    for space in (V21, V31, Space(3, 2)):
        S = random_rational_set(space, rng, 2)
        assert in_commutator(S, identity(space))
        assert not in_commutator(S, attracting_all(S))
        a, b = random_fix_element(S, rng), random_fix_element(S, rng)
        assert in_commutator(S, commutator(a, b))


def test_order_two(rng):
    for i in range(20):
        space = MIXED[i % len(MIXED)]
        S = random_rational_set(space, rng, rng.randint(1, 3))
        t = order_two_element(S)
        assert compose(t, t) == identity(space) and not t.is_identity()
        assert in_fix0(t, S)
        if space.n % 2:
            assert parity(t) == 1
            assert abelianize(S, t) == AbelImage((0,) * len(S), 1)
            assert not in_commutator(S, t)


def test_random_fix0(rng):
    for space in MIXED:
        S = random_rational_set(space, rng, 3)
        for _ in range(5):
            assert in_fix0(random_fix0_element(S, rng), S)
