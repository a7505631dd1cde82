import json

import pytest

from htgroups import Space
from htgroups import formats as F
from htgroups.clopen import random_clopen
from htgroups.conjugator import conjugator
from htgroups.constructions import AbelImage, hnn_data, same_type_homeo
from htgroups.element import identity, random_element
from htgroups.errors import ParseError, ValidationError
from htgroups.germs import random_rational_set
from htgroups.words import random_point

from conftest import V21

SPACES = [Space(2, 1), Space(2, 3), Space(3, 1), Space(3, 2), Space(4, 2)]


def test_element_text():
    assert F.format_element(identity(V21)) == "V 2 1\n1: -> 1:"
    with pytest.raises(ValidationError):
        F.parse_element("V 2 1\n1:1 -> 1:1")
    with pytest.raises(ParseError) as err:
        F.parse_element("V 2 1\n1:1 -> 1:x")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        F.parse_element("W 2 1\n1: -> 1:")
    with pytest.raises(ParseError):
        F.parse_element("# nothing\n")
    g = F.parse_element("# comment\n\nV 2 1\n  1:2 -> 1:1\n1:1 -> 1:2\n")
    assert F.format_element(g) == "V 2 1\n1:1 -> 1:2\n1:2 -> 1:1"


def test_element_stream(g0):
    text = "\n\n".join(F.format_element(x) for x in (g0, identity(V21), g0))
    assert F.parse_elements(text) == [g0, identity(V21), g0]
    with pytest.raises(ParseError):
        F.split_blocks("1: -> 1:\nV 2 1\n1: -> 1:")


def test_json_forms(g0, rng):
    obj = F.element_to_json(g0)
    assert F.element_from_json(json.loads(F.dumps(obj))) == g0
    assert F.parse_element(F.dumps(obj)) == g0
    with pytest.raises(ParseError):
        F.parse_element("{bad json")
    with pytest.raises(ParseError):
        F.element_from_json({"n": 2, "pairs": []})
    S = random_rational_set(Space(3, 2), rng, 3)
    assert F.rational_set_from_json(F.rational_set_to_json(S)) == S


def test_round_trips(rng):
    for i in range(200):
        space = SPACES[i % len(SPACES)]
        g = random_element(space, 3, rng)
        assert F.parse_element(F.format_element(g)) == g
        assert F.element_from_json(F.element_to_json(g)) == g
        p = random_point(space, rng)
        assert F.parse_point(F.format_point(p), space) == p
        E = random_clopen(space, rng)
        assert F.parse_clopen(F.format_clopen(E), space) == E


def test_partial_text(rng):
    space, space2 = Space(3, 2), Space(3, 1)
    for _ in range(20):
        E, E2 = random_clopen(space, rng), random_clopen(space2, rng)
        if E and E2 and len(E) % 2 == len(E2) % 2:
            h = same_type_homeo(E, E2)
            assert F.parse_partial(F.format_partial(h)) == h
            assert F.partial_from_json(F.partial_to_json(h)) == h
    assert F.format_partial(same_type_homeo(F.parse_clopen("{1:1}", space), F.parse_clopen("{1:}", space2))) == "P 3 2 1\n1:1 -> 1:"


def test_abel_text():
    a = AbelImage((1, 0, -2), 1)
    assert F.format_abel(a) == "germs +1 0 -2\nparity 1"
    assert F.parse_abel(F.format_abel(a)) == a
    assert F.format_abel(AbelImage((), 0)) == "germs\nparity 0"
    assert F.parse_abel("germs\nparity 0") == AbelImage((), 0)
    with pytest.raises(ParseError):
        F.parse_abel("germs 1\nparity 2")


def test_hnn_bundle(rng):
    S = random_rational_set(Space(3, 2), rng, 2)
    H = hnn_data(S, S.points[1], 2)
    obj = json.loads(F.dumps(F.hnn_to_json(H)))
    assert obj["schema"] == "hnn" and obj["version"] == F.SCHEMA_VERSION
    assert F.hnn_from_json(obj) == H
    obj["T"] = "{1:}"
    with pytest.raises(ValidationError):
        F.hnn_from_json(obj)
    obj["version"] = 99
    with pytest.raises(ParseError):
        F.hnn_from_json(obj)


def test_conjugator_bundle(rng):
    S = random_rational_set(Space(3, 1), rng, 2)
    S2 = random_rational_set(Space(3, 2), rng, 2)
    C = conjugator(S, S2)
    C2 = F.conjugator_from_json(json.loads(F.dumps(F.conjugator_to_json(C))))
    assert C2 == C
