"""Bit-exact text and JSON forms for every value type.

Element text::

    V n r
    dom -> ran
    ...

with addresses written ``root:w1.w2`` and pairs in canonical (sorted) order.
Partial maps use the header ``P n q r`` (domain space V_{n,q}, range space
V_{n,r}).  Blank lines and lines starting with ``#`` are ignored by the
parsers, so several values can share one stream.
"""
from __future__ import annotations

import json

from .clopen import format_clopen, parse_clopen
from .conjugator import ConjugatorData, check_conjugator
from .constructions import AbelImage, HnnData, check_hnn
from .element import Element, PartialMap, make_element, make_partial
from .errors import ParseError, ValidationError
from .germs import RationalSet, format_rational_set, parse_rational_set
from .words import (
    Space,
    parse_word,
    format_word,
    format_address,
    format_point,
    parse_address,
    parse_point,
)

SCHEMA_VERSION = 1


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, raw


def _parse_header(raw: str, lineno: int, tag: str, count: int) -> list[int]:
    parts = raw.split()
    if not parts or parts[0] != tag or len(parts) != count + 1:
        raise ParseError(f"expected header '{tag}' followed by {count} integers", lineno, 1)
    try:
        return [int(p) for p in parts[1:]]
    except ValueError:
        raise ParseError("header parameters must be integers", lineno, len(tag) + 2) from None


def _parse_pairs(lines, dom_space: Space, ran_space: Space):
    pairs = []
    for lineno, raw in lines:
        left, arrow, right = raw.partition("->")
        if not arrow:
            raise ParseError("expected 'dom -> ran'", lineno, 1)
        col = len(raw) - len(raw.lstrip()) + 1
        dom = parse_address(left, dom_space, lineno, col)
        ran = parse_address(right, ran_space, lineno, raw.index("->") + 3)
        pairs.append((dom, ran))
    return pairs


def _format_pairs(pairs) -> list[str]:
    return [f"{format_address(d)} -> {format_address(r)}" for d, r in pairs]


def format_element(g: Element) -> str:
    return "\n".join([f"V {g.space.n} {g.space.r}"] + _format_pairs(g.pairs))


def parse_element(text: str) -> Element:
    """Parse the text (or JSON) form of an element; the result is canonical."""
    if text.lstrip().startswith("{"):
        return element_from_json(_loads(text))
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    n, r = _parse_header(lines[0][1], lines[0][0], "V", 2)
    space = Space(n, r)
    return make_element(space, _parse_pairs(lines[1:], space, space))


def split_blocks(text: str, tags=("V", "P")) -> list[str]:
    """Split a stream into the text blocks of consecutive values."""
    blocks: list[list[str]] = []
    for raw in text.splitlines():
        head = raw.split(maxsplit=1)[:1]
        if head and head[0] in tags:
            blocks.append([])
        if blocks:
            blocks[-1].append(raw)
        elif raw.strip() and not raw.strip().startswith("#"):
            raise ParseError("content before the first header", 1, 1)
    return ["\n".join(b) for b in blocks]


def parse_elements(text: str) -> list[Element]:
    return [parse_element(b) for b in split_blocks(text, ("V",))]


def format_partial(p: PartialMap) -> str:
    head = f"P {p.n} {p.dom_space.r} {p.ran_space.r}"
    return "\n".join([head] + _format_pairs(p.pairs))


def parse_partial(text: str) -> PartialMap:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    n, q, r = _parse_header(lines[0][1], lines[0][0], "P", 3)
    dom_space, ran_space = Space(n, q), Space(n, r)
    return make_partial(dom_space, ran_space, _parse_pairs(lines[1:], dom_space, ran_space))


def format_germ(k: int) -> str:
    return f"+{k}" if k > 0 else str(k)


def format_abel(a: AbelImage) -> str:
    germs = " ".join(format_germ(k) for k in a.germs)
    return f"germs {germs}".rstrip() + f"\nparity {a.parity}"


def parse_abel(text: str) -> AbelImage:
    lines = list(_content_lines(text))
    if len(lines) != 2:
        raise ParseError("expected a 'germs' line and a 'parity' line", 1, 1)
    (l1, g), (l2, p) = lines
    gparts, pparts = g.split(), p.split()
    if not gparts or gparts[0] != "germs":
        raise ParseError("expected 'germs'", l1, 1)
    if len(pparts) != 2 or pparts[0] != "parity" or pparts[1] not in ("0", "1"):
        raise ParseError("expected 'parity 0' or 'parity 1'", l2, 1)
    try:
        germs = tuple(int(x) for x in gparts[1:])
    except ValueError:
        raise ParseError("germ exponents must be integers", l1, 7) from None
    return AbelImage(germs, int(pparts[1]))


# JSON ---------------------------------------------------------------------

def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


def element_to_json(g: Element) -> dict:
    return {"n": g.space.n, "r": g.space.r, "pairs": [[format_address(d), format_address(r)] for d, r in g.pairs]}


def _json_pairs(pairs, dom_space, ran_space):
    try:
        return [(parse_address(d, dom_space), parse_address(r, ran_space)) for d, r in pairs]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed pair list: {exc}") from None


def _field(obj: dict, key: str):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None


def element_from_json(obj: dict) -> Element:
    space = Space(_field(obj, "n"), _field(obj, "r"))
    return make_element(space, _json_pairs(_field(obj, "pairs"), space, space))


def partial_to_json(p: PartialMap) -> dict:
    return {
        "n": p.n,
        "dom_r": p.dom_space.r,
        "ran_r": p.ran_space.r,
        "pairs": [[format_address(d), format_address(r)] for d, r in p.pairs],
    }


def partial_from_json(obj: dict) -> PartialMap:
    n = _field(obj, "n")
    dom_space, ran_space = Space(n, _field(obj, "dom_r")), Space(n, _field(obj, "ran_r"))
    return make_partial(dom_space, ran_space, _json_pairs(_field(obj, "pairs"), dom_space, ran_space))


def rational_set_to_json(S: RationalSet) -> dict:
    return {"n": S.space.n, "r": S.space.r, "points": [format_point(p) for p in S.points]}


def rational_set_from_json(obj: dict) -> RationalSet:
    space = Space(_field(obj, "n"), _field(obj, "r"))
    return RationalSet.of(space, [parse_point(p, space) for p in _field(obj, "points")])


def abel_to_json(a: AbelImage) -> dict:
    return {"germs": list(a.germs), "parity": a.parity}


def _check_schema(obj: dict, kind: str):
    if _field(obj, "schema") != kind:
        raise ParseError(f"expected a {kind!r} bundle, got {obj.get('schema')!r}")
    if _field(obj, "version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {obj.get('version')!r}")


def hnn_to_json(H: HnnData) -> dict:
    return {
        "schema": "hnn",
        "version": SCHEMA_VERSION,
        "S": rational_set_to_json(H.S),
        "s": format_point(H.s),
        "q": H.q,
        "f": element_to_json(H.f),
        "alpha": format_address(H.alpha),
        "beta": format_word(H.beta),
        "T": format_clopen(H.T),
    }


def hnn_from_json(obj: dict, validate: bool = True) -> HnnData:
    _check_schema(obj, "hnn")
    S = rational_set_from_json(_field(obj, "S"))
    space = S.space
    H = HnnData(
        S,
        parse_point(_field(obj, "s"), space),
        _field(obj, "q"),
        element_from_json(_field(obj, "f")),
        parse_address(_field(obj, "alpha"), space),
        parse_word(_field(obj, "beta"), 1, 1),
        parse_clopen(_field(obj, "T"), space),
    )
    if validate:
        try:
            check_hnn(H)
        except AssertionError as exc:
            raise ValidationError(f"invalid HNN data: {exc}") from None
    return H


def conjugator_to_json(C: ConjugatorData) -> dict:
    return {
        "schema": "conjugator",
        "version": SCHEMA_VERSION,
        "S": rational_set_to_json(C.S),
        "S2": rational_set_to_json(C.S2),
        "phi": [[format_point(s), format_point(t)] for s, t in C.phi],
        "f": element_to_json(C.f),
        "E": format_clopen(C.E),
        "f2": element_to_json(C.f2),
        "E2": format_clopen(C.E2),
        "h0": partial_to_json(C.h0),
        "h1": partial_to_json(C.h1),
        "cones": [[format_address(a), format_word(b)] for a, b in C.cones],
        "cones2": [[format_address(a), format_word(b)] for a, b in C.cones2],
    }


def conjugator_from_json(obj: dict) -> ConjugatorData:
    _check_schema(obj, "conjugator")
    S, S2 = rational_set_from_json(_field(obj, "S")), rational_set_from_json(_field(obj, "S2"))

    def cones(key, space):
        return tuple((parse_address(a, space), parse_word(b, 1, 1)) for a, b in _field(obj, key))

    C = ConjugatorData(
        S,
        S2,
        tuple((parse_point(s, S.space), parse_point(t, S2.space)) for s, t in _field(obj, "phi")),
        element_from_json(_field(obj, "f")),
        parse_clopen(_field(obj, "E"), S.space),
        element_from_json(_field(obj, "f2")),
        parse_clopen(_field(obj, "E2"), S2.space),
        partial_from_json(_field(obj, "h0")),
        partial_from_json(_field(obj, "h1")),
        cones("cones", S.space),
        cones("cones2", S2.space),
    )
    try:
        check_conjugator(C)
    except AssertionError as exc:
        raise ValidationError(f"invalid conjugator data: {exc}") from None
    return C


__all__ = [
    "format_element", "parse_element", "parse_elements", "split_blocks",
    "format_partial", "parse_partial", "format_abel", "parse_abel", "format_germ",
    "element_to_json", "element_from_json", "partial_to_json", "partial_from_json",
    "rational_set_to_json", "rational_set_from_json", "abel_to_json",
    "hnn_to_json", "hnn_from_json", "conjugator_to_json", "conjugator_from_json",
    "format_clopen", "parse_clopen", "format_rational_set", "parse_rational_set",
    "format_point", "parse_point", "format_address", "parse_address", "dumps",
]
