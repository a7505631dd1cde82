"""Germ exponents at rational fixed points, and membership in Fix(S), Fix_0(S)."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .clopen import covering_cone
from .element import Element, evaluate, identity_locus
from .errors import DomainError, ParseError, PreconditionError
from .words import RationalPoint, Space, format_point, parse_point, random_point


@dataclass(frozen=True)
class RationalSet:
    """Finite set of canonical rational points, sorted and duplicate free."""

    space: Space
    points: tuple[RationalPoint, ...]

    @classmethod
    def of(cls, space: Space, points: Iterable[RationalPoint]) -> RationalSet:
        pts = tuple(sorted(set(space.check_point(p) for p in points)))
        return cls(space, pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.points

    def index(self, p: RationalPoint) -> int:
        return self.points.index(p)

    def without(self, p: RationalPoint) -> RationalSet:
        return RationalSet(self.space, tuple(q for q in self.points if q != p))

    def __str__(self):
        return format_rational_set(self)


def fixed_pair(g: Element, s: RationalPoint):
    depth = max(len(d) for d in g.doms)
    u = covering_cone(g.mapping, s.prefix(depth))
    return u, g.mapping[u]


def germ_exponent(g: Element, s: RationalPoint) -> int:
    """Exponent ``k`` such that ``g`` agrees with ``f**k`` near ``s``, where ``f`` is
    the attracting generator ``alpha.psi -> alpha.beta.psi`` at ``s``.

    Positive means ``g`` pushes points towards ``s``.
    """
    if evaluate(g, s) != s:
        raise PreconditionError(f"element does not fix {format_point(s)}")
    u, v = fixed_pair(g, s)
    gap = len(v) - len(u)
    k, rem = divmod(gap, len(s.per))
    assert rem == 0, f"length gap {gap} at {format_point(s)} not a multiple of the period"
    return k


def germ_tuple(g: Element, S: RationalSet) -> tuple[int, ...]:
    return tuple(germ_exponent(g, s) for s in S.points)


def in_fix(g: Element, S: RationalSet) -> bool:
    if g.space != S.space:
        raise DomainError(f"space mismatch: {g.space} vs {S.space}")
    return all(evaluate(g, s) == s for s in S.points)


def in_fix0(g: Element, S: RationalSet) -> bool:
    if not in_fix(g, S):
        return False
    by_germ = all(germ_exponent(g, s) == 0 for s in S.points)
    locus = identity_locus(g)
    by_locus = all(s in locus for s in S.points)
    assert by_germ == by_locus, "germ and identity-locus characterisations of Fix_0 disagree"
    return by_germ


def random_rational_set(space: Space, rng: random.Random, size: int, **kw) -> RationalSet:
    pts: set = set()
    while len(pts) < size:
        pts.add(random_point(space, rng, **kw))
    return RationalSet.of(space, pts)


def format_rational_set(S: RationalSet) -> str:
    return "{" + ", ".join(format_point(p) for p in S.points) + "}"


def parse_rational_set(text: str, space: Space, line: int = 1, col: int = 1) -> RationalSet:
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError("point set must be written {point, ...}", line, col)
    body = s[1:-1]
    if not body.strip():
        return RationalSet(space, ())
    pts = []
    pos = col + 1
    for part in body.split(","):
        pts.append(parse_point(part, space, line, pos))
        pos += len(part) + 1
    return RationalSet.of(space, pts)
