"""Clopen subsets of the Cantor space as canonical unions of cones."""
from __future__ import annotations

import random
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .words import Address, RationalPoint, Space, cone_contains_point, format_address, is_prefix, parse_address


def _merge_siblings(cones: set, n: int) -> set:
    # repeated to a fixed point: a merge can complete a family one level up
    while True:
        groups = defaultdict(list)
        for a in cones:
            if len(a) > 1:
                groups[a[:-1]].append(a)
        full = [p for p, kids in groups.items() if len(kids) == n]
        if not full:
            return cones
        for p in full:
            cones.difference_update(groups[p])
            cones.add(p)


def _drop_nested(cones: Iterable[Address]) -> list[Address]:
    out: list[Address] = []
    for a in sorted(set(cones)):
        if out and is_prefix(out[-1], a):
            continue
        out.append(a)
    return out


@dataclass(frozen=True)
class ClopenSet:
    """A finite disjoint union of cones, reduced and sorted.

    Build instances with :func:`normalize`; the constructor trusts its input.
    """

    space: Space
    cones: tuple[Address, ...]

    def __bool__(self):
        return bool(self.cones)

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __contains__(self, p: RationalPoint) -> bool:
        return any(cone_contains_point(a, p) for a in self.cones)

    def __str__(self):
        return format_clopen(self)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __le__(self, other):
        return is_subset(self, other)


def normalize(space: Space, raw_cones: Iterable[Address]) -> ClopenSet:
    raw = [space.check_address(tuple(a)) for a in raw_cones]
    cones = _merge_siblings(set(_drop_nested(raw)), space.n)
    return ClopenSet(space, tuple(_drop_nested(cones)))


def empty(space: Space) -> ClopenSet:
    return ClopenSet(space, ())


def whole(space: Space) -> ClopenSet:
    return normalize(space, space.roots())


def cone(space: Space, a: Address) -> ClopenSet:
    return normalize(space, [a])


def _same_space(E: ClopenSet, F: ClopenSet):
    if E.space != F.space:
        raise DomainError(f"space mismatch: {E.space} vs {F.space}")


def covering_cone(lookup, a: Address):
    """The cone of ``lookup`` (a set of non-nested addresses) that contains ``a``, if any."""
    for k in range(1, len(a) + 1):
        if a[:k] in lookup:
            return a[:k]
    return None


def cones_below(sorted_cones: Sequence[Address], a: Address) -> list[Address]:
    """Members of a sorted address list having ``a`` as a prefix."""
    i = bisect_left(sorted_cones, a)
    out = []
    while i < len(sorted_cones) and is_prefix(a, sorted_cones[i]):
        out.append(sorted_cones[i])
        i += 1
    return out


def union(E: ClopenSet, F: ClopenSet) -> ClopenSet:
    _same_space(E, F)
    return normalize(E.space, E.cones + F.cones)


def intersection(E: ClopenSet, F: ClopenSet) -> ClopenSet:
    _same_space(E, F)
    fset = set(F.cones)
    out = []
    for a in E.cones:
        if covering_cone(fset, a) is not None:
            out.append(a)
        else:
            out.extend(cones_below(F.cones, a))
    return normalize(E.space, out)


def complement(E: ClopenSet) -> ClopenSet:
    space = E.space
    members = set(E.cones)
    inner = {a[:k] for a in E.cones for k in range(1, len(a))}
    out = []
    stack = list(reversed(space.roots()))
    while stack:
        a = stack.pop()
        if a in members:
            continue
        if a in inner:
            stack.extend(reversed(space.children(a)))
        else:
            out.append(a)
    return normalize(space, out)


def difference(E: ClopenSet, F: ClopenSet) -> ClopenSet:
    return intersection(E, complement(F))


def is_subset(E: ClopenSet, F: ClopenSet) -> bool:
    _same_space(E, F)
    fset = set(F.cones)
    return all(covering_cone(fset, a) is not None for a in E.cones)


def is_disjoint(E: ClopenSet, F: ClopenSet) -> bool:
    return not intersection(E, F)


def type_of(E: ClopenSet) -> int:
    """Number of cones modulo ``n - 1``; always 0 when ``n = 2``."""
    return len(E.cones) % E.space.modulus


def split_into(E: ClopenSet, m: int) -> list[Address]:
    """Exactly ``m`` disjoint cones with union ``E``, made by expanding the lex-last cone."""
    k = len(E.cones)
    if not E:
        raise DomainError("cannot split the empty set")
    if m < k:
        raise DomainError(f"{m} cones requested but the set already needs {k}")
    if (m - k) % E.space.modulus:
        raise DomainError(f"{m} is not congruent to type {type_of(E)} mod {E.space.modulus}")
    cones = list(E.cones)
    while len(cones) < m:
        cones.extend(E.space.children(cones.pop()))
    return cones


def random_clopen(space: Space, rng: random.Random, expansions: int = 4, keep: float = 0.5) -> ClopenSet:
    """Random subset of the leaves of a randomly grown prefix code."""
    leaves = space.roots()
    for _ in range(rng.randint(0, expansions)):
        leaves.extend(space.children(leaves.pop(rng.randrange(len(leaves)))))
    return normalize(space, [a for a in leaves if rng.random() < keep])


def subdivide(E: ClopenSet, rng: random.Random, times: int = 1) -> list[Address]:
    """A random non-canonical presentation of ``E``: some cones replaced by their children."""
    cones = list(E.cones)
    for _ in range(times):
        if not cones:
            break
        cones.extend(E.space.children(cones.pop(rng.randrange(len(cones)))))
    return cones


def format_clopen(E: ClopenSet) -> str:
    return "{" + ", ".join(format_address(a) for a in E.cones) + "}"


def parse_clopen(text: str, space: Space, line: int = 1, col: int = 1) -> ClopenSet:
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError("clopen set must be written {addr, ...}", line, col)
    body = s[1:-1]
    if not body.strip():
        return empty(space)
    cones = []
    pos = col + 1
    for part in body.split(","):
        cones.append(parse_address(part, space, line, pos))
        pos += len(part) + 1
    return normalize(space, cones)
