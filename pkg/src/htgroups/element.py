"""Elements of V_{n,r} and Thompson-like maps between clopen sets.

Both are finite tables of prefix replacements ``dom.psi -> ran.psi``.  Tables
are kept canonical: every full sibling family ``u.c -> v.c`` (c = 1..n) is
merged into ``u -> v`` and pairs are sorted by domain.  The canonical table
lists the maximal cones on which the map is a single prefix replacement, so
structural equality is equality of maps.

Composition order: ``compose(g, h)`` (also ``g * h``) applies ``h`` first.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import clopen
from .clopen import ClopenSet, cones_below, covering_cone
from .errors import DomainError, ValidationError
from .words import Address, RationalPoint, Space, format_address, is_prefix, replace_prefix_point

Pair = tuple[Address, Address]


def _reduce(mapping: dict, n: int) -> dict:
    while True:
        groups = defaultdict(list)
        for d in mapping:
            if len(d) > 1:
                groups[d[:-1]].append(d)
        merged = False
        for parent, kids in groups.items():
            if len(kids) != n:
                continue
            r0 = mapping[kids[0]]
            if len(r0) < 2:
                continue
            top = r0[:-1]
            if all(mapping[k][-1] == k[-1] and mapping[k][:-1] == top for k in kids):
                for k in kids:
                    del mapping[k]
                mapping[parent] = top
                merged = True
        if not merged:
            return mapping


def _sorted_pairs(mapping: dict) -> tuple[Pair, ...]:
    return tuple(sorted(mapping.items()))


def _check_code(addrs: Sequence[Address], space: Space, side: str, complete: bool):
    addrs = sorted(addrs)
    for a in addrs:
        space.check_address(a)
    for a, b in zip(addrs, addrs[1:]):
        if is_prefix(a, b):
            raise ValidationError(f"{side} cones overlap: {format_address(a)} contains {format_address(b)}")
    if complete:
        missing = clopen.complement(clopen.normalize(space, addrs))
        if missing:
            raise ValidationError(
                f"{side} cones do not cover the space: missing {format_address(missing.cones[0])}"
            )


def _cone_pieces(mapping: dict, doms: Sequence[Address], a: Address, n: int) -> list[Pair]:
    """Split cone ``a`` along the domain partition; return ``(piece, image)`` pairs."""
    u = covering_cone(mapping, a)
    if u is not None:
        return [(a, mapping[u] + a[len(u):])]
    below = cones_below(doms, a)
    if below:
        depth = max(len(b) for b in below)
        if sum(n ** (depth - len(b)) for b in below) == n ** (depth - len(a)):
            return [(b, mapping[b]) for b in below]
    raise DomainError(f"cone {format_address(a)} is not inside the domain")


class _Table:
    pairs: tuple[Pair, ...]

    @cached_property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @cached_property
    def doms(self) -> list[Address]:
        return [d for d, _ in self.pairs]

    @property
    def n(self) -> int:
        raise NotImplementedError

    def pieces(self, a: Address) -> list[Pair]:
        return _cone_pieces(self.mapping, self.doms, a, self.n)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class Element(_Table):
    """A Thompson-like homeomorphism of the whole space, as a canonical table."""

    space: Space
    pairs: tuple[Pair, ...]

    @property
    def n(self):
        return self.space.n

    def __mul__(self, other: Element) -> Element:
        return compose(self, other)

    def __pow__(self, k: int) -> Element:
        return power(self, k)

    def __call__(self, p: RationalPoint) -> RationalPoint:
        return evaluate(self, p)

    def inverse(self) -> Element:
        return invert(self)

    def is_identity(self) -> bool:
        return all(d == r for d, r in self.pairs)

    def __str__(self):
        from .formats import format_element

        return format_element(self)


@dataclass(frozen=True)
class PartialMap(_Table):
    """A Thompson-like homeomorphism from a clopen subset of one space onto a
    clopen subset of another space with the same ``n``."""

    dom_space: Space
    ran_space: Space
    pairs: tuple[Pair, ...]

    @property
    def n(self):
        return self.dom_space.n

    def domain(self) -> ClopenSet:
        return clopen.normalize(self.dom_space, self.mapping.keys())

    def image(self) -> ClopenSet:
        return clopen.normalize(self.ran_space, self.mapping.values())

    def inverse(self) -> PartialMap:
        return PartialMap(self.ran_space, self.dom_space, _sorted_pairs(_reduce({r: d for d, r in self.pairs}, self.n)))

    def __mul__(self, other: PartialMap) -> PartialMap:
        return compose_partial(self, other)

    def __str__(self):
        from .formats import format_partial

        return format_partial(self)


def make_element(space: Space, pairs: Iterable[Pair]) -> Element:
    pairs = [(tuple(d), tuple(r)) for d, r in pairs]
    _check_code([d for d, _ in pairs], space, "domain", True)
    _check_code([r for _, r in pairs], space, "range", True)
    return Element(space, _sorted_pairs(_reduce(dict(pairs), space.n)))


def make_partial(dom_space: Space, ran_space: Space, pairs: Iterable[Pair]) -> PartialMap:
    if dom_space.n != ran_space.n:
        raise DomainError("partial maps need equal branching on both sides")
    pairs = [(tuple(d), tuple(r)) for d, r in pairs]
    _check_code([d for d, _ in pairs], dom_space, "domain", False)
    _check_code([r for _, r in pairs], ran_space, "range", False)
    return PartialMap(dom_space, ran_space, _sorted_pairs(_reduce(dict(pairs), dom_space.n)))


def identity(space: Space) -> Element:
    return Element(space, tuple((a, a) for a in space.roots()))


def _compose_pairs(outer: _Table, inner_pairs: Iterable[Pair]) -> dict:
    out = {}
    for d, e in inner_pairs:
        for piece, img in outer.pieces(e):
            out[d + piece[len(e):]] = img
    return out


def compose(g: Element, h: Element) -> Element:
    """``g`` after ``h``."""
    if g.space != h.space:
        raise DomainError(f"space mismatch: {g.space} vs {h.space}")
    return Element(g.space, _sorted_pairs(_reduce(_compose_pairs(g, h.pairs), g.space.n)))


def compose_partial(outer: PartialMap, inner: PartialMap) -> PartialMap:
    """``outer`` after ``inner``; the image of ``inner`` must lie in the domain of ``outer``."""
    if outer.dom_space != inner.ran_space:
        raise DomainError(f"space mismatch: {outer.dom_space} vs {inner.ran_space}")
    return PartialMap(inner.dom_space, outer.ran_space, _sorted_pairs(_reduce(_compose_pairs(outer, inner.pairs), outer.n)))


def invert(g: Element) -> Element:
    return Element(g.space, _sorted_pairs(_reduce({r: d for d, r in g.pairs}, g.space.n)))


def power(g: Element, k: int) -> Element:
    base = g if k >= 0 else invert(g)
    k = abs(k)
    out = identity(g.space)
    while k:
        if k & 1:
            out = compose(out, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return out


def commutator(a: Element, b: Element) -> Element:
    return compose(compose(a, b), compose(invert(a), invert(b)))


def evaluate(g: _Table, p: RationalPoint) -> RationalPoint:
    depth = max(len(d) for d in g.doms)
    u = covering_cone(g.mapping, p.prefix(depth))
    if u is None:
        raise DomainError(f"{p} is outside the domain")
    return replace_prefix_point(p, u, g.mapping[u])


def image_clopen(g: _Table, E: ClopenSet) -> ClopenSet:
    space = g.space if isinstance(g, Element) else g.ran_space
    return clopen.normalize(space, [img for a in E.cones for _, img in g.pieces(a)])


def identity_locus(g: Element) -> ClopenSet:
    """The largest clopen set on which ``g`` is the identity."""
    return clopen.normalize(g.space, [d for d, r in g.pairs if d == r])


def parity(g: Element) -> int:
    """Sign of the leaf permutation of the canonical table (0 = even); 0 for even ``n``.

    Expanding a pair into its ``n`` children multiplies the inversions through
    it by ``n``, so for odd ``n`` the sign does not depend on the table.
    """
    if g.space.n % 2 == 0:
        return 0
    rank = {r: i for i, r in enumerate(sorted(r for _, r in g.pairs))}
    perm = [rank[r] for _, r in g.pairs]
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            while not seen[i]:
                seen[i] = True
                i = perm[i]
    return (len(perm) - cycles) % 2


def restrict(g: _Table, E: ClopenSet) -> PartialMap:
    if isinstance(g, Element):
        dom_space, ran_space = g.space, g.space
    else:
        dom_space, ran_space = g.dom_space, g.ran_space
    if E.space != dom_space:
        raise DomainError(f"space mismatch: {E.space} vs {dom_space}")
    pairs = [pr for a in E.cones for pr in g.pieces(a)]
    return PartialMap(dom_space, ran_space, _sorted_pairs(_reduce(dict(pairs), g.n)))


def identity_on(E: ClopenSet) -> PartialMap:
    return PartialMap(E.space, E.space, tuple((a, a) for a in E.cones))


def prefix_map(dom_space: Space, source: Address, ran_space: Space, target: Address) -> PartialMap:
    return make_partial(dom_space, ran_space, [(source, target)])


def assemble(pieces: Sequence[PartialMap]) -> Element:
    """Glue partial maps whose domains and images each partition one space."""
    if not pieces:
        raise DomainError("nothing to assemble")
    space = pieces[0].dom_space
    for p in pieces:
        if p.dom_space != space or p.ran_space != space:
            raise DomainError("pieces must all map the same space to itself")
    pairs = [pr for p in pieces for pr in p.pairs]
    doms = [d for d, _ in pairs]
    if len(set(doms)) != len(doms):
        raise ValidationError("piece domains overlap")
    return make_element(space, pairs)


def random_element(space: Space, depth_budget: int, seed) -> Element:
    """Random element from two random prefix codes of equal size.

    ``seed`` is an int or a ``random.Random``.  Each code gets the same random
    number (at most ``depth_budget``) of expansions; budget 0 gives the identity.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if depth_budget <= 0:
        return identity(space)
    k = rng.randint(0, depth_budget)

    def grow():
        leaves = space.roots()
        for _ in range(k):
            leaves.extend(space.children(leaves.pop(rng.randrange(len(leaves)))))
        return leaves

    dom, ran = grow(), grow()
    rng.shuffle(ran)
    return Element(space, _sorted_pairs(_reduce(dict(zip(dom, ran)), space.n)))
