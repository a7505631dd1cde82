"""Seeded generators and brute-force oracles for the test suites.

The oracles here work on raw letter sequences and never call the canonical
reduction or rational-point canonicalisation they are used to check.  The
library itself does not import this module.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .constructions import attracting_element
from .element import Element, compose, identity_locus, power
from .germs import RationalSet
from .words import RationalPoint, Space, canonical_point, random_point


class OracleInconclusive(RuntimeError):
    pass


@dataclass(frozen=True)
class Oracle:
    sample_points: int = 16
    expansion_depth: int = 24
    germ_bound: int = 64


DEFAULT = Oracle()


def expand(p: RationalPoint, length: int) -> tuple[int, ...]:
    """``root`` followed by the first ``length - 1`` letters of ``p``."""
    seq = [p.root, *p.pre]
    while len(seq) < length:
        seq.extend(p.per)
    return tuple(seq[:length])


def apply_raw(g: Element, seq: tuple[int, ...]) -> tuple[int, ...]:
    """Image of a finite letter sequence under ``g`` (linear scan of the table)."""
    for d, r in g.pairs:
        if seq[: len(d)] == d:
            return r + seq[len(d):]
    raise AssertionError(f"no domain cone matches {seq}")


def witness_points(g: Element, h: Element) -> list[RationalPoint]:
    """Two points in every domain cone of either table.

    If ``g`` and ``h`` differ on a cone ``c`` they differ at ``c.1...`` or at
    ``c.2...``: two distinct prefix replacements agree on at most one point.
    """
    cones = sorted({d for d, _ in g.pairs} | {d for d, _ in h.pairs})
    return [canonical_point(c[0], c[1:], (x,)) for c in cones for x in (1, 2)]


def distinguishing_point(g: Element, h: Element, oracle: Oracle = DEFAULT, rng=None):
    """A rational point where ``g`` and ``h`` differ, or ``None``."""
    if g.space != h.space:
        raise ValueError("elements live in different spaces")
    rng = rng or random.Random(0)
    longest = max(len(a) for t in (g, h) for pr in t.pairs for a in pr)
    points = witness_points(g, h) + [random_point(g.space, rng) for _ in range(oracle.sample_points)]
    for p in points:
        depth = max(oracle.expansion_depth, 2 * (longest + len(p.pre) + len(p.per)))
        seq = expand(p, depth)
        a, b = apply_raw(g, seq), apply_raw(h, seq)
        m = min(len(a), len(b))
        if a[:m] != b[:m]:
            return p
    return None


def pointwise_equal(g: Element, h: Element, oracle: Oracle = DEFAULT, rng=None) -> bool:
    return distinguishing_point(g, h, oracle, rng) is None


def germ_by_iteration(g: Element, s: RationalPoint, oracle: Oracle = DEFAULT) -> int:
    """The ``k`` with ``a^-k g`` the identity near ``s``, ``a`` the attracting generator."""
    a = attracting_element(RationalSet.of(g.space, [s]), s)
    bound = oracle.germ_bound
    for m in range(bound + 1):
        for k in {m, -m}:
            if s in identity_locus(compose(power(a, -k), g)):
                return k
    raise OracleInconclusive(f"no germ exponent with |k| <= {bound}")


SPACES = [Space(2, 1), Space(2, 3), Space(3, 1), Space(3, 2), Space(4, 2)]



def leaf_parity(pairs, n: int) -> int:
    """Sign of the leaf permutation of an arbitrary (unreduced) table, by cycle count."""
    if n % 2 == 0:
        return 0
    doms = sorted(d for d, _ in pairs)
    rans = sorted(r for _, r in pairs)
    rank = {r: i for i, r in enumerate(rans)}
    perm = [rank[dict(pairs)[d]] for d in doms]
    seen, cycles = set(), 0
    for i in range(len(perm)):
        if i not in seen:
            cycles += 1
            while i not in seen:
                seen.add(i)
                i = perm[i]
    return (len(perm) - cycles) % 2


def expand_pair(pairs, index: int, n: int):
    """Replace the ``index``-th pair ``u -> v`` by its ``n`` children pairs."""
    u, v = pairs[index]
    return pairs[:index] + [(u + (c,), v + (c,)) for c in range(1, n + 1)] + pairs[index + 1:]
