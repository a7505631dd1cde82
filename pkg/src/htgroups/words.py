"""Spaces, cone addresses and rational points.

An address is a plain tuple ``(root, w1, w2, ...)``: the root digit in
``1..r`` followed by the word over ``1..n``.  Tuples compare
lexicographically with a prefix sorting before its extensions, which is the
canonical order used everywhere.  Addresses do not carry their space; the
containers holding them do.

A rational point is stored in canonical form: minimal preperiod and
primitive period.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import DomainError, ParseError, ValidationError

Address = Tuple[int, ...]
Word = Tuple[int, ...]


@dataclass(frozen=True)
class Space:
    """The Cantor space with ``r`` roots and ``n``-ary branching."""

    n: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.r, int)):
            raise DomainError("space parameters must be integers")
        if self.n < 2 or self.r < 1:
            raise DomainError(f"need n >= 2 and r >= 1, got n={self.n}, r={self.r}")

    @property
    def modulus(self) -> int:
        return max(1, self.n - 1)

    def roots(self) -> list[Address]:
        return [(i,) for i in range(1, self.r + 1)]

    def children(self, a: Address) -> list[Address]:
        return [a + (c,) for c in range(1, self.n + 1)]

    def check_address(self, a: Address) -> Address:
        if not a or not 1 <= a[0] <= self.r:
            raise ValidationError(f"root of {format_address(a) if a else '()'} outside 1..{self.r}")
        for c in a[1:]:
            if not 1 <= c <= self.n:
                raise ValidationError(f"letter {c} of {format_address(a)} outside 1..{self.n}")
        return a

    def check_point(self, p: RationalPoint) -> RationalPoint:
        self.check_address((p.root,) + p.pre + p.per)
        return p

    def __str__(self):
        return f"{self.n},{self.r}"


def is_prefix(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def _primitive_root(w: Word) -> Word:
    k = len(w)
    for d in range(1, k + 1):
        if k % d == 0 and w[:d] * (k // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True, order=True)
class RationalPoint:
    """The eventually periodic sequence ``root . pre . per per per ...``."""

    root: int
    pre: Word
    per: Word

    def __post_init__(self):
        if not self.per:
            raise DomainError("period must be nonempty")
        if _primitive_root(self.per) != self.per:
            raise DomainError(f"period {self.per} is not primitive")
        if self.pre and self.pre[-1] == self.per[-1]:
            raise DomainError(f"preperiod {self.pre} is not minimal for period {self.per}")

    @property
    def head(self) -> Address:
        return (self.root,) + self.pre

    def letters(self, k: int) -> Word:
        """First ``k`` letters of the tail (the part after the root)."""
        out = list(self.pre[:k])
        p = len(self.per)
        while len(out) < k:
            i = len(out) - len(self.pre)
            out.append(self.per[i % p])
        return tuple(out)

    def prefix(self, k: int) -> Address:
        """The length-``k`` address of the cone of depth ``k - 1`` containing this point."""
        return (self.root,) + self.letters(k - 1)

    def __str__(self):
        return format_point(self)

    def __repr__(self):
        return f"RationalPoint({format_point(self)})"


def canonical_point(root: int, pre: Sequence[int], per: Sequence[int], space: Space | None = None) -> RationalPoint:
    """Canonical form of ``root . pre . per^inf``."""
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise DomainError("period must be nonempty")
    if space is not None:
        space.check_address((root,) + pre + per)
    per = _primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return RationalPoint(root, pre, per)


def cone_contains_point(a: Address, p: RationalPoint) -> bool:
    return a[0] == p.root and p.letters(len(a) - 1) == a[1:]


def replace_prefix_point(p: RationalPoint, source: Address, target: Address) -> RationalPoint:
    """Image of ``p`` under the prefix replacement ``source.psi -> target.psi``."""
    if not cone_contains_point(source, p):
        raise DomainError(f"{format_point(p)} is not in the cone {format_address(source)}")
    m = len(source) - 1
    if m <= len(p.pre):
        pre, per = p.pre[m:], p.per
    else:
        k = (m - len(p.pre)) % len(p.per)
        pre, per = (), p.per[k:] + p.per[:k]
    return canonical_point(target[0], target[1:] + pre, per)


def common_prefix_length(p: RationalPoint, q: RationalPoint) -> int:
    """Length (root included) of the longest common prefix of two distinct points."""
    if p == q:
        raise DomainError("points are equal")
    if p.root != q.root:
        return 0
    bound = max(len(p.pre), len(q.pre)) + math.lcm(len(p.per), len(q.per))
    a, b = p.letters(bound), q.letters(bound)
    for i in range(bound):
        if a[i] != b[i]:
            return i + 1
    raise AssertionError("distinct rational points agree beyond the periodicity bound")


def random_point(space: Space, rng: random.Random, max_pre: int = 3, max_per: int = 3) -> RationalPoint:
    root = rng.randint(1, space.r)
    pre = [rng.randint(1, space.n) for _ in range(rng.randint(0, max_pre))]
    per = [rng.randint(1, space.n) for _ in range(rng.randint(1, max_per))]
    return canonical_point(root, pre, per)


# text forms ---------------------------------------------------------------

def format_word(w: Sequence[int]) -> str:
    return ".".join(map(str, w))


def format_address(a: Address) -> str:
    return f"{a[0]}:{format_word(a[1:])}"


def format_point(p: RationalPoint) -> str:
    return f"{p.root}:{format_word(p.pre)}({format_word(p.per)})"


def parse_word(text: str, line: int, col: int) -> Word:
    if text == "":
        return ()
    out = []
    pos = col
    for part in text.split("."):
        if not part.isdigit():
            raise ParseError(f"bad letter {part!r}", line, pos)
        out.append(int(part))
        pos += len(part) + 1
    return tuple(out)


def _split_root(text: str, line: int, col: int) -> tuple[int, str]:
    root, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"missing ':' in {text!r}", line, col)
    if not root.isdigit():
        raise ParseError(f"bad root {root!r}", line, col)
    return int(root), rest


def parse_address(text: str, space: Space | None = None, line: int = 1, col: int = 1) -> Address:
    text = text.strip()
    root, rest = _split_root(text, line, col)
    a = (root,) + parse_word(rest, line, col + len(str(root)) + 1)
    if space is not None:
        space.check_address(a)
    return a


def parse_point(text: str, space: Space | None = None, line: int = 1, col: int = 1) -> RationalPoint:
    text = text.strip()
    root, rest = _split_root(text, line, col)
    base = col + len(str(root)) + 1
    i = rest.find("(")
    if i < 0 or not rest.endswith(")"):
        raise ParseError(f"point {text!r} needs a parenthesised period", line, col)
    pre = parse_word(rest[:i], line, base)
    per = parse_word(rest[i + 1 : -1], line, base + i + 1)
    if not per:
        raise ParseError("empty period", line, base + i)
    return canonical_point(root, pre, per, space)
