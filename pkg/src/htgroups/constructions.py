"""Witness constructions for stabilisers of finite rational sets.

Every free choice is made deterministically (lex-least cones, lex-last
splitting), so each construction is reproducible and serialisable.  Each
constructor asserts the properties it promises before returning.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import clopen
from .clopen import ClopenSet, complement, cone, is_subset, normalize, split_into, type_of
from .element import (
    Element,
    PartialMap,
    assemble,
    compose,
    compose_partial,
    identity,
    identity_locus,
    identity_on,
    image_clopen,
    invert,
    make_element,
    make_partial,
    parity,
    power,
    random_element,
    restrict,
)
from .errors import DomainError, LayerCapError, PreconditionError, TypeMismatchError
from .germs import RationalSet, fixed_pair, germ_exponent, germ_tuple, in_fix, in_fix0
from .words import Address, RationalPoint, Space, Word, common_prefix_length

LAYER_CAP = 256


# clopen sets of equal type ------------------------------------------------

def same_type_homeo(E: ClopenSet, E2: ClopenSet) -> PartialMap:
    """A Thompson-like homeomorphism ``E -> E2``.

    Both sets are split into the same number of cones and the cones paired in
    lex order.  Raises :class:`TypeMismatchError` when the types differ, in
    which case no such map exists.
    """
    if not E or not E2:
        raise DomainError("same_type_homeo needs nonempty sets")
    if E.space.n != E2.space.n:
        raise DomainError("sets live in spaces with different branching")
    if type_of(E) != type_of(E2):
        raise TypeMismatchError(
            f"no Thompson-like homeomorphism exists: types {type_of(E)} and {type_of(E2)} "
            f"differ mod {E.space.modulus}"
        )
    m = max(len(E), len(E2))
    return make_partial(E.space, E2.space, zip(split_into(E, m), split_into(E2, m)))


def as_element(p: PartialMap) -> Element:
    if p.dom_space != p.ran_space:
        raise DomainError("a group element must map a space to itself")
    return make_element(p.dom_space, p.pairs)


@dataclass(frozen=True)
class FixClopenIso:
    """Isomorphism from the elements supported on ``E`` onto ``V_{n,q}``."""

    E: ClopenSet
    q: int
    h: PartialMap  # E -> whole of the target space

    @property
    def target(self) -> Space:
        return self.h.ran_space

    def apply(self, g: Element) -> Element:
        if not is_subset(complement(self.E), identity_locus(g)):
            raise PreconditionError("element is not supported on E")
        inner = compose_partial(restrict(g, self.E), self.h.inverse())
        return as_element(compose_partial(self.h, inner))

    def unapply(self, g: Element) -> Element:
        if g.space != self.target:
            raise DomainError(f"expected an element of V_{{{self.target}}}")
        inner = compose_partial(restrict(g, clopen.whole(self.target)), self.h)
        return assemble([compose_partial(self.h.inverse(), inner), identity_on(complement(self.E))])


@lru_cache(maxsize=4096)
def fix_clopen_iso(E: ClopenSet) -> FixClopenIso:
    if not E or not complement(E):
        raise DomainError("E must be a proper nonempty clopen set")
    n = E.space.n
    q = type_of(E) or n - 1
    target = Space(n, q)
    return FixClopenIso(E, q, same_type_homeo(E, clopen.whole(target)))


# neighbourhoods -----------------------------------------------------------

def separating_depth(points, s: RationalPoint | None = None) -> int:
    """Least cone depth at which the cones around the points are pairwise distinct
    (or, with ``s`` given, distinct from the cone around ``s``)."""
    pts = list(points)
    if s is not None:
        lcps = [common_prefix_length(t, s) for t in pts if t != s]
    else:
        lcps = [common_prefix_length(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    return 1 + max(lcps, default=0)


def neighbourhood(points, depth: int, space: Space) -> ClopenSet:
    return normalize(space, [p.prefix(depth) for p in points])


# attracting elements ------------------------------------------------------

@lru_cache(maxsize=4096)
def attracting_element(S: RationalSet, s: RationalPoint) -> Element:
    """Element fixing ``S``, the identity near ``S - {s}``, with germ +1 at ``s``."""
    if s not in S:
        raise PreconditionError("s must belong to S")
    space = S.space
    others = S.without(s)
    depth = separating_depth(others.points, s)
    E = neighbourhood(others.points, depth, space)
    alpha, beta = s.head, s.per
    while True:
        if len(alpha) >= depth:
            rest = complement(E | cone(space, alpha))
            if rest:
                break
        alpha += beta
    image_rest = complement(E | cone(space, alpha + beta))
    f = assemble([
        identity_on(E),
        make_partial(space, space, [(alpha, alpha + beta)]),
        same_type_homeo(rest, image_rest),
    ])
    assert in_fix0(f, others), "attracting element moves a neighbourhood of S - {s}"
    assert germ_exponent(f, s) == 1, "attracting element has the wrong germ"
    return f


@lru_cache(maxsize=1024)
def attracting_all(S: RationalSet) -> Element:
    """Element of Fix(S) whose germ at every point of ``S`` is the attracting generator."""
    if not S.points:
        raise PreconditionError("S must be nonempty")
    f = identity(S.space)
    for s in S.points:
        f = compose(f, attracting_element(S, s))
    assert germ_tuple(f, S) == (1,) * len(S)
    return f


def attracting_cone(f: Element, s: RationalPoint) -> tuple[Address, Word]:
    """The maximal cone ``alpha`` around ``s`` on which ``f`` is ``alpha.psi -> alpha.beta.psi``."""
    u, v = fixed_pair(f, s)
    if len(v) - len(u) != len(s.per) or v[: len(u)] != u:
        raise PreconditionError("germ at s is not the attracting generator")
    return u, v[len(u):]


# ascending HNN structure --------------------------------------------------

@dataclass(frozen=True)
class HnnData:
    """Fix(S) as an ascending HNN extension of H = Fix(S + T) with stable letter ``f``."""

    S: RationalSet
    s: RationalPoint
    q: int
    f: Element
    alpha: Address
    beta: Word
    T: ClopenSet

    @property
    def space(self) -> Space:
        return self.S.space


def check_hnn(H: HnnData) -> None:
    """Raise AssertionError unless ``H`` satisfies every structural invariant."""
    space, f = H.space, H.f
    assert H.s in H.S, "distinguished point not in S"
    assert H.q >= 1
    assert in_fix(f, H.S), "stable letter does not fix S"
    assert germ_exponent(f, H.s) == 1, "stable letter germ at s is not +1"
    assert in_fix0(f, H.S.without(H.s)), "stable letter is not the identity near S - {s}"
    a, ab = cone(space, H.alpha), cone(space, H.alpha + H.beta)
    assert restrict(f, a).pairs == ((H.alpha, H.alpha + H.beta),), "f is not alpha -> alpha.beta on C_alpha"
    assert is_subset(ab, H.T) and is_subset(H.T, a), "T is not between C_alpha.beta and C_alpha"
    assert type_of(H.T) == (space.r - H.q) % space.modulus, "type(T) is not r - q"
    assert not any(t in H.T for t in H.S.without(H.s)), "T meets S - {s}"
    assert is_subset(H.T, image_clopen(invert(f), H.T)), "f^-1(T) does not contain T"


def hnn_data(S: RationalSet, s: RationalPoint, q: int) -> HnnData:
    if q < 1:
        raise DomainError("q must be at least 1")
    space = S.space
    f = attracting_element(S, s)
    alpha, beta = attracting_cone(f, s)
    deep = alpha + beta
    wanted = (space.r - q) % space.modulus
    extra = (wanted - 1) % space.modulus
    siblings = [deep[:-1] + (c,) for c in range(1, space.n + 1) if c != deep[-1]]
    T = normalize(space, [deep] + siblings[:extra])
    H = HnnData(S, s, q, f, alpha, beta, T)
    check_hnn(H)
    return H


def hnn_decompose(H: HnnData, g: Element, cap: int = LAYER_CAP) -> tuple[int, int, Element]:
    """Write ``g = f^(i+j) h f^(-j)`` with ``h`` the identity on ``T``."""
    if not in_fix(g, H.S):
        raise PreconditionError("element does not fix S")
    f = H.f
    i = germ_exponent(g, H.s)
    d = compose(power(f, -i), g)
    u, v = fixed_pair(d, H.s)
    assert u == v, "f^-i g is not the identity near s"
    U = cone(H.space, u)
    j = abs(i)
    img = image_clopen(power(f, j), H.T)
    while not is_subset(img, U):
        j += 1
        if j > cap:
            raise LayerCapError(f"no j <= {cap} pushes T into the identity cone")
        img = image_clopen(f, img)
    h = compose(power(f, -i - j), compose(g, power(f, j)))
    assert is_subset(H.T, identity_locus(h)), "h is not the identity on T"
    assert compose(power(f, i + j), compose(h, power(f, -j))) == g, "decomposition does not reproduce g"
    return i, j, h


# random elements of stabilisers -------------------------------------------

def random_supported(W: ClopenSet, rng: random.Random, budget: int = 3) -> Element:
    """Random element that is the identity off ``W``."""
    if not W or not complement(W):
        return identity(W.space)
    iso = fix_clopen_iso(W)
    return iso.unapply(random_element(iso.target, budget, rng))


def random_fix0_element(S: RationalSet, rng: random.Random, budget: int = 3) -> Element:
    space = S.space
    depth = separating_depth(S.points) + rng.randint(0, 2)
    while True:
        W = complement(neighbourhood(S.points, depth, space))
        if W:
            return random_supported(W, rng, budget)
        depth += 1


def random_fix_element(S: RationalSet, rng: random.Random, factors: int = 3, budget: int = 3) -> Element:
    """Random element of Fix(S): a product of attracting elements and their
    inverses with elements supported away from ``S``."""
    g = identity(S.space)
    for _ in range(factors):
        if S.points and rng.random() < 0.5:
            a = attracting_element(S, rng.choice(S.points))
            g = compose(g, a if rng.random() < 0.5 else invert(a))
        else:
            g = compose(g, random_fix0_element(S, rng, budget))
    return g


# verification of the HNN criterion ----------------------------------------

@dataclass
class CriterionCheck:
    name: str
    proof: bool
    sampled: bool
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.proof and self.sampled


@dataclass
class HnnReport:
    checks: list[CriterionCheck] = field(default_factory=list)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "samples": self.samples,
            "checks": [
                {"name": c.name, "ok": c.ok, "proof": c.proof, "sampled": c.sampled, "detail": c.detail}
                for c in self.checks
            ],
        }

    def __str__(self):
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.ok else 'FAIL'} {c.name} proof={int(c.proof)} sampled={int(c.sampled)} {c.detail}".rstrip())
        lines.append(f"{'PASS' if self.ok else 'FAIL'} overall samples={self.samples}")
        return "\n".join(lines)


def _in_H(H: HnnData, h: Element) -> bool:
    return in_fix(h, H.S) and is_subset(H.T, identity_locus(h))


def verify_hnn_criterion(H: HnnData, sample_count: int = 20, seed: int = 0, power_bound: int = 4) -> HnnReport:
    """Check the three conditions making Fix(S) an ascending HNN extension of H by f.

    (1) <f> meets H trivially, (2) f^-1 H f <= H, (3) Fix(S) is the union of the
    double cosets f^i H f^-j.  Each check has a universal argument and a sampled one.
    """
    rng = random.Random(seed)
    f, s = H.f, H.s
    report = HnnReport(samples=sample_count)

    decomposed, failures = [], []
    for _ in range(sample_count):
        g = random_fix_element(H.S, rng)
        try:
            i, j, h = hnn_decompose(H, g)
            decomposed.append(h)
        except (AssertionError, LayerCapError, DomainError) as exc:
            failures.append(str(exc) or type(exc).__name__)
    hs = [h for h in decomposed if _in_H(H, h)]
    away = complement(H.T | neighbourhood(H.S.points, separating_depth(H.S.points) + 1, H.space))
    for _ in range(max(1, sample_count // 4)):
        h = random_supported(away, rng)
        if _in_H(H, h):
            hs.append(h)

    # (1): every h in H is the identity near s (s lies inside C_alpha.beta <= T)
    germ_ok = germ_exponent(f, s) == 1 and is_subset(cone(H.space, H.alpha + H.beta), H.T)
    germ_ok = germ_ok and all(germ_exponent(power(f, k), s) == k for k in range(-power_bound, power_bound + 1))
    powers = [power(f, k) for k in range(-power_bound, power_bound + 1) if k]
    trivial = all(p != h for p in powers for h in hs)
    report.checks.append(CriterionCheck(
        "trivial_intersection", germ_ok, trivial, f"{len(hs)} elements of H against {len(powers)} powers"))

    # (2): f^-1(T) contains T, so f^-1 h f is again the identity on T
    ascending = is_subset(H.T, image_clopen(invert(f), H.T))
    conj_ok = all(_in_H(H, compose(invert(f), compose(h, f))) for h in hs)
    report.checks.append(CriterionCheck("ascending", ascending, conj_ok, f"{len(hs)} conjugates"))

    # (3): constructive decomposition of sampled elements of Fix(S)
    detail = f"{len(decomposed)}/{sample_count} decomposed"
    if failures:
        detail += f"; first failure: {failures[0]}"
    # universal reason: T <= C_alpha and f maps C_alpha onto C_alpha.beta, so f^j(T)
    # shrinks into every neighbourhood of s
    a = cone(H.space, H.alpha)
    shrinking = is_subset(H.T, a) and restrict(f, a).pairs == ((H.alpha, H.alpha + H.beta),)
    report.checks.append(CriterionCheck("covering", shrinking, not failures, detail))
    return report


# abelianization -----------------------------------------------------------

@dataclass(frozen=True)
class AbelImage:
    """Image in Z^|S| + A, with A = Z/2 for odd n and trivial for even n."""

    germs: tuple[int, ...]
    parity: int

    def __add__(self, other: AbelImage) -> AbelImage:
        if len(self.germs) != len(other.germs):
            raise DomainError("abelian images of different rank")
        return AbelImage(tuple(a + b for a, b in zip(self.germs, other.germs)), (self.parity + other.parity) % 2)

    def __neg__(self):
        return AbelImage(tuple(-a for a in self.germs), self.parity)

    def is_zero(self) -> bool:
        return not any(self.germs) and self.parity == 0

    def __str__(self):
        from .formats import format_abel

        return format_abel(self)


def abelianize(S: RationalSet, g: Element) -> AbelImage:
    if not in_fix(g, S):
        raise PreconditionError("element does not fix S")
    return AbelImage(germ_tuple(g, S), parity(g))


def in_commutator(S: RationalSet, g: Element) -> bool:
    """Membership in [Fix(S), Fix(S)]: identity near S and even parity."""
    return in_fix0(g, S) and parity(g) == 0


def order_two_element(S: RationalSet) -> Element:
    """Involution swapping two sibling cones away from ``S``."""
    space = S.space
    depth = max(2, separating_depth(S.points))
    while True:
        W = complement(neighbourhood(S.points, depth, space))
        if W:
            break
        depth += 1
    w = W.cones[0]
    E, E2 = cone(space, w + (1,)), cone(space, w + (2,))
    h = same_type_homeo(E, E2)
    g = assemble([h, h.inverse(), identity_on(complement(E | E2))])
    assert compose(g, g).is_identity() and not g.is_identity()
    assert in_fix0(g, S)
    assert space.n % 2 == 0 or parity(g) == 1
    return g
