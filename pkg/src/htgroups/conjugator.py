"""Explicit conjugation carrying Fix(S) onto Fix(S') when |S| = |S'|.

The conjugating homeomorphism ``h`` has infinitely many pieces: ``h0`` on a
clopen set ``E`` and ``f'^(k-1) h1 f^(1-k)`` on each layer
``E_k = f^k(E) - f^(k-1)(E)``.  An element ``g`` of Fix(S) agrees with a power
of ``f`` near each point of ``S``, so ``h g h^-1`` only needs finitely many
layers plus a power of ``f'`` near each point of ``S'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .clopen import ClopenSet, complement, cone, intersection, is_subset, normalize, split_into, type_of
from .constructions import LAYER_CAP, attracting_all, attracting_cone, same_type_homeo
from .element import (
    Element,
    PartialMap,
    _reduce,
    _sorted_pairs,
    assemble,
    compose,
    compose_partial,
    image_clopen,
    invert,
    make_partial,
    power,
    restrict,
)
from .errors import DomainError, LayerCapError, NotIsomorphicError, PreconditionError
from .germs import RationalSet, fixed_pair, germ_exponent, germ_tuple, in_fix
from .words import Address, RationalPoint, Word


def _union_maps(maps) -> PartialMap:
    first = maps[0]
    pairs = {}
    for m in maps:
        pairs.update(m.pairs)
    return PartialMap(first.dom_space, first.ran_space, _sorted_pairs(_reduce(pairs, first.n)))


@dataclass(frozen=True)
class ConjugatorData:
    """Everything needed to evaluate ``g -> h g h^-1`` from Fix(S) to Fix(S')."""

    S: RationalSet
    S2: RationalSet
    phi: tuple[tuple[RationalPoint, RationalPoint], ...]
    f: Element
    E: ClopenSet
    f2: Element
    E2: ClopenSet
    h0: PartialMap
    h1: PartialMap
    cones: tuple[tuple[Address, Word], ...]  # attracting cone around each s, in phi order
    cones2: tuple[tuple[Address, Word], ...]
    _layers: list = field(default_factory=list, compare=False, repr=False)

    @property
    def E1(self) -> ClopenSet:
        return image_clopen(self.f, self.E) - self.E

    @property
    def E2_1(self) -> ClopenSet:
        return image_clopen(self.f2, self.E2) - self.E2

    def layer(self, k: int) -> PartialMap:
        """``h`` restricted to ``E_k`` (``E_0 = E``)."""
        if not self._layers:
            self._layers.extend([self.h0, self.h1])
        finv = invert(self.f)
        while len(self._layers) <= k:
            prev = self._layers[-1]
            back = restrict(finv, image_clopen(self.f, prev.domain()))
            step = compose_partial(prev, back)
            self._layers.append(compose_partial(restrict(self.f2, prev.image()), step))
        return self._layers[k]

    def up_to(self, k: int) -> PartialMap:
        """``h`` restricted to ``f^k(E)``."""
        return _union_maps([self.layer(i) for i in range(k + 1)])


def _attracting_cones(f: Element, S: RationalSet) -> dict:
    cones = {s: attracting_cone(f, s) for s in S.points}
    # shrink the cones until their complement is nonempty
    while not complement(normalize(S.space, [a for a, _ in cones.values()])):
        cones = {s: (a + b, b) for s, (a, b) in cones.items()}
    return cones


def check_conjugator(C: ConjugatorData, depth: int = 3) -> None:
    """Raise AssertionError unless ``C`` satisfies the structural invariants."""
    S, S2 = C.S, C.S2
    assert len(S) == len(S2) == len(C.phi)
    assert sorted(s for s, _ in C.phi) == list(S.points)
    assert sorted(t for _, t in C.phi) == list(S2.points)
    for f, P, cones in ((C.f, S, C.cones), (C.f2, S2, C.cones2)):
        assert in_fix(f, P) and germ_tuple(f, P) == (1,) * len(P), "f is not attracting at every point"
    for (s, s2), (a, b), (a2, b2) in zip(C.phi, C.cones, C.cones2):
        assert restrict(C.f, cone(S.space, a)).pairs == ((a, a + b),)
        assert restrict(C.f2, cone(S2.space, a2)).pairs == ((a2, a2 + b2),)
        assert s in cone(S.space, a) and s2 in cone(S2.space, a2)
    for f, E, P, cones in ((C.f, C.E, S, C.cones), (C.f2, C.E2, S2, C.cones2)):
        fE = image_clopen(f, E)
        assert E and is_subset(E, fE) and fE != E, "E is not strictly inside f(E)"
        outside = complement(E)
        assert is_subset(outside, normalize(P.space, [a for a, _ in cones])), "complement of E leaves the cones"
        for _ in range(depth):
            outside = image_clopen(f, outside)
        near = normalize(P.space, [p.prefix(depth + 1) for p in P.points])
        assert is_subset(outside, near), "iterates of E do not exhaust the complement of S"
    assert type_of(C.E) == type_of(C.E2)
    assert C.h0.domain() == C.E and C.h0.image() == C.E2
    assert C.h1.domain() == C.E1 and C.h1.image() == C.E2_1
    for (a, _), (a2, _) in zip(C.cones, C.cones2):
        piece = intersection(C.E1, cone(S.space, a))
        assert image_clopen(C.h1, piece) == intersection(C.E2_1, cone(S2.space, a2)), "h1 does not respect phi"


def conjugator(S: RationalSet, S2: RationalSet, phi=None) -> ConjugatorData:
    """Build the conjugating data for a bijection ``phi`` (a mapping or pairs; default: sorted order)."""
    if len(S) != len(S2):
        raise NotIsomorphicError(
            f"Fix(S) and Fix(S') are not isomorphic: |S| = {len(S)} but |S'| = {len(S2)}"
        )
    if not S.points:
        raise DomainError("S must be nonempty")
    if S.space.n != S2.space.n:
        raise DomainError("spaces have different branching")
    pairs = list(zip(S.points, S2.points)) if phi is None else list(dict(phi).items())
    if sorted(s for s, _ in pairs) != list(S.points) or sorted(t for _, t in pairs) != list(S2.points):
        raise DomainError("phi is not a bijection S -> S'")
    pairs.sort()

    f, f2 = attracting_all(S), attracting_all(S2)
    cones, cones2 = _attracting_cones(f, S), _attracting_cones(f2, S2)
    E = complement(normalize(S.space, [a for a, _ in cones.values()]))
    E2 = complement(normalize(S2.space, [a for a, _ in cones2.values()]))

    # enlarge E2 inside f2(E2) until the types agree
    mod = S.space.modulus
    need = (type_of(E) - type_of(E2)) % mod
    if need:
        layer = image_clopen(f2, E2) - E2
        m = len(layer)
        while m < need:
            m += mod
        E2 = E2 | normalize(S2.space, split_into(layer, m)[:need])

    E1 = image_clopen(f, E) - E
    E2_1 = image_clopen(f2, E2) - E2
    pieces = []
    for s, s2 in pairs:
        a, a2 = cones[s][0], cones2[s2][0]
        pieces.append(same_type_homeo(intersection(E1, cone(S.space, a)), intersection(E2_1, cone(S2.space, a2))))
    h1 = make_partial(S.space, S2.space, [pr for p in pieces for pr in p.pairs])

    C = ConjugatorData(
        S, S2, tuple(pairs), f, E, f2, E2,
        same_type_homeo(E, E2), h1,
        tuple(cones[s] for s, _ in pairs), tuple(cones2[t] for _, t in pairs),
    )
    check_conjugator(C)
    return C


def conjugate(C: ConjugatorData, g: Element, cap: int = LAYER_CAP) -> Element:
    """``h g h^-1`` as an element of V_{n,r}, for ``g`` in Fix(S)."""
    if not in_fix(g, C.S):
        raise PreconditionError("element does not fix S")
    S, S2, f = C.S, C.S2, C.f
    germs = [germ_exponent(g, s) for s, _ in C.phi]

    # cone around each s on which g agrees with f^k
    agree = []
    for (s, _), k in zip(C.phi, germs):
        u, v = fixed_pair(compose(power(f, -k), g), s)
        assert u == v
        agree.append(cone(S.space, u))

    outside = complement(C.E)
    near = [intersection(outside, cone(S.space, a)) for a, _ in C.cones]
    N = max((abs(k) for k in germs), default=0)
    fN = power(f, N)
    near = [image_clopen(fN, P) for P in near]
    while not all(is_subset(P, U) for P, U in zip(near, agree)):
        N += 1
        if N > cap:
            raise LayerCapError(f"layer index exceeds cap {cap}")
        near = [image_clopen(f, P) for P in near]

    # layers needed to contain g(f^N(E))
    D = complement(normalize(S.space, [a for P in near for a in P.cones]))
    target = image_clopen(g, D)
    M = N
    far = normalize(S.space, [a for P in near for a in P.cones])
    while not is_subset(target, complement(far)):
        M += 1
        if M > cap:
            raise LayerCapError(f"layer index exceeds cap {cap}")
        far = image_clopen(f, far)

    HN = C.up_to(N)
    middle = compose_partial(C.up_to(M), compose_partial(restrict(g, D), HN.inverse()))

    pieces = [middle]
    outside2 = complement(C.E2)
    fN2 = power(C.f2, N)
    for (a2, _), k in zip(C.cones2, germs):
        region = image_clopen(fN2, intersection(outside2, cone(S2.space, a2)))
        if region:
            pieces.append(restrict(power(C.f2, k), region))
    result = assemble(pieces)

    assert in_fix(result, S2), "conjugate does not fix S'"
    assert [germ_exponent(result, t) for _, t in C.phi] == germs, "conjugate changed the germs"
    return result
