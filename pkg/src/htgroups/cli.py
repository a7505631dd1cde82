"""Command-line front end: ``htg <verb> [options]``.

Elements are read from stdin in the text (or JSON) format; points, point sets
and clopen sets are given as options in their text forms.  Exit status is 0
on success, 1 on a domain error and 2 when the input cannot be parsed or
fails validation.  No partial output is written on error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import formats as F
from .clopen import parse_clopen, random_clopen, type_of
from .conjugator import conjugate, conjugator
from .constructions import (
    LAYER_CAP,
    abelianize,
    attracting_all,
    attracting_element,
    hnn_data,
    hnn_decompose,
    in_commutator,
    order_two_element,
    random_fix_element,
    same_type_homeo,
    verify_hnn_criterion,
)
from .element import Element, compose, evaluate, invert, power, random_element
from .errors import DomainError, HTGError, ParseError, ValidationError
from .germs import germ_exponent, parse_rational_set, random_rational_set
from .words import Space, format_point, parse_point, random_point


class Output:
    """A result in both renderings."""

    def __init__(self, text: str, data):
        self.text = text
        self.data = data


def _space(text: str) -> Space:
    try:
        n, r = (int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"space must be written n,r, got {text!r}") from None
    return Space(n, r)


def _stdin_text(args) -> str:
    return args.stdin.read()


def _one_element(args) -> Element:
    return F.parse_element(_stdin_text(args))


def _elements(args) -> list[Element]:
    text = _stdin_text(args)
    if text.lstrip().startswith("[") or text.lstrip().startswith("{"):
        obj = F._loads(text)
        if isinstance(obj, dict):
            obj = obj["elements"] if "elements" in obj else [obj]
        if not isinstance(obj, list):
            raise ParseError("expected an element or a list of elements")
        return [F.element_from_json(o) for o in obj]
    return F.parse_elements(text)


def _points(args, space=None):
    if args.points is None:
        raise ParseError("--points is required")
    return parse_rational_set(args.points, space or args.space)


def _at(args, S):
    if args.at is None:
        if len(S) != 1:
            raise ParseError("--at is required when S has more than one point")
        return S.points[0]
    s = parse_point(args.at, S.space)
    if s not in S:
        raise DomainError(f"{format_point(s)} is not in S")
    return s


def _element_out(g: Element) -> Output:
    return Output(F.format_element(g), F.element_to_json(g))


def _elements_out(gs, comment=None, extra=None) -> Output:
    text = "\n\n".join(F.format_element(g) for g in gs)
    if comment:
        text = f"# {comment}\n{text}"
    data = {"elements": [F.element_to_json(g) for g in gs]}
    data.update(extra or {})
    return Output(text, data)


# verbs --------------------------------------------------------------------

def cmd_canon(args):
    return _elements_out(_elements(args))


def cmd_mul(args):
    gs = _elements(args)
    if not gs:
        raise ParseError("no elements on input")
    out = gs[0]
    for g in gs[1:]:
        if g.space != out.space:
            raise DomainError(f"space mismatch: {out.space} vs {g.space}")
        out = compose(out, g)
    return _element_out(out)


def cmd_inv(args):
    return _elements_out([invert(g) for g in _elements(args)])


def cmd_eval(args):
    g = _one_element(args)
    if args.point is None:
        raise ParseError("--point is required")
    p = evaluate(g, parse_point(args.point, g.space))
    return Output(format_point(p), {"point": format_point(p)})


def cmd_germ(args):
    g = _one_element(args)
    if args.point is None:
        raise ParseError("--point is required")
    k = germ_exponent(g, parse_point(args.point, g.space))
    return Output(F.format_germ(k), {"germ": k})


def cmd_abel(args):
    g = _one_element(args)
    a = abelianize(_points(args, g.space), g)
    return Output(F.format_abel(a), F.abel_to_json(a))


def cmd_commutator_test(args):
    g = _one_element(args)
    ok = in_commutator(_points(args, g.space), g)
    return Output(str(ok).lower(), {"in_commutator": ok})


def cmd_attract(args):
    S = _points(args)
    g = attracting_all(S) if args.at is None else attracting_element(S, _at(args, S))
    return _element_out(g)


def cmd_order_two(args):
    return _element_out(order_two_element(_points(args)))


def cmd_same_type(args):
    if args.clopen is None or args.target is None:
        raise ParseError("--clopen and --target are required")
    E = parse_clopen(args.clopen, args.space)
    E2 = parse_clopen(args.target, args.target_space or args.space)
    h = same_type_homeo(E, E2)
    return Output(F.format_partial(h), F.partial_to_json(h))


def _hnn(args):
    if args.bundle:
        with open(args.bundle) as fh:
            return F.hnn_from_json(F._loads(fh.read()))
    S = _points(args)
    return hnn_data(S, _at(args, S), args.q)


def _hnn_text(H) -> str:
    return "\n".join([
        f"# S {F.format_rational_set(H.S)}",
        f"# s {format_point(H.s)}",
        f"# q {H.q}",
        f"# alpha {F.format_address(H.alpha)}",
        f"# beta {F.format_word(H.beta)}",
        f"# T {F.format_clopen(H.T)}",
        F.format_element(H.f),
    ])


def cmd_hnn_build(args):
    H = _hnn(args)
    return Output(_hnn_text(H), F.hnn_to_json(H))


def cmd_hnn_decompose(args):
    H = _hnn(args)
    g = _one_element(args)
    i, j, h = hnn_decompose(H, g, args.depth)
    blocks = [power(H.f, i + j), h, power(H.f, -j)]
    return _elements_out(blocks, comment=f"i={i} j={j}", extra={"i": i, "j": j})


def _phi(text, S, S2):
    if text is None:
        return None
    pairs = []
    for part in text.split(","):
        left, arrow, right = part.partition("->")
        if not arrow:
            raise ParseError(f"phi entries must be 'p -> p2', got {part.strip()!r}")
        pairs.append((parse_point(left, S.space), parse_point(right, S2.space)))
    return pairs


def cmd_conjugate(args):
    g = _one_element(args)
    S = _points(args, g.space)
    if args.target_points is None:
        raise ParseError("--target-points is required")
    space2 = args.target_space or g.space
    S2 = parse_rational_set(args.target_points, space2)
    C = conjugator(S, S2, _phi(args.phi, S, S2))
    out = _element_out(conjugate(C, g, args.depth))
    if args.bundle_out:
        with open(args.bundle_out, "w") as fh:
            fh.write(F.dumps(F.conjugator_to_json(C)) + "\n")
    return out


def cmd_random(args):
    if args.seed is None:
        raise ParseError("--seed is required for random")
    rng = random.Random(args.seed)
    space, kind = args.space, args.kind
    if kind == "element":
        return _element_out(random_element(space, args.budget, rng))
    if kind == "fix":
        return _element_out(random_fix_element(_points(args), rng, budget=args.budget))
    if kind == "point":
        p = random_point(space, rng)
        return Output(format_point(p), {"point": format_point(p)})
    if kind == "clopen":
        E = random_clopen(space, rng, expansions=args.budget)
        return Output(F.format_clopen(E), {"clopen": F.format_clopen(E), "type": type_of(E)})
    S = random_rational_set(space, rng, args.size)
    return Output(F.format_rational_set(S), F.rational_set_to_json(S))


def cmd_verify(args):
    H = _hnn(args)
    rep = verify_hnn_criterion(H, args.samples, args.seed or 0)
    return Output(str(rep), rep.as_dict())


VERBS = {
    "canon": (cmd_canon, "canonical form of each element on stdin"),
    "mul": (cmd_mul, "product g1 g2 ... of the elements on stdin (rightmost acts first)"),
    "inv": (cmd_inv, "inverse of each element on stdin"),
    "eval": (cmd_eval, "image of --point under the element on stdin"),
    "germ": (cmd_germ, "germ exponent at --point"),
    "abel": (cmd_abel, "abelianization image for S = --points"),
    "hnn-build": (cmd_hnn_build, "ascending HNN data for S, s, q"),
    "hnn-decompose": (cmd_hnn_decompose, "write g = f^(i+j) h f^-j"),
    "conjugate": (cmd_conjugate, "carry g in Fix(S) to Fix(S')"),
    "commutator-test": (cmd_commutator_test, "membership in the commutator subgroup of Fix(S)"),
    "attract": (cmd_attract, "attracting element at --at (or at every point)"),
    "order-two": (cmd_order_two, "an involution in Fix_0(S)"),
    "same-type": (cmd_same_type, "Thompson-like homeomorphism between two clopen sets"),
    "random": (cmd_random, "seeded random value"),
    "verify": (cmd_verify, "check the HNN criterion and print the report"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int)
    common.add_argument("--space", type=_space, default=Space(2, 1), help="n,r (default 2,1)")
    common.add_argument("--depth", type=int, default=LAYER_CAP, help="layer cap")
    common.add_argument("--point")
    common.add_argument("--points", help="point set, e.g. '{1:(1), 1:(2)}'")
    common.add_argument("--at", help="distinguished point of S")
    common.add_argument("--q", type=int, default=1)
    common.add_argument("--bundle", help="HNN bundle (JSON) to load instead of building")
    common.add_argument("--target-space", type=_space)
    common.add_argument("--target-points")
    common.add_argument("--phi", help="bijection 'p1 -> p1b, p2 -> p2b'")
    common.add_argument("--bundle-out", help="write the conjugator bundle here")
    common.add_argument("--clopen")
    common.add_argument("--target")
    common.add_argument("--kind", choices=["element", "fix", "point", "clopen", "set"], default="element")
    common.add_argument("--budget", type=int, default=3)
    common.add_argument("--size", type=int, default=2)
    common.add_argument("--samples", type=int, default=20)

    parser = argparse.ArgumentParser(prog="htg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for name, (_, help_) in VERBS.items():
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _exit_code(exc: HTGError) -> int:
    return 2 if isinstance(exc, (ParseError, ValidationError)) else 1


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    args = build_parser().parse_args(argv)
    args.stdin = stdin
    try:
        out = VERBS[args.verb][0](args)
    except HTGError as exc:
        if args.json:
            stdout.write(json.dumps({"error": {"code": exc.code, "message": str(exc)}}) + "\n")
        else:
            stderr.write(f"error[{exc.code}]: {exc}\n")
        return _exit_code(exc)
    stdout.write((F.dumps(out.data) if args.json else out.text) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
