"""Command-line front end: ``cobord <command> ...``.

Manifolds are written in a small expression language where ``x`` (product)
binds tighter than ``#`` (connected sum), e.g. ``"HP1 x S2 # T6"``.

Exit status: 0 when a result was computed (a No verdict included), 1 on
usage or input errors, 2 when the verdict is Unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import ManifoldSyntaxError, NoSolution, TopologyChangeError
from .expr import manifold
from .kink import kink_of, parity_rule_applies, spin_parity_check
from .manifolds import Catalog, CobordismDescriptor, euler_characteristic, semi_characteristic
from .metric import (
    extract_timelike_line,
    generalized_eigen,
    lorentz_from_riemannian,
    orthogonal_complement,
    pullback_is_riemannian,
    signature_counts,
)
from .rules import Answer, classify, decide_lorentzian, decide_spin_lorentzian, decide_weak
from .witness import kink_menu, menu_for_dimension, prescribed_kink_recipe, realize, solve_counts

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _envelope(command: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


# -- commands -------------------------------------------------------------

def cmd_invariants(args, cat):
    m = manifold(args.expr, cat)
    body = {"manifold": m.to_json(), "euler": euler_characteristic(m)}
    if m.dim % 2:
        body["semi_characteristic"] = {"Z2": semi_characteristic(m, "Z2"), "Q": semi_characteristic(m, "Q")}
    lines = [
        m.name,
        f"dim            {m.dim}",
        f"betti Q        {' '.join(map(str, m.betti_q))}",
        f"betti Z/2      {' '.join(map(str, m.betti_z2))}",
        f"χ              {body['euler']}",
    ]
    if m.dim % 2:
        sc = body["semi_characteristic"]
        lines.append(f"χ̂ (Z/2, Q)     {sc['Z2']}, {sc['Q']}")
    if m.dim % 4 == 0 and m.dim > 0:
        lines.append(f"σ              {_tri(m.signature)}")
    lines += [
        f"orientable     {_tri(m.orientable)}",
        f"spin           {_tri(m.spin)}",
        f"stably par.    {_tri(m.stably_parallelizable)}",
        f"bounds         {_tri(m.null_cobordant)}",
    ]
    return EXIT_OK, _envelope("invariants", body), "\n".join(lines)


def _tri(v):
    if v is None:
        return "unknown"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _spin_known(value: Optional[str]) -> Optional[bool]:
    return None if value is None else value == "yes"


def _verdict_output(command, verdict, a, b):
    body = {"n1": a.name, "n2": b.name, "verdict": verdict.to_json()}
    text = [str(verdict)]
    if verdict.witness is not None:
        text.append(f"witness {verdict.witness}")
    code = EXIT_UNKNOWN if verdict.answer is Answer.UNKNOWN else EXIT_OK
    return code, _envelope(command, body), "\n".join(text)


def cmd_decide(args, cat):
    a, b = manifold(args.n1, cat), manifold(args.n2, cat)
    known = _spin_known(args.spin_cobordant)
    if args.weak:
        verdict = decide_weak(a, b, require_spin=args.spin, spin_cobordism_known=known)
    elif args.spin:
        verdict = decide_spin_lorentzian(a, b, known)
    else:
        verdict = decide_lorentzian(a, b)
    return _verdict_output("decide", verdict, a, b)


def cmd_weak(args, cat):
    a, b = manifold(args.n1, cat), manifold(args.n2, cat)
    verdict = decide_weak(a, b, require_spin=args.spin, spin_cobordism_known=_spin_known(args.spin_cobordant))
    return _verdict_output("weak", verdict, a, b)


def cmd_witness(args, cat):
    if args.n is not None:
        menu = menu_for_dimension(args.n)
    else:
        menu = kink_menu(args.kink_dim, spin=args.spin)
    recipe = solve_counts(args.chi, menu, args.target)
    body = {"menu": menu.to_json(), "recipe": recipe.to_json()}
    counts = ", ".join(f"{k}:{v}" for k, v in recipe.nonzero_counts.items())
    text = f"counts {{{counts}}}\n{recipe}"
    return EXIT_OK, _envelope("witness", body), text


def cmd_kink(args, cat):
    data = json.loads(Path(args.file).read_text())
    cob = CobordismDescriptor.from_json(data, resolve=lambda s: manifold(s, cat))
    body = {"cobordism": cob.to_json()}
    lines = []
    if args.prescribe is not None:
        recipe = prescribed_kink_recipe(cob, args.prescribe, spin=args.spin)
        built = realize(recipe)
        body["recipe"] = recipe.to_json()
        lines.append(f"recipe {recipe}")
        cob = built
        body["realized"] = built.to_json()
    report = kink_of(cob)
    body["report"] = report.to_json()
    lines.insert(0, f"kink {report.kink} ({report.formula_used})")
    if report.parity_ok is not None:
        lines.append(f"spin parity {'ok' if report.parity_ok else 'violated'}")
    if args.claimed is not None:
        ok = spin_parity_check(cob, args.claimed)
        body["claimed"] = {"kink": args.claimed, "parity_ok": ok}
        lines.append(f"claimed kink {args.claimed}: parity {'consistent' if ok else 'inconsistent'}")
    elif cob.spin and not parity_rule_applies(cob.dim) and cob.dim % 2 == 0:
        lines.append(f"no spin parity constraint in dimension {cob.dim}")
    return EXIT_OK, _envelope("kink", body), "\n".join(lines)


def cmd_classify(args, cat):
    m = manifold(args.expr, cat)
    result = classify(m)
    return EXIT_OK, _envelope("classify", {"manifold": m.name, "classification": result.to_json()}), str(result)


def _load_array(arg: str):
    text = arg.strip()
    if not text.startswith("["):
        text = Path(arg).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg}: not a JSON array ({exc.msg})") from None


def _rounded(xs):
    return [float(x) for x in xs]


def cmd_metric(args, cat):
    g_r = _load_array(args.gr)
    if (args.v is None) == (args.g is None):
        raise UsageError("metric needs exactly one of --v (construct) or --g (extract)")
    if args.v is not None:
        g = lorentz_from_riemannian(g_r, _load_array(args.v))
        v = _load_array(args.v)
        body = {
            "mode": "construct",
            "g": g.matrix.tolist(),
            "eigenvalues": _rounded(g.eigenvalues()),
            "signature": signature_counts(g),
            "g_vv": g(v, v),
        }
        complement = orthogonal_complement(g_r, v)
        body["pullback_riemannian"] = pullback_is_riemannian(g, complement) if len(complement) else True
        lines = [
            "g = " + json.dumps([[round(x, 12) for x in row] for row in body["g"]]),
            f"eigenvalues {[round(x, 12) for x in body['eigenvalues']]}",
            f"signature ({body['signature']['negative']}, {body['signature']['positive']})",
            f"g(v, v) = {body['g_vv']:.12g}",
            f"orthogonal complement spacelike: {_tri(body['pullback_riemannian'])}",
        ]
    else:
        g = _load_array(args.g)
        line = extract_timelike_line(g, g_r)
        lam, _ = generalized_eigen(g, g_r)
        body = {
            "mode": "extract",
            "line_field": line.vector.tolist(),
            "generalized_eigenvalues": _rounded(lam),
            "signature": signature_counts(g),
        }
        lines = [
            f"line field {[round(x, 12) for x in body['line_field']]}",
            f"generalized eigenvalues {[round(x, 12) for x in body['generalized_eigenvalues']]}",
        ]
    if args.basis is not None:
        body["basis_pullback_riemannian"] = pullback_is_riemannian(body.get("g", g), _load_array(args.basis))
        lines.append(f"pullback on basis Riemannian: {_tri(body['basis_pullback_riemannian'])}")
    return EXIT_OK, _envelope("metric", body), "\n".join(lines)


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the versioned JSON document instead of text")

    parser = _Parser(
        prog="cobord",
        description=__doc__.split("\n\n")[0],
        epilog="In expressions 'x' binds tighter than '#': 'HP1 x S2 # T6' is (HP1 x S2) # T6. "
        f"User descriptors are loaded from the JSON file named by $COBORD_CATALOG.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="Betti numbers, chi, semi-characteristic, flags")
    p.add_argument("expr")
    p.set_defaults(func=cmd_invariants)

    for name, helptext in (("decide", "existence of a (spin, weak) Lorentzian cobordism"),
                           ("weak", "existence of a weak Lorentzian cobordism")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("n1")
        p.add_argument("n2")
        p.add_argument("--spin", action="store_true", help="require the cobordism to be spin")
        p.add_argument("--spin-cobordant", choices=("yes", "no"),
                       help="supply the spin cobordism answer where it is not computed")
        if name == "decide":
            p.add_argument("--weak", action="store_true", help="weak Lorentzian cobordism")
            p.set_defaults(func=cmd_decide)
        else:
            p.set_defaults(func=cmd_weak)

    p = sub.add_parser("witness", parents=[common], help="connected-sum counts moving chi to a target")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="boundary dimension (odd); spin menu for a Lorentzian witness")
    which.add_argument("--kink-dim", type=int, help="cobordism dimension (even); menu for prescribing kinks")
    p.add_argument("--chi", type=int, required=True, help="Euler characteristic of the base cobordism")
    p.add_argument("--target", type=int, default=0)
    p.add_argument("--spin", action="store_true", help="with --kink-dim, use only spin summands")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("kink", parents=[common], help="kink number of a cobordism descriptor file")
    p.add_argument("file", help="JSON cobordism descriptor; boundary entries may be expressions")
    p.add_argument("--claimed", type=int, help="check a claimed kink against the spin parity rule")
    p.add_argument("--prescribe", type=int, help="first sum in summands so that the kink equals this value")
    p.add_argument("--spin", action="store_true", help="with --prescribe, use only spin summands")
    p.set_defaults(func=cmd_kink)

    p = sub.add_parser("classify", parents=[common], help="class in the spin Lorentzian cobordism group, 3 <= n <= 7")
    p.add_argument("expr")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("metric", parents=[common], help="pointwise Lorentzian form from g_R and a line field, or back")
    p.add_argument("--gr", required=True, help="Riemannian form: JSON file or inline JSON array")
    p.add_argument("--v", help="line field vector (construct g)")
    p.add_argument("--g", help="Lorentzian form (extract its timelike line)")
    p.add_argument("--basis", help="hypersurface basis to test for a Riemannian pullback")
    p.set_defaults(func=cmd_metric)
    return parser


def _error_body(exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ManifoldSyntaxError):
        err["position"] = exc.position
    if isinstance(exc, NoSolution):
        err["modulus"] = exc.modulus
        err["residue"] = exc.residue
    return err


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cat = Catalog.from_environment()
        code, doc, text = args.func(args, cat)
    except (TopologyChangeError, UsageError, ValueError, OSError) as exc:
        if args.json:
            print(json.dumps(_envelope(args.command, {"error": _error_body(exc)}), ensure_ascii=False), file=stdout)
        else:
            print(f"error [{type(exc).__name__}]: {exc}", file=stderr)
            if isinstance(exc, ManifoldSyntaxError):
                print(exc.caret(), file=stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(doc, ensure_ascii=False), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
