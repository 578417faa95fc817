"""Command-line interface: ``luroth <command> <quartic> [options]``.

The quartic is an expression such as ``"x^3*y + y^3*z + z^3*x"`` or a named
fixture prefixed with ``@`` (``@klein``, ``@luroth``, ...).  Exit codes:
0 success, 1 domain or usage error, 2 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from importlib import resources

from . import __version__
from . import fixtures as fx
from .detector import (
    DEFAULT_BUDGET,
    DEFAULT_HEIGHT_BOUND,
    DEFAULT_PRIME,
    DEFAULT_VERIFY_PRIMES,
    LUROTH,
    Classification,
    ConfigurationError,
    PentalateralError,
    bitangent_ideal,
    check_field,
    classify,
    extract_pentalateral,
    recover_clebsch,
    verification_primes,
    verify_pentalateral_conic,
)
from .exactla import det, rank
from .groebner.engine import GroebnerBudgetExceeded
from .groebner.zerodim import PreconditionError
from .invariants import (
    SingularRecoveryError,
    build_L,
    catalecticant,
    clebsch_invariant,
    conic_matrix,
    cubic_invariant,
    poly_sqrt,
    trilinear_A,
    wm_quartic,
)
from .parser import DegreeError, ParseError, format_form, parse_form, parse_quartic
from .plot import DEFAULT_WINDOW, render_svg
from .ring import QQ, PrimeField, TernaryForm, field_from_spec, format_coeff, format_poly

SCHEMA_VERSION = "1.0"
SCHEMA_FILE = "report.schema.json"
COMMANDS = ("invariants", "wm", "bitangents", "detect", "pentalateral", "plot")


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# serialisation
# --------------------------------------------------------------------------


def el(c) -> str:
    if isinstance(c, Fraction):
        return format_coeff(c)
    return str(c)


def _vec(v) -> list:
    return [el(c) for c in v]


def _hilbert(H) -> dict:
    return {"dimension": H.dimension, "degree": H.degree, "numerator": list(H.numerator)}


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return el(obj)
    if isinstance(obj, TernaryForm):
        return format_form(obj)
    return str(obj)


def classification_dict(c: Classification) -> dict:
    out = {
        "tag": c.tag,
        "delta": _json_safe(c.diagnostics.get("delta")),
        "diagnostics": _json_safe(c.diagnostics),
        "conic": _vec(c.conic.coeffs) if c.conic is not None else None,
        "conic_expression": format_form(c.conic) if c.conic is not None else None,
        "clebsch": format_form(c.clebsch) if c.clebsch is not None else None,
        "pentalateral": pentalateral_dict(c.pentalateral) if c.pentalateral is not None else None,
        "notes": list(c.notes),
    }
    return out


def pentalateral_dict(p) -> dict:
    return {
        "lines": [_vec(l.coeffs) for l in p.lines],
        "line_expressions": [format_form(l) for l in p.lines],
        "weights": _vec(p.weights),
        "l0": _vec(p.l0.coeffs),
        "alpha0": el(p.alpha0),
        "vertices_on_curve": p.vertices_on_curve,
    }


def load_schema() -> dict:
    return json.loads(resources.files("luroth.data").joinpath(SCHEMA_FILE).read_text())


def validate_report(report: dict):
    import jsonschema

    jsonschema.validate(report, load_schema())


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# inputs
# --------------------------------------------------------------------------


def read_quartic(text: str) -> TernaryForm:
    if text.startswith("@"):
        name = text[1:]
        if name not in fx.NAMED:
            raise UsageError(f"unknown fixture {name!r}; known: {', '.join(sorted(fx.NAMED))}")
        return fx.NAMED[name]()
    return parse_quartic(text)


def resolve_field(spec: str | None, default: str):
    F = field_from_spec(spec or default)
    return check_field(F)


def parse_window(text: str | None):
    if not text:
        return DEFAULT_WINDOW
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 4 or parts[0] >= parts[1] or parts[2] >= parts[3]:
        raise UsageError("--window expects xmin,xmax,ymin,ymax with min < max")
    return tuple(parts)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_invariants(f: TernaryForm, args) -> tuple:
    F = resolve_field(args.field, "q")
    g = f.to_field(F)
    L = build_L(g)
    res = {
        "cubic_invariant": el(cubic_invariant(g)),
        "trilinear_fff": el(trilinear_A(g, g, g)),
        "clebsch_invariant": el(clebsch_invariant(g)),
        "catalecticant_rank": rank(catalecticant(g)),
        "rank_L_f": rank(L),
        "det_L_f": el(det(L)),
    }
    lines = [f"{k}: {v}" for k, v in res.items()]
    return res, lines, F


def cmd_wm(f: TernaryForm, args) -> tuple:
    F = resolve_field(args.field, "q")
    g = f.to_field(F)
    W = wm_quartic(g)
    sq = poly_sqrt(W) if not W.is_zero() else None
    res = {
        "wm": format_poly(W),
        "terms": len(W),
        "rank_L_f": rank(build_L(g)),
        "double_quadric": sq is not None,
        "quadric": format_poly(sq[0]) if sq is not None else None,
    }
    lines = [f"WM_f = {res['wm']}", f"terms: {res['terms']}", f"rank_L_f: {res['rank_L_f']}",
             f"double_quadric: {res['double_quadric']}"]
    if sq is not None:
        lines.append(f"quadric: {res['quadric']}")
    return res, lines, F


def cmd_bitangents(f: TernaryForm, args) -> tuple:
    F = resolve_field(args.field, f"p:{DEFAULT_PRIME}")
    B = bitangent_ideal(
        f, F, order=args.order, budget=args.budget,
        want_eliminant=args.eliminant, want_points=args.points, seed=args.seed,
    )
    res = {
        "generators": [format_poly(g) for g in B.ideal.gens],
        "hilbert": _hilbert(B.hilbert),
        "basis_size": len(B.basis.polys),
        "order": args.order,
    }
    lines = [f"dimension: {B.hilbert.dimension}", f"degree: {B.hilbert.degree}", f"basis size: {len(B.basis.polys)}"]
    if B.eliminant is not None:
        res["eliminant"] = {
            "coefficients": _vec(B.eliminant),
            "degree": len(B.eliminant) - 1,
            "squarefree": B.eliminant_squarefree,
            "projection": [_vec(B.projection[0]), _vec(B.projection[1])],
        }
        lines.append(f"eliminant degree: {len(B.eliminant) - 1} squarefree: {B.eliminant_squarefree}")
    if args.points:
        res["points"] = [
            {
                "conic": _vec(p["conic"]),
                "conic_rank": p["conic_rank"],
                "line": _vec(p["line"]) if p["line"] is not None else None,
                "verified": p["verified"],
            }
            for p in B.points
        ]
        lines.append(f"rational points: {len(B.points)}")
        for p in B.points:
            lines.append(f"  conic {_vec(p['conic'])} line {None if p['line'] is None else _vec(p['line'])} verified {p['verified']}")
    return res, lines, F


def _classify(f, args):
    F = resolve_field(args.field, f"p:{DEFAULT_PRIME}")
    c = classify(f, F, verify_primes=args.verify_primes, order=args.order, budget=args.budget,
                 height_bound=args.height_bound)
    return c, F


def classification_lines(c: Classification) -> list:
    d = c.diagnostics
    lines = [f"tag: {c.tag}"]
    if "singular_locus" in d:
        lines.append(f"singular locus: dimension {d['singular_locus']['dimension']} degree {d['singular_locus']['degree']}")
    lines.append(f"rank L_f: {d.get('rank_L_f')}")
    for p in d.get("verification", []):
        lines.append(f"  prime {p['prime']}: dimension {p['dimension']} degree {p['degree']}")
    if "quotient" in d:
        lines.append(f"quotient by conic discriminant: dimension {d['quotient']['dimension']} degree {d['quotient']['degree']}")
    if "saturation" in d:
        lines.append(f"saturation by conic discriminant: dimension {d['saturation']['dimension']} degree {d['saturation']['degree']}")
    if "wm_double_quadric" in d:
        lines.append(f"WM_f double quadric: {d['wm_double_quadric']}")
    if "delta" in d:
        lines.append(f"delta: {d['delta']}")
    if c.conic is not None:
        lines.append(f"pentalateral conic: {format_form(c.conic)}")
    if c.clebsch is not None:
        lines.append(f"Clebsch preimage g: {format_form(c.clebsch)}")
        lines.append(f"rank C_g: {d.get('rank_C_g')}")
    if "luroth_degree" in d:
        ld = d["luroth_degree"]
        lines.append(f"{ld['identity']}  =>  L = {ld['L']}")
    if c.pentalateral is not None:
        p = c.pentalateral
        lines.append("pentalateral:")
        for l, w in zip(p.lines, p.weights):
            lines.append(f"  {el(w)} * ({format_form(l)})^4")
        lines.append(f"vertices on curve: {p.vertices_on_curve}")
    for n in c.notes:
        lines.append(f"note: {n}")
    return lines


def cmd_detect(f: TernaryForm, args) -> tuple:
    c, F = _classify(f, args)
    return classification_dict(c), classification_lines(c), F


def _given_conic(f, args):
    Q = parse_form(args.conic, 2, f.field)
    v = verify_pentalateral_conic(f, Q)
    if not (v["gradient_vanishes"] and v["smooth"]):
        raise PentalateralError("the given conic is not a smooth singular point of WM_f", {"conic_checks": v})
    g, checks = recover_clebsch(f, Q)
    if checks["rank_C_g"] != 5:
        raise PentalateralError(f"catalecticant of the Clebsch preimage has rank {checks['rank_C_g']}", {})
    return Q.normalized(), g


def cmd_pentalateral(f: TernaryForm, args) -> tuple:
    if args.conic:
        F = f.field
        Q, g = _given_conic(f, args)
    else:
        c, F = _classify(f, args)
        if c.tag != LUROTH:
            raise PentalateralError(f"classification is {c.tag}; no pentalateral conic", {"notes": c.notes})
        Q, g = c.conic, c.clebsch
    p = extract_pentalateral(g, Q, f, args.height_bound)
    res = {"conic": _vec(Q.coeffs), "conic_expression": format_form(Q), "clebsch": format_form(g),
           "pentalateral": pentalateral_dict(p)}
    lines = [f"pentalateral conic: {format_form(Q)}"]
    for l, w in zip(p.lines, p.weights):
        lines.append(f"  {el(w)} * ({format_form(l)})^4")
    lines.append(f"vertices on curve: {p.vertices_on_curve}")
    return res, lines, F


def cmd_plot(f: TernaryForm, args) -> tuple:
    window = parse_window(args.window)
    lines_ = []
    conics = []
    if args.with_pentalateral:
        if args.conic:
            Q, g = _given_conic(f, args)
        else:
            c, _ = _classify(f, args)
            if c.tag != LUROTH:
                raise PentalateralError(f"classification is {c.tag}; no pentalateral to draw", {})
            Q, g = c.conic, c.clebsch
        p = extract_pentalateral(g, Q, f, args.height_bound)
        lines_ = list(p.lines)
        # the inscribed conic is the dual of Q (adjugate of its matrix)
        from .exactla import adjugate

        A = adjugate(conic_matrix(Q))
        a = A.rows
        conics.append(TernaryForm(QQ, 2, [a[0][0], 2 * a[0][1], 2 * a[0][2], a[1][1], 2 * a[1][2], a[2][2]]))
    svg = render_svg(f, lines_, conics, window, args.resolution, args.chart, title=format_form(f))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    res = {"svg": args.svg, "window": list(window), "chart": args.chart, "lines": [format_form(l) for l in lines_]}
    return res, [f"wrote {args.svg}"] if args.svg else [], QQ


HANDLERS = {
    "invariants": cmd_invariants,
    "wm": cmd_wm,
    "bitangents": cmd_bitangents,
    "detect": cmd_detect,
    "pentalateral": cmd_pentalateral,
    "plot": cmd_plot,
}


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="luroth", description="White-Miller quartics, bitangent ideals and Lüroth detection.")
    p.add_argument("--version", action="version", version=f"luroth {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("quartic", help="quartic expression or @fixture")
        s.add_argument("--field", default=None, help="q or p:<prime> (default depends on command)")
        s.add_argument("--verify-primes", type=int, default=DEFAULT_VERIFY_PRIMES)
        s.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        s.add_argument("--json", action="store_true")
        s.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
        s.add_argument("--svg", default=None)
        s.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax")
        s.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
        s.add_argument("--seed", type=int, default=0)
        if name == "bitangents":
            s.add_argument("--eliminant", action="store_true")
            s.add_argument("--points", action="store_true")
        if name in ("pentalateral", "plot"):
            s.add_argument("--conic", default=None, help="known pentalateral conic (dual-plane expression)")
        if name == "plot":
            s.add_argument("--chart", choices=("x", "y", "z"), default="z")
            s.add_argument("--resolution", type=int, default=240)
            s.add_argument("--with-pentalateral", action="store_true")
    return p


def _base(command, text=None) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool": {"name": "luroth", "version": __version__}, "command": command,
            "input": {"expression": text}}


def _error(command, text, exc, kind) -> dict:
    rep = _base(command, text)
    err = {"type": kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        err["position"] = exc.position
    if isinstance(exc, PentalateralError) and exc.partial:
        err["partial"] = _json_safe(exc.partial)
    rep["error"] = err
    return rep


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    command = next((a for a in argv if a in COMMANDS), None)
    text = None
    try:
        args = build_parser().parse_args(argv)
        text = args.quartic
        f = read_quartic(text)
        t0 = time.perf_counter()
        res, lines, F = HANDLERS[args.command](f, args)
        elapsed = time.perf_counter() - t0
        rep = _base(args.command, text)
        rep["input"].update({"quartic": format_form(f), "coefficients": _vec(f.coeffs)})
        fields = {"working": F.spec()}
        runs_classify = args.command == "detect" or (args.command == "pentalateral" and not args.conic)
        if runs_classify and isinstance(F, PrimeField) and f.field == QQ:
            fields["verification"] = [f"p:{q}" for q in verification_primes(args.verify_primes, exclude=F.p)]
        rep["fields"] = fields
        rep["result"] = res
        if args.timings:
            rep["timings"] = {"total_seconds": round(elapsed, 3)}
        if args.json:
            validate_report(rep)
            sys.stdout.write(dumps(rep))
        elif args.command != "plot" or args.svg:
            sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))
        return 0
    except GroebnerBudgetExceeded as exc:
        return _fail(command, text, exc, "resource_limit", want_json, 2)
    except (ParseError, DegreeError) as exc:
        return _fail(command, text, exc, "parse_error", want_json, 1)
    except UsageError as exc:
        return _fail(command, text, exc, "usage_error", want_json, 1)
    except (ConfigurationError, PentalateralError, PreconditionError, SingularRecoveryError, ValueError, ZeroDivisionError) as exc:
        return _fail(command, text, exc, type(exc).__name__, want_json, 1)


def _fail(command, text, exc, kind, want_json, code) -> int:
    if want_json:
        rep = _error(command, text, exc, kind)
        validate_report(rep)
        sys.stdout.write(dumps(rep))
    else:
        msg = exc.caret() if isinstance(exc, ParseError) else str(exc)
        sys.stderr.write(f"luroth: {kind}: {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
