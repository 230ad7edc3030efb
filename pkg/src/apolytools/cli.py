"""Command-line interface: ``apolytools <subcommand> ...``.

Inputs are presentation files or ``catalog:<name>``. Exit status is 0 on
success, 1 for bad input, 2 when a computation exceeds its budget and 3 for
an internal error. Failures print a JSON error object on stderr.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import catalog
from .algebra import GF, QQ, PolyRing, format_poly, is_prime, parse_poly
from .errors import ApolyError, BudgetExceeded, PolynomialSyntaxError, PresentationError
from .groebner import Budget, PolynomialIdeal
from .presentations import format_presentation, parse_presentation

SCHEMA = 1


class InputError(ApolyError):
    pass


@dataclass
class CommandConfig:
    command: str
    input: str = None
    primes: list = field(default_factory=list)
    drop_abelian: bool = False
    json_out: str = None
    svg_out: str = None
    directions: list = field(default_factory=list)
    polys: str = None
    cap: int = None
    route: str = "auto"
    max_basis: int = 2000
    timeout_sec: float = 600.0
    name: str = None

    def __post_init__(self):
        for p in self.primes:
            if not is_prime(p) or p > 97:
                raise InputError(f"{p} is not a prime <= 97")
        if self.max_basis <= 0 or self.timeout_sec <= 0:
            raise InputError("budget values must be positive")
        if self.cap is not None and self.cap < 0:
            raise InputError("--cap must be nonnegative")

    @property
    def budget(self):
        return Budget(max_basis=self.max_basis, timeout_sec=self.timeout_sec)


def load_input(where):
    if where is None:
        raise InputError("an input presentation is required")
    if where.startswith("catalog:"):
        name = where[len("catalog:"):]
        try:
            return catalog.load(name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        with open(where, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {where}: {exc.strerror}") from None
    return parse_presentation(text)


def _scrub(obj):
    """Drop timing fields so identical runs give identical JSON."""
    if isinstance(obj, dict):
        return {k: _scrub(v) for k, v in obj.items() if k != "elapsed_sec"}
    if isinstance(obj, list):
        return [_scrub(v) for v in obj]
    return obj


def _dump(report):
    return json.dumps(_scrub(dict(report, schema=SCHEMA)), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class _JsonOnly:
    """Swallows the text summary when the JSON report goes to stdout."""

    def __init__(self, raw):
        self.raw = raw

    def write(self, text):
        return len(text)


def _write(path, text, out):
    if path == "-":
        getattr(out, "raw", out).write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _domain(cfg):
    return GF(cfg.primes[0]) if cfg.primes else QQ


# -- subcommands -----------------------------------------------------------------


def cmd_apoly(cfg, out):
    from .apoly import a_polynomial, boundary_slopes_from_apoly
    from .newton import newton_svg

    G = load_input(cfg.input)
    A = a_polynomial(G, _domain(cfg), not cfg.drop_abelian, cfg.budget, cfg.route)
    slopes = boundary_slopes_from_apoly(A) if not A.is_zero() else None
    label = f"A_{cfg.primes[0]}" if cfg.primes else "A_0"
    if A.is_zero():
        out.write(f"{label} = 0 ({A.provenance['note']})\n")
    else:
        out.write(f"{label} = {A.text()}\n")
        out.write(f"slopes: {slopes}\n")
    for key in ("stripped_monomial", "dropped_factors", "non_principal_residue"):
        if A.provenance.get(key):
            out.write(f"{key}: {A.provenance[key]}\n")
    out.write(f"route: {A.provenance.get('route')}\n")
    if cfg.json_out:
        report = {
            "input": cfg.input,
            "field": repr(A.domain),
            "A": A.text(),
            "slopes": slopes.to_list() if slopes is not None else None,
            "provenance": A.provenance,
        }
        _write(cfg.json_out, _dump(report), out)
    if cfg.svg_out:
        if A.is_zero():
            raise InputError("no Newton polygon for A = 0")
        _write(cfg.svg_out, newton_svg(A.polynomial), out)
    return 0


def cmd_slopes(cfg, out):
    from .apoly import a_polynomial, boundary_slopes_from_apoly

    G = load_input(cfg.input)
    A = a_polynomial(G, _domain(cfg), True, cfg.budget, cfg.route)
    if A.is_zero():
        out.write("A = 0: no codimension-1 constraint, no slopes\n")
        slopes = None
    else:
        slopes = boundary_slopes_from_apoly(A)
        out.write(f"{slopes}\n")
    if cfg.json_out:
        report = {"input": cfg.input, "field": repr(A.domain), "slopes": slopes.to_list() if slopes is not None else None}
        _write(cfg.json_out, _dump(report), out)
    return 0


def cmd_modp(cfg, out):
    from .apoly import a_polynomial, boundary_slopes_from_apoly, compare_mod_p, is_reduced

    if not cfg.primes:
        raise InputError("modp needs --primes")
    G = load_input(cfg.input)
    A0 = a_polynomial(G, QQ, not cfg.drop_abelian, cfg.budget, cfg.route)
    out.write(f"A_0 = {A0.text()}\n")
    if A0.is_zero():
        raise InputError("A_0 is zero; there is nothing to compare")
    slopes0 = boundary_slopes_from_apoly(A0)
    out.write(f"slopes: {slopes0}  reduced: {is_reduced(A0)}\n")
    rows = []
    for p in sorted(set(cfg.primes)):
        r = compare_mod_p(G, p, A0, not cfg.drop_abelian, cfg.budget, cfg.route)
        row = r.to_dict()
        if r.native is not None and r.native:
            sp = boundary_slopes_from_apoly(r.native)
            row["slopes"] = sp.to_list()
            row["slopes_agree"] = sp == slopes0
            row["Ap_reduced"] = is_reduced(r.native)
        if r.reduced is not None and r.reduced:
            row["A0_mod_p_reduced"] = is_reduced(r.reduced)
        rows.append(row)
        extra = f" g = {row['g']}" if "g" in row else ""
        why = f" ({r.reason})" if r.reason else ""
        out.write(f"p={p}: {r.verdict}{extra}{why}; slopes {row.get('slopes')}\n")
    if cfg.json_out:
        report = {
            "input": cfg.input,
            "A0": A0.text(),
            "primes": rows,
            "slopes": slopes0.to_list(),
            "provenance": A0.provenance,
        }
        _write(cfg.json_out, _dump(report), out)
    return 0


def _probe_ideal(cfg):
    from .apoly import a_polynomial, eigenvalue_ideal
    from .repvar import eigen_names

    dom = _domain(cfg)
    if cfg.polys:
        texts = [t for t in cfg.polys.split(";") if t.strip()]
        names = set()
        for t in texts:
            names.update(parse_poly(t).ring.names)
        h = max([int(n[1:]) for n in names if n[1:].isdigit()] or [1])
        ring = PolyRing(dom, eigen_names(h), laurent=eigen_names(h))
        try:
            gens = [parse_poly(t, ring) for t in texts]
        except PolynomialSyntaxError as exc:
            raise InputError(f"{exc}; use variables {', '.join(ring.names)}") from None
        return PolynomialIdeal(ring, gens), h, "given generators"
    G = load_input(cfg.input)
    h = len(G.cusps)
    if h == 1:
        A = a_polynomial(G, dom, not cfg.drop_abelian, cfg.budget, cfg.route)
        if A.is_zero():
            raise InputError("A = 0: the principal ideal is zero")
        ring = PolyRing(A.polynomial.ring.domain, eigen_names(1), laurent=eigen_names(1))
        return PolynomialIdeal(ring, [A.polynomial.convert(ring)]), 1, "principal ideal of the A-polynomial"
    return eigenvalue_ideal(G, dom, cfg.budget), h, "eigenvalue-variety ideal"


def cmd_tropical(cfg, out):
    from .newton import TropicalDirection, logarithmic_limit_probe, slope_coordinates

    I, h, what = _probe_ideal(cfg)
    if I.is_zero():
        raise InputError("the ideal is zero; probing needs a nonzero ideal")
    names = I.ring.names
    cands = None
    if cfg.directions:
        cands = []
        for d in cfg.directions:
            try:
                cands.append(TropicalDirection.parse(d, names))
            except ValueError as exc:
                raise InputError(f"bad direction {d!r}: {exc}") from None
    results = logarithmic_limit_probe(I, cands, cfg.budget)
    out.write(f"probe of the logarithmic limit set ({what}); not an exhaustive computation\n")
    out.write(f"coordinates: ({', '.join(names)})\n")
    rows = []
    for r in results:
        row = r.to_dict()
        line = f"{r.direction}: " + ("error: " + r.error if r.error else ("member" if r.member else "not a member"))
        if r.member:
            sc = slope_coordinates(r.direction, h)
            row["slope_coordinates"] = sc.to_list()
            row["slopes"] = [None if s is None else (str(s) if s != float("inf") else "inf") for s in sc.slopes()]
            line += f"  slope coordinates {sc.to_list()}"
        rows.append(row)
        out.write(line + "\n")
    if cfg.json_out:
        report = {"input": cfg.input or cfg.polys, "ideal": [format_poly(g) for g in I.generators], "variables": list(names), "directions": rows}
        _write(cfg.json_out, _dump(report), out)
    return 0


def cmd_enum(cfg, out):
    from .enumrep import cross_check, enumerate_homs

    if len(cfg.primes) != 1:
        raise InputError("enum needs exactly one --prime")
    p = cfg.primes[0]
    G = load_input(cfg.input)
    rep = enumerate_homs(G, p, cap=cfg.cap)
    cc = cross_check(G, p)
    out.write(f"homomorphisms to SL(2,F_{p}): {rep.count}\n")
    out.write(f"cross_check: {'pass' if cc.passed else 'FAIL'} ({cc.count_points} variety points)\n")
    for i in range(len(G.cusps)):
        out.write(f"cusp {i} eigenvalue pairs: {rep.eigenvalue_pairs(i)}\n")
    if cfg.json_out:
        report = {"input": cfg.input, "enumeration": rep.to_dict(), "cross_check": cc.to_dict()}
        _write(cfg.json_out, _dump(report), out)
    return 0 if cc.passed else 3


def cmd_catalog(cfg, out):
    if cfg.name is None:
        for n in catalog.names():
            out.write(f"{n}: {catalog.entry(n).notes}\n")
        return 0
    try:
        src = catalog.source(cfg.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    out.write(src)
    return 0


def cmd_validate(cfg, out):
    from .presentations import validate_peripheral

    G = load_input(cfg.input)
    p = cfg.primes[0] if cfg.primes else 2
    if p not in (2, 3, 5, 7):
        raise InputError("validation primes are limited to 2, 3, 5, 7")
    rep = validate_peripheral(G, p)
    out.write(format_presentation(G))
    for c in rep.checks:
        out.write(f"{c['check']}: {'pass' if c['passed'] else 'FAIL'}\n")
    out.write(f"note: {rep.note}\n")
    out.write("valid\n" if rep.passed else "INVALID\n")
    if cfg.json_out:
        _write(cfg.json_out, _dump({"input": cfg.input, "validation": rep.to_dict()}), out)
    return 0 if rep.passed else 1


COMMANDS = {
    "apoly": cmd_apoly,
    "slopes": cmd_slopes,
    "modp": cmd_modp,
    "tropical": cmd_tropical,
    "enum": cmd_enum,
    "catalog": cmd_catalog,
    "validate": cmd_validate,
}


# -- argument parsing ---------------------------------------------------------------


def _primes(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 and a JSON error object."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": {"kind": "usage", "message": message}}, sort_keys=True) + "\n")
        sys.exit(1)


def build_parser():
    parser = _Parser(prog="apolytools", description="A-polynomials and boundary slopes of cusped presentations")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, prime=True):
        sp.add_argument("input", help="presentation file or catalog:<name>")
        if prime:
            sp.add_argument("--prime", type=int, help="work over F_p instead of Q")
        sp.add_argument("--json", dest="json_out", metavar="OUT", help="write a JSON report ('-' for stdout)")
        sp.add_argument("--route", choices=("auto", "groebner", "tower"), default="auto")
        sp.add_argument("--gb-max-basis", type=int, default=2000)
        sp.add_argument("--gb-timeout-sec", type=float, default=600.0)

    sp = sub.add_parser("apoly", help="A-polynomial and its Newton polygon slopes")
    common(sp)
    sp.add_argument("--drop-abelian", action="store_true", help="divide out the factor l - 1")
    sp.add_argument("--svg", dest="svg_out", metavar="OUT", help="write the Newton polygon as SVG")

    sp = sub.add_parser("slopes", help="boundary slopes from the Newton polygon")
    common(sp)

    sp = sub.add_parser("modp", help="compare A_0 mod p with A_p")
    common(sp, prime=False)
    sp.add_argument("--primes", type=_primes, required=True, help="comma-separated primes")
    sp.add_argument("--drop-abelian", action="store_true")

    sp = sub.add_parser("tropical", help="probe the logarithmic limit set at rational directions")
    sp.add_argument("input", nargs="?", help="presentation file or catalog:<name>")
    sp.add_argument("--polys", help="';'-separated generators in m, l (or m1, l1, m2, l2, ...)")
    sp.add_argument("--direction", action="append", default=[], help="comma-separated entries in (m1, l1, ...) order")
    sp.add_argument("--prime", type=int)
    sp.add_argument("--drop-abelian", action="store_true")
    sp.add_argument("--json", dest="json_out", metavar="OUT")
    sp.add_argument("--route", choices=("auto", "groebner", "tower"), default="auto")
    sp.add_argument("--gb-max-basis", type=int, default=2000)
    sp.add_argument("--gb-timeout-sec", type=float, default=600.0)

    sp = sub.add_parser("enum", help="enumerate representations into SL(2,F_p)")
    sp.add_argument("input")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--cap", type=int, help="list at most N representations")
    sp.add_argument("--json", dest="json_out", metavar="OUT")

    sp = sub.add_parser("catalog", help="list or print shipped presentations")
    sp.add_argument("name", nargs="?")

    sp = sub.add_parser("validate", help="check a presentation and its peripheral words")
    sp.add_argument("input")
    sp.add_argument("--prime", type=int, default=2)
    sp.add_argument("--json", dest="json_out", metavar="OUT")
    return parser


def config_from_args(ns):
    primes = list(getattr(ns, "primes", None) or [])
    if getattr(ns, "prime", None) is not None:
        primes = [ns.prime]
    return CommandConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        primes=primes,
        drop_abelian=getattr(ns, "drop_abelian", False),
        json_out=getattr(ns, "json_out", None),
        svg_out=getattr(ns, "svg_out", None),
        directions=getattr(ns, "direction", []),
        polys=getattr(ns, "polys", None),
        cap=getattr(ns, "cap", None),
        route=getattr(ns, "route", "auto"),
        max_basis=getattr(ns, "gb_max_basis", 2000),
        timeout_sec=getattr(ns, "gb_timeout_sec", 600.0),
        name=getattr(ns, "name", None),
    )


def _error(kind, exc, code, err):
    obj = {"schema": SCHEMA, "error": {"kind": kind, "message": str(exc)}}
    if isinstance(exc, BudgetExceeded):
        obj["error"]["stats"] = _scrub(exc.stats)
    if isinstance(exc, PresentationError) and exc.line is not None:
        obj["error"]["line"] = exc.line
        obj["error"]["column"] = exc.column
    err.write(json.dumps(obj, sort_keys=True) + "\n")
    return code


def run(config, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    if getattr(config, "json_out", None) == "-":
        out = _JsonOnly(out)
    try:
        return COMMANDS[config.command](config, out)
    except BudgetExceeded as exc:
        return _error("budget", exc, 2, err)
    except (InputError, PresentationError, PolynomialSyntaxError, ValueError) as exc:
        return _error("input", exc, 1, err)
    except ApolyError as exc:
        return _error("input", exc, 1, err)
    except Exception as exc:  # pragma: no cover - always a bug
        return _error("internal", f"{type(exc).__name__}: {exc}", 3, err)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        return _error("input", exc, 1, sys.stderr)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
