"""Command-line interface.

Exit codes: 0 on success (a negative coefficient or a failed certificate is a
result, not an error), 2 on invalid input, 3 when an internal size bound is hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import blattner as bl
from . import positivity as pos
from .plot import PlotSpec, render_svg
from .rootsys import GroupBoundError, build_root_system
from .series import _fmt_rational

EXIT_VALIDATION = 2
EXIT_BOUND = 3

_ALIAS = re.compile(r"^(sl|so|sp)(\d+)$")
_LABEL = re.compile(r"^([A-Ga-g])(\d+)$")
_VALUE_FLAGS = {"--delta", "--mu", "--window", "--keep", "--compact", "--catalog"}


class UsageError(ValueError):
    pass


def parse_algebra(type_: str | None, rank: int | None) -> tuple[str, int]:
    """Accept ``--type G --rank 2``, ``--type G2`` or aliases like ``sl5``."""
    if not type_:
        raise UsageError("--type is required")
    t = type_.strip()
    m = _ALIAS.match(t.lower())
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "sl":
            fam, r = "A", n - 1
        elif kind == "sp":
            if n % 2:
                raise UsageError(f"{t}: sp needs an even size")
            fam, r = "C", n // 2
        elif n % 2:
            fam, r = "B", (n - 1) // 2
        else:
            fam, r = "D", n // 2
    elif _LABEL.match(t):
        m = _LABEL.match(t)
        fam, r = m.group(1).upper(), int(m.group(2))
    elif len(t) == 1 and t.upper() in "ABCDEFG":
        if rank is None:
            raise UsageError(f"--rank is required with --type {t}")
        fam, r = t.upper(), rank
    else:
        raise UsageError(f"unknown algebra label {type_!r}")
    if rank is not None and rank != r:
        raise UsageError(f"--rank {rank} conflicts with --type {type_}")
    return fam, r


def parse_weight(text: str, rank: int, what: str = "weight") -> tuple:
    text = text.strip()
    if text in ("0", ""):
        return (Fraction(0),) * rank
    try:
        w = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed {what} {text!r}; expected comma-separated rationals like -1,1/2")
    if len(w) != rank:
        raise UsageError(f"{what} {text!r} has {len(w)} coordinates, expected {rank}")
    return w


def parse_indices(text: str, rank: int, what: str = "--compact") -> list[int]:
    """1-based indices or names (alpha/beta in rank 2, a1.., alpha1..) to 0-based."""
    out = []
    for tok in (t.strip().lower() for t in (text or "").split(",")):
        if not tok:
            continue
        if tok.isdigit():
            i = int(tok)
        elif rank == 2 and tok in ("alpha", "beta"):
            i = 1 if tok == "alpha" else 2
        else:
            m = re.match(r"^(?:a|alpha|α)_?(\d+)$", tok)
            if not m:
                raise UsageError(f"{what}: cannot read simple root {tok!r}")
            i = int(m.group(1))
        if not 1 <= i <= rank:
            raise UsageError(f"{what}: simple root index {i} out of range 1..{rank}")
        out.append(i - 1)
    return sorted(set(out))


def _wstr(w) -> list[str]:
    return [_fmt_rational(x) for x in w]


def _gradation(args) -> bl.Gradation:
    fam, r = parse_algebra(args.type, args.rank)
    rs = build_root_system(fam, r)
    return bl.Gradation(rs, parse_indices(args.compact, r))


def _trunc(args, default: int) -> int:
    n = default if args.trunc is None else args.trunc
    if n <= 0:
        raise UsageError("truncation degree must be positive")
    return n


def cmd_roots(args):
    fam, r = parse_algebra(args.type, args.rank)
    rs = build_root_system(fam, r)
    return {
        "algebra": rs.label,
        "cartan_matrix": [list(row) for row in rs.datum.cartan_matrix],
        "form": [list(row) for row in rs.form],
        "positive_roots": [list(g) for g in rs.positive_roots],
    }


def cmd_grade(args):
    gr = _gradation(args)
    gr.verify()
    return {
        "gradation": gr.descriptor(),
        "compact_positive": [list(g) for g in gr.positive_compact],
        "noncompact_positive": [list(g) for g in gr.positive_noncompact],
        "rho_c": _wstr(gr.rho_c),
        "rho_nc": _wstr(gr.rho_nc),
        "pi_k": [list(g) for g in gr.pi_k],
        "W_k": [{"word": [i + 1 for i in w.word], "length": w.length} for w in gr.W_k],
        "W_c_order": len(gr.W_c),
    }


def cmd_blattner(args):
    gr = _gradation(args)
    delta = parse_weight(args.delta, gr.rank, "--delta")
    mu = parse_weight(args.mu, gr.rank, "--mu")
    gr.require_integral(mu)
    norm = bl.normalize_delta(gr, delta)
    if norm.singular:
        value = 0
    else:
        value = norm.sign * bl.blattner_B(gr, norm.delta, mu)
    hc = bl.hc_status(gr, mu)
    out = {
        "gradation": gr.descriptor(),
        "delta": _wstr(delta),
        "mu": _wstr(mu),
        "B": str(value),
        "hc_parameter": _wstr(hc.lam),
        "g_dominant": hc.g_dominant,
        "g_regular": hc.g_regular,
    }
    if norm.singular or norm.delta != delta:
        out["normalized_delta"] = None if norm.singular else _wstr(norm.delta)
        out["sign"] = norm.sign
    return out


def cmd_bseries(args):
    gr = _gradation(args)
    delta = parse_weight(args.delta, gr.rank, "--delta")
    n = _trunc(args, 10)
    if args.method == "direct":
        s = bl.b_series_direct(gr, delta, n)
    else:
        s = bl.b_series_rational(gr, delta, n)
    if args.format == "csv":
        return s.to_csv()
    return {"gradation": gr.descriptor(), "delta": _wstr(delta), "method": args.method, "series": s.to_json()}


def cmd_scan(args):
    gr = _gradation(args)
    return pos.scan_negative(gr, _trunc(args, pos.DEFAULT_TRUNC)).to_json()


def cmd_classify(args):
    if args.catalog:
        catalog = [parse_algebra(t, None) for t in args.catalog.split(",") if t.strip()]
    else:
        catalog = pos.DEFAULT_CATALOG
    entries = pos.classify(catalog, _trunc(args, pos.DEFAULT_TRUNC), jobs=args.jobs)
    return {
        "trunc": _trunc(args, pos.DEFAULT_TRUNC),
        "b_positive": [e.label for e in entries if e.b_positive],
        "undecided": [e.label for e in entries if e.b_positive is None],
        "entries": [e.to_json() for e in entries],
    }


def cmd_certify(args):
    n = _trunc(args, pos.DEFAULT_TRUNC)
    if args.cert:
        try:
            data = json.loads(Path(args.cert).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read certificate file: {e}")
        certs = data if isinstance(data, list) else [data]
        try:
            certs = [pos.Certificate.from_json(c) for c in certs]
        except (KeyError, TypeError) as e:
            raise UsageError(f"malformed certificate: {e}")
    else:
        known = pos.known_certificates()
        names = [x.strip().upper() for x in args.known.split(",")] if args.known else sorted(known)
        missing = [x for x in names if x not in known]
        if missing:
            raise UsageError(f"no built-in certificate for {missing}; available: {sorted(known)}")
        certs = [known[x] for x in names]
    results = []
    for c in certs:
        res = pos.verify_certificate(c, n)
        results.append({"name": c.name, **res.to_json()})
    return {"trunc": n, "results": results}


def cmd_plot(args):
    gr = _gradation(args)
    delta = parse_weight(args.delta, gr.rank, "--delta")
    gr.require_dominant(delta)
    if gr.rank != 2:
        raise UsageError(f"plot needs a rank-2 algebra (got rank {gr.rank}); use bseries --format csv instead")
    try:
        window = tuple(int(x) for x in args.window.split(","))
    except ValueError:
        raise UsageError(f"malformed --window {args.window!r}; expected K,L")
    if len(window) == 1:
        window = window * 2
    spec = PlotSpec(gr, delta, window, show_zeros=args.show_zeros)
    return render_svg(spec)


COMMANDS = {
    "roots": cmd_roots,
    "grade": cmd_grade,
    "blattner": cmd_blattner,
    "bseries": cmd_bseries,
    "scan": cmd_scan,
    "classify": cmd_classify,
    "certify": cmd_certify,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="family letter (with --rank), a label like G2, or sl5/so7/sp8")
    common.add_argument("--rank", type=int)
    common.add_argument("--compact", default="", help='compact simple roots, 1-based or names; "" for none')
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-N", "--trunc", type=int, help="total-degree truncation")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="blattnergf", description="Blattner's formula and its generating function")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("roots", parents=[common], help="positive roots and invariant form")
    sub.add_parser("grade", parents=[common], help="compact/noncompact data of a gradation")
    b = sub.add_parser("blattner", parents=[common], help="evaluate B(delta, mu)")
    b.add_argument("--delta", default="0")
    b.add_argument("--mu", required=True)
    s = sub.add_parser("bseries", parents=[common], help="expand b(delta)")
    s.add_argument("--delta", default="0")
    s.add_argument("--method", choices=("rational", "direct"), default="rational")
    sub.add_parser("scan", parents=[common], help="first negative coefficient of b(0)")
    c = sub.add_parser("classify", parents=[common], help="b-positivity over a catalog")
    c.add_argument("--catalog", help="comma-separated labels, e.g. A4,B3,C4 (default: built-in)")
    cert = sub.add_parser("certify", parents=[common], help="verify partial-fraction certificates")
    cert.add_argument("--cert", help="JSON certificate file (object or list)")
    cert.add_argument("--known", help="built-in certificate names, comma-separated (default: all)")
    pl = sub.add_parser("plot", parents=[common], help="SVG coefficient plot (rank 2)")
    pl.add_argument("--delta", default="0")
    pl.add_argument("--window", default="8,12", help="exponent caps K,L")
    pl.add_argument("--show-zeros", action="store_true")
    return p


def _join_values(argv: list[str]) -> list[str]:
    # argparse reads "-1,-1" as an option; bind such values to their flag.
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_values(argv))
    try:
        result = COMMANDS[args.command](args)
    except GroupBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
