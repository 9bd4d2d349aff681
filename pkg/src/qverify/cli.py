"""Command line front end: ``list``, ``verify`` and ``expand``.

Exit status: 0 when everything requested passed, 1 when any verification
failed or errored, 2 for usage errors (bad flags, unknown expand target).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import bailey, hecke, identities
from .hecke import FParams
from .report import frac_str
from .series import Monomial, SeriesError, TruncatedSeries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list: {text!r}") from None
    if not ks or any(k < 2 for k in ks):
        raise argparse.ArgumentTypeError("k values must be integers >= 2")
    return ks


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qverify", description="Exact truncated q-series identity checker.")
    sub = p.add_subparsers(dest="command", required=True)

    ls = sub.add_parser("list", help="list registered identities")
    ls.add_argument("--id", default="*", help="glob pattern on identity ids")
    ls.add_argument("--json", action="store_true", help="one JSON record per line")

    v = sub.add_parser("verify", help="verify identities")
    v.add_argument("--id", default="*", help="glob pattern on identity ids")
    v.add_argument("--order", type=_positive, help="override every entry's order")
    v.add_argument("--nmax", type=_nonneg, help="override n_max of pair and link entries")
    v.add_argument("--k", type=_k_list, help="comma-separated k values for k-indexed entries")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.add_argument("--json", action="store_true", help="one JSON report per line")

    e = sub.add_parser("expand", help="print a series expansion")
    e.add_argument("--target", required=True, help="e.g. A, phi, hecke(2), f(1,2,1,1,1,1), beta(pair_LO,3), rhs(eq_2_19,k=2)")
    e.add_argument("--order", type=_nonneg, required=True)
    e.add_argument("--json", action="store_true")
    return p


# --- expand targets ------------------------------------------------------------------

_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def _ints(args: list[str], n: int, name: str) -> list[int]:
    if len(args) != n:
        raise UsageError(f"{name} takes {n} argument(s)")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise UsageError(f"{name} takes integer arguments") from None


def _kv(args: list[str]) -> dict:
    out: dict = {}
    for a in args:
        key, sep, val = a.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {a!r}")
        out[key.strip()] = int(val) if re.fullmatch(r"-?\d+", val.strip()) else val.strip()
    return out


def _pair(name: str) -> bailey.BaileyPair:
    try:
        return bailey.PAIRS[name]
    except KeyError:
        raise UsageError(f"unknown pair {name!r}") from None


def _side(which: str, args: list[str], g: int) -> TruncatedSeries:
    if not args:
        raise UsageError(f"{which} needs an identity id")
    try:
        identities.get_entry(args[0])
    except identities.RegistryError as exc:
        raise UsageError(str(exc)) from None
    lhs, rhs = identities.build_sides(args[0], _kv(args[1:]), g)
    return lhs if which == "lhs" else rhs


def resolve_target(target: str, g: int) -> TruncatedSeries:
    """Parse ``target`` and build its series through order ``g``."""
    m = _CALL.match(target)
    if not m:
        raise UsageError(f"cannot parse target {target!r}")
    name, argtext = m.group(1), m.group(2)
    args = [a.strip() for a in argtext.split(",")] if argtext and argtext.strip() else []
    simple: dict[str, Callable[[int], TruncatedSeries]] = {"A": identities.A, "F2": identities.F2, "phi": identities.phi}
    if name in simple:
        if args:
            raise UsageError(f"{name} takes no arguments")
        return simple[name](g)
    if name == "hecke":
        (k,) = _ints(args, 1, name)
        return hecke.hecke_form(k, g)
    if name == "bilateral":
        (k,) = _ints(args, 1, name)
        return hecke.bilateral_form(k, g)
    if name == "multisum":
        (k,) = _ints(args, 1, name)
        return bailey.multi_sum(k, g)
    if name == "f":
        a, b, c, ex, ey, p = _ints(args, 6, name)
        return hecke.f_abc(FParams(a, b, c, Monomial(1, ex), Monomial(1, ey), p), g)
    if name in ("alpha", "beta"):
        if len(args) != 2:
            raise UsageError(f"{name} takes (pair, n)")
        pair = _pair(args[0])
        (n,) = _ints(args[1:], 1, name)
        return pair.alpha_at(n, g) if name == "alpha" else pair.beta_at(n, g)
    if name in ("lhs", "rhs"):
        return _side(name, args, g)
    raise UsageError(f"unknown target {name!r}")


def dump_lines(target: str, s: TruncatedSeries, g: int) -> list[str]:
    """Header then one ``exp_num/exp_den<TAB>coefficient`` line per unit exponent up to ``g``."""
    den = s.den
    top = g * den
    lo = min(s.min_exponent, 0) if s else 0
    lines = [f"# target={target} den={den} guarantee={g}"]
    for e in range(lo, top + 1):
        x = Fraction(e, den)
        lines.append(f"{x.numerator}/{x.denominator}\t{frac_str(s.coeff(e))}")
    return lines


def dump_record(target: str, s: TruncatedSeries, g: int) -> dict:
    den = s.den
    lo = min(s.min_exponent, 0) if s else 0
    coeffs = []
    for e in range(lo, g * den + 1):
        x = Fraction(e, den)
        coeffs.append({"exp_num": x.numerator, "exp_den": x.denominator, "coeff": frac_str(s.coeff(e))})
    return {"target": target, "den": den, "guarantee": g, "coefficients": coeffs}


# --- commands ---------------------------------------------------------------------------


def cmd_list(args, out) -> int:
    for entry in identities.entries(args.id):
        rec = identities.describe(entry)
        if args.json:
            print(json.dumps(rec), file=out)
        else:
            defaults = " ".join(f"{k}={v}" for k, v in rec["defaults"].items())
            print(f"{entry.id}\t{entry.anchor}\t{defaults}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    overrides = {"order": args.order, "n_max": args.nmax, "k": args.k}
    counts = {"pass": 0, "fail": 0, "error": 0}
    for report in identities.iter_verify(args.id, overrides, args.jobs):
        counts[report.status] += 1
        print(report.to_json() if args.json else report.summary(), file=out, flush=True)
    if not args.json:
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['error']} errors", file=out)
    return EXIT_OK if counts["fail"] == counts["error"] == 0 else EXIT_FAIL


def cmd_expand(args, out) -> int:
    s = resolve_target(args.target, args.order)
    if args.json:
        print(json.dumps(dump_record(args.target, s, args.order)), file=out)
    else:
        print("\n".join(dump_lines(args.target, s, args.order)), file=out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    commands = {"list": cmd_list, "verify": cmd_verify, "expand": cmd_expand}
    try:
        return commands[args.command](args, out)
    except UsageError as exc:
        print(f"qverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SeriesError, ValueError) as exc:
        # parameter problems in expand targets
        print(f"qverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
