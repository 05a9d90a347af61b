"""Command-line interface: ``qinv {jones,wchar,limit,conjecture,verify,suite}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__, invariants, verify, wchars
from .lattice import from_fundamental_coords
from .qseries import INF, QSeries, format_series, to_record

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weight(text: str | None, r: int, flag: str):
    if text is None:
        return None
    try:
        labels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{flag}: expected comma-separated integers, got {text!r}")
    if len(labels) != r - 1:
        raise UsageError(f"--{flag}: {text!r} needs {r - 1} fundamental coordinates")
    return from_fundamental_coords(labels, r)


def _order(text: str) -> Fraction:
    try:
        T = Fraction(text)
    except ValueError:
        raise UsageError(f"--order must be a rational number, got {text!r}")
    if T <= 0:
        raise UsageError("--order must be positive")
    return T


def _series_payload(s: QSeries, fmt: str):
    if fmt == "json":
        return to_record(s)
    if fmt == "plain":
        return format_series(s)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["exponent", "coeff_num", "coeff_den"])
    for e, c in s.items():
        c = Fraction(c)
        w.writerow([str(e), c.numerator, c.denominator])
    return buf.getvalue()


def _emit(args, kind: str, quantity: str, payload, params: dict, trunc=None) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "json" or not isinstance(payload, str):
        meta = {"tool": "qinv", "version": __version__, "quantity": quantity, "params": params}
        if trunc is not None:
            meta["trunc"] = None if trunc == INF else str(trunc)
        if args.timestamps:
            meta["timestamp"] = datetime.now(timezone.utc).isoformat()
        text = json.dumps({"kind": kind, "payload": payload, "meta": meta}, sort_keys=True, indent=2)
    else:
        text = payload
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_jones(args) -> int:
    params = {"r": args.r, "p": args.p, "pp": args.pp, "n": args.n, "order": str(args.order)}
    if args.hat:
        s, e, sign = invariants.jones_hat(args.r, args.p, args.pp, args.n, args.order)
        payload = _series_payload(s, args.format)
        if args.format == "json":
            payload = {"series": payload, "trailing_exponent": str(e), "trailing_sign": sign}
        _emit(args, "series", "jones_hat", payload, params, s.trunc)
        return EXIT_OK
    if args.path == "oracle":
        s = invariants.jones_rosso_oracle(args.r, args.p, args.pp, args.n, args.order)
    else:
        s = invariants.jones_closed(args.r, args.p, args.pp, args.n, args.order)
    _emit(args, "series", "jones", _series_payload(s, args.format), {**params, "path": args.path}, s.trunc)
    return EXIT_OK


def cmd_wchar(args) -> int:
    r = args.r
    s = wchars.wchar_shifted(
        r, args.p, args.pp, args.order,
        xi=_weight(args.xi, r, "xi"), zeta=_weight(args.zeta, r, "zeta"), mu=_weight(args.mu, r, "mu"),
    )
    params = {"r": r, "p": args.p, "pp": args.pp, "order": str(args.order),
              "xi": args.xi, "zeta": args.zeta, "mu": args.mu}
    _emit(args, "series", "wchar", _series_payload(s, args.format), params, s.trunc)
    return EXIT_OK


def cmd_limit(args) -> int:
    s = wchars.limit_rhs(args.r, args.p, args.pp, args.j, args.order)
    params = {"r": args.r, "p": args.p, "pp": args.pp, "j": args.j, "order": str(args.order)}
    _emit(args, "series", "limit", _series_payload(s, args.format), params, s.trunc)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    s = wchars.conjecture_rhs(args.r, args.p, args.pp, args.order)
    params = {"r": args.r, "p": args.p, "pp": args.pp, "order": str(args.order)}
    _emit(args, "series", "conjecture", _series_payload(s, args.format), params, s.trunc)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {}
    if args.params:
        try:
            with open(args.params) as fh:
                params = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read params file: {exc}")
        if not isinstance(params, dict):
            raise UsageError("params file must hold a JSON object")
    if args.order is not None:
        params["T"] = str(args.order)
    try:
        rep = verify.check(args.check, params)
    except verify.UnknownCheckError as exc:
        raise UsageError(str(exc.args[0]))
    except verify.MalformedParamsError as exc:
        raise UsageError(str(exc))
    _emit(args, "report", "check", rep.to_record(with_runtime=args.timestamps), {"check": args.check})
    return EXIT_FAIL if rep.status == verify.FAIL else EXIT_OK


def cmd_suite(args) -> int:
    try:
        reports = verify.run_suite(args.profile)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload = [r.to_record(with_runtime=args.timestamps) for r in reports]
    _emit(args, "report", "suite", payload, {"profile": args.profile})
    return EXIT_FAIL if any(r.status == verify.FAIL for r in reports) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qinv", description=__doc__)
    ap.add_argument("--version", action="version", version=f"qinv {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--timestamps", action="store_true", help="include wall-clock metadata")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    knot = argparse.ArgumentParser(add_help=False)
    knot.add_argument("--r", type=int, required=True)
    knot.add_argument("--p", type=int, required=True)
    knot.add_argument("--pp", type=int, required=True)
    knot.add_argument("--order", type=_order_arg, required=True)

    sub = ap.add_subparsers(dest="command", required=True)

    j = sub.add_parser("jones", parents=[common, fmt, knot], help="coloured torus-knot invariant")
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--hat", action="store_true", help="normalize by the trailing term")
    j.add_argument("--path", choices=["closed", "oracle"], default="closed")
    j.set_defaults(func=cmd_jones)

    w = sub.add_parser("wchar", parents=[common, fmt, knot], help="W-algebra character")
    for name in ("mu", "xi", "zeta"):
        w.add_argument(f"--{name}", help="fundamental coordinates, e.g. 1,0")
    w.set_defaults(func=cmd_wchar)

    lim = sub.add_parser("limit", parents=[common, fmt, knot], help="limiting character series")
    lim.add_argument("--j", type=int, default=0)
    lim.set_defaults(func=cmd_limit)

    c = sub.add_parser("conjecture", parents=[common, fmt, knot], help="conjectured p < r tail")
    c.set_defaults(func=cmd_conjecture)

    v = sub.add_parser("verify", parents=[common], help="run one identity check")
    v.add_argument("--check", required=True)
    v.add_argument("--params", help="JSON file of check parameters")
    v.add_argument("--order", type=_order_arg)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", parents=[common], help="run a check profile")
    s.add_argument("--profile", default="desk")
    s.set_defaults(func=cmd_suite)
    return ap


def _order_arg(text: str) -> Fraction:
    try:
        return _order(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        # NonCoprimeError and invalid ranks/weights are ValueErrors
        print(f"qinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
