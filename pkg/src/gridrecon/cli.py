"""``gridrecon`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io as gio
from .errors import GridReconError, OrderExceededError
from .families import (
    family_delta,
    family_divisor,
    family_sharp,
    family_threer,
    family_z6,
)
from .groups import make_group, subgroup_generated
from .moments import MomentOracle, MomentTable, moment_table
from .recon import ReconConfig, moment_budget, reconstruct_with_report, verify_translation
from .spectral import RatFn, dft, support

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_TABLE_BUDGET = 10**7

log = logging.getLogger("gridrecon")


class _InputError(Exception):
    pass


def _fmt(args, path) -> str:
    if getattr(args, "format", None):
        return args.format
    return "csv" if str(path).endswith(".csv") else "json"


def _load_grid(path, fmt=None) -> RatFn:
    try:
        return gio.load_grid(path, fmt)
    except (OSError, ValueError, GridReconError) as exc:
        raise _InputError(f"cannot read grid {path}: {exc}") from exc


# -------------------------------------------------------------------- commands
def cmd_moments(args) -> int:
    f = _load_grid(args.input, args.format)
    if args.order < 1:
        raise _InputError("--order must be at least 1")
    size = f.group.order ** (args.order - 1)
    if size > args.budget:
        raise _InputError(f"order-{args.order} table has {size} entries, over the budget {args.budget}")
    gio.dump_moments(moment_table(f, args.order), args.output)
    return EXIT_OK


def _parse_cap(raw: str) -> int | None:
    if raw == "auto":
        return None
    try:
        cap = int(raw)
    except ValueError as exc:
        raise _InputError(f"--cap must be 'auto' or an integer, got {raw!r}") from exc
    if cap < 1:
        raise _InputError("--cap must be positive")
    return cap


def _moment_tables_agree(g: RatFn, table: MomentTable) -> bool:
    mine = moment_table(g, table.max_order)
    return all(mine.tables[n] == table.tables[n] for n in range(1, table.max_order + 1))


def cmd_reconstruct(args) -> int:
    try:
        source = gio.load_any(args.input, args.format)
    except (OSError, ValueError, GridReconError) as exc:
        raise _InputError(f"cannot read {args.input}: {exc}") from exc
    cap = _parse_cap(args.cap)
    if isinstance(source, MomentTable):
        if cap is None:
            cap = source.max_order
        elif cap > source.max_order:
            raise _InputError(f"--cap {cap} exceeds the file's max_order {source.max_order}")
    elif isinstance(source, RatFn):
        if cap is None:
            supp = [x for x in support(dft(source)) if any(x)]
            rank = subgroup_generated(source.group, supp).rank
            cap = moment_budget(source.group.exponent, rank)
    else:
        raise _InputError("reconstruct expects a grid file or a moment file")
    cfg = ReconConfig.from_env()
    if args.precision:
        cfg = ReconConfig(precision_schedule=tuple(args.precision))
    oracle = MomentOracle(source, cap=cap)
    try:
        g, report = reconstruct_with_report(oracle, cfg)
    except OrderExceededError as exc:
        raise _InputError(f"moment data insufficient: {exc}") from exc
    if isinstance(source, RatFn):
        shift = verify_translation(source, g)
        verified = shift is not None
    else:
        shift = None
        verified = _moment_tables_agree(g, source)
    gio.dump_grid(g, args.output, _fmt(args, args.output))
    if args.report:
        payload = report.as_dict()
        payload["verified"] = verified
        if shift is not None:
            payload["translation"] = list(shift)
        gio.atomic_write(args.report, gio.dumps(payload))
    log.info("max order queried %d (cap %s)", report.max_order, cap)
    if not verified:
        print("post-verification failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    a = _load_grid(args.a, args.format)
    b = _load_grid(args.b, args.format)
    if a.group.dims != b.group.dims:
        raise _InputError(f"dimension mismatch: {list(a.group.dims)} vs {list(b.group.dims)}")
    y = verify_translation(a, b)
    if y is None:
        print("not translation-equivalent")
        return EXIT_FAIL
    print(" ".join(map(str, y)))
    return EXIT_OK


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise _InputError(f"--family {args.family} needs " + ", ".join("--" + n for n in missing))


def cmd_gen_example(args) -> int:
    out = Path(args.out)
    fmt = args.format or "json"
    ext = "csv" if fmt == "csv" else "json"
    fam = args.family
    files: list[str] = []
    try:
        if fam == "z6":
            _require(args, "a", "b")
            grids = {"f": family_z6(args.a, args.b)}
            claimed = 5
            params = {"a": args.a, "b": args.b}
        elif fam == "threer":
            _require(args, "r")
            f, g = family_threer(args.r)
            grids = {"f": f, "g": g}
            claimed = 3 * args.r
            params = {"r": args.r}
        elif fam == "sharp":
            _require(args, "p", "q", "r")
            f, g = family_sharp(args.p, args.q, args.r)
            grids = {"f": f, "g": g}
            claimed = 3 * args.r + 2
            params = {"p": args.p, "q": args.q, "r": args.r}
        elif fam in ("delta", "divisor"):
            _require(args, "dims")
            grp = make_group(args.dims)
            if fam == "delta":
                pair = family_delta(grp)
                claimed = grp.exponent - 1
                params = {"dims": list(grp.dims)}
            else:
                _require(args, "d")
                pair = family_divisor(grp, args.d)
                claimed = sum(grp.dims) // args.d
                params = {"dims": list(grp.dims), "d": args.d}
            grids = {}
            for name, spec in zip(("f", "g"), pair):
                path = out / f"{name}.spectral.json"
                gio.dump_spectral(spec, path)
                files.append(path.name)
        else:
            raise _InputError(f"unknown family {fam!r}")
    except GridReconError as exc:
        raise _InputError(str(exc)) from exc
    for name, grid in grids.items():
        path = out / f"{name}.{ext}"
        gio.dump_grid(grid, path, fmt)
        files.append(path.name)
    manifest = {
        "family": fam,
        "params": params,
        "files": files,
        "claimed_agreement_order": claimed,
    }
    gio.atomic_write(out / "manifest.json", gio.dumps(manifest))
    return EXIT_OK


# ---------------------------------------------------------------------- parser
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridrecon", description="Exact autocorrelations and reconstruction on finite grids.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("moments", help="write autocorrelation tables of orders 1..K")
    m.add_argument("input")
    m.add_argument("output")
    m.add_argument("--order", "-K", type=int, required=True)
    m.add_argument("--budget", type=int, default=DEFAULT_TABLE_BUDGET, help="max entries per table")
    m.add_argument("--format", choices=["json", "csv"])
    m.set_defaults(func=cmd_moments)

    r = sub.add_parser("reconstruct", help="recover a grid up to translation")
    r.add_argument("input", help="grid file (hidden-data mode) or moment file")
    r.add_argument("output")
    r.add_argument("--cap", default="auto")
    r.add_argument("--report")
    r.add_argument("--format", choices=["json", "csv"])
    r.add_argument("--precision", type=int, nargs="+", help="precision schedule in bits")
    r.set_defaults(func=cmd_reconstruct)

    v = sub.add_parser("verify", help="check translation equivalence of two grids")
    v.add_argument("a")
    v.add_argument("b")
    v.add_argument("--format", choices=["json", "csv"])
    v.set_defaults(func=cmd_verify)

    gx = sub.add_parser("gen-example", help="write a homometric example family")
    gx.add_argument("--family", required=True)
    gx.add_argument("--out", required=True, help="output directory")
    gx.add_argument("--a", type=int)
    gx.add_argument("--b", type=int)
    gx.add_argument("--p", type=int)
    gx.add_argument("--q", type=int)
    gx.add_argument("--r", type=int)
    gx.add_argument("--d", type=int)
    gx.add_argument("--dims", type=int, nargs="+")
    gx.add_argument("--format", choices=["json", "csv"])
    gx.set_defaults(func=cmd_gen_example)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GridReconError as exc:
        print(f"reconstruction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
