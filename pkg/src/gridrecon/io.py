"""Byte-deterministic file formats for grids, moment tables and spectral witnesses.

Rationals are always written as canonical ``"p/q"`` (or ``"n"``) strings.
Writes go through a temporary file and ``os.replace`` so readers never see a
half-written file.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cyclotomic import get_context
from .errors import InvalidElementError
from .groups import make_group
from .moments import MomentTable
from .spectral import RatFn, SpecFn

__all__ = [
    "atomic_write",
    "dump_grid",
    "dump_moments",
    "dump_spectral",
    "dumps",
    "load_any",
    "load_grid",
    "load_moments",
    "load_spectral",
    "parse_rational",
]


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise InvalidElementError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidElementError(f"rationals must be strings like '3/4', got {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidElementError(f"not a rational: {text!r}") from exc
    return value


def atomic_write(path: str | os.PathLike, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj: dict) -> str:
    """Sorted keys; list-valued fields get one compact item per line."""
    lines = []
    keys = sorted(obj)
    for i, key in enumerate(keys):
        value = obj[key]
        sep = "," if i < len(keys) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            items = [json.dumps(v, sort_keys=True) for v in value]
            body = ",\n".join("  " + it for it in items)
            lines.append(f" {json.dumps(key)}: [\n{body}\n ]{sep}")
        else:
            lines.append(f" {json.dumps(key)}: {json.dumps(value, sort_keys=True)}{sep}")
    return "{\n" + "\n".join(lines) + "\n}\n"


# ----------------------------------------------------------------------- grids
def grid_to_text(f: RatFn, fmt: str = "json") -> str:
    dims = list(f.group.dims)
    values = [str(v) for v in f.values]
    if fmt == "json":
        return dumps({"dims": dims, "values": values})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(dims)
        width = dims[-1]
        for i in range(0, len(values), width):
            writer.writerow(values[i : i + width])
        return buf.getvalue()
    raise ValueError(f"unknown grid format {fmt!r}")


def dump_grid(f: RatFn, path, fmt: str = "json") -> None:
    atomic_write(path, grid_to_text(f, fmt))


def _grid_from_parts(dims, values) -> RatFn:
    if not isinstance(dims, list) or not dims:
        raise InvalidElementError("dims must be a nonempty list of positive integers")
    g = make_group([int(d) for d in dims])
    vals = [parse_rational(v) for v in values]
    if len(vals) != g.order:
        raise InvalidElementError(f"expected {g.order} values for dims {dims}, got {len(vals)}")
    return RatFn(g, tuple(vals))


def _csv_grid(text: str) -> RatFn:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise InvalidElementError("empty csv grid")
    try:
        dims = [int(c) for c in rows[0]]
    except ValueError as exc:
        raise InvalidElementError("first csv row must list the grid dimensions") from exc
    return _grid_from_parts(dims, [c.strip() for r in rows[1:] for c in r])


def load_grid(path, fmt: str | None = None) -> RatFn:
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "csv" or (fmt is None and str(path).endswith(".csv")):
        return _csv_grid(text)
    obj = json.loads(text)
    if not isinstance(obj, dict) or "values" not in obj:
        raise InvalidElementError(f"{path} is not a grid file")
    return _grid_from_parts(obj.get("dims"), obj["values"])


# --------------------------------------------------------------------- moments
def moments_to_text(table: MomentTable) -> str:
    entries = []
    for n in range(1, table.max_order + 1):
        for shifts in sorted(table.tables[n]):
            value = table.tables[n][shifts]
            if value:
                entries.append({"shifts": [list(s) for s in shifts], "value": str(value)})
    return dumps({"dims": list(table.group.dims), "entries": entries, "max_order": table.max_order})


def dump_moments(table: MomentTable, path) -> None:
    atomic_write(path, moments_to_text(table))


def _moments_from_obj(obj) -> MomentTable:
    try:
        g = make_group([int(d) for d in obj["dims"]])
        K = int(obj["max_order"])
        table = MomentTable(g, K)
        for item in obj["entries"]:
            shifts = [tuple(int(c) for c in s) for s in item["shifts"]]
            for s in shifts:
                if len(s) != len(g.dims):
                    raise InvalidElementError(f"shift {s} does not match dims {g.dims}")
            table.set(shifts, parse_rational(item["value"]))
    except (KeyError, TypeError) as exc:
        raise InvalidElementError(f"malformed moment file: {exc}") from exc
    return table


def load_moments(path) -> MomentTable:
    return _moments_from_obj(json.loads(Path(path).read_text(encoding="utf-8")))


# -------------------------------------------------------------------- spectral
def spectral_to_text(F: SpecFn) -> str:
    points = [
        {"x": list(x), "coeffs": [str(c) for c in v.coeffs]}
        for x, v in F.items()
        if v
    ]
    return dumps({"dims": list(F.group.dims), "conductor": F.group.exponent, "transform": points})


def dump_spectral(F: SpecFn, path) -> None:
    atomic_write(path, spectral_to_text(F))


def load_spectral(path) -> SpecFn:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    g = make_group([int(d) for d in obj["dims"]])
    ctx = get_context(g.exponent)
    mapping = {
        tuple(int(c) for c in item["x"]): ctx.from_coeffs(parse_rational(c) for c in item["coeffs"])
        for item in obj["transform"]
    }
    return SpecFn.from_mapping(g, mapping)


def load_any(path, fmt: str | None = None):
    """Return a :class:`RatFn`, :class:`MomentTable` or :class:`SpecFn` depending on content."""
    if fmt == "csv" or (fmt is None and str(path).endswith(".csv")):
        return load_grid(path, "csv")
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(obj, dict):
        raise InvalidElementError(f"{path}: unrecognised file")
    if "values" in obj:
        return _grid_from_parts(obj.get("dims"), obj["values"])
    if "entries" in obj:
        return _moments_from_obj(obj)
    if "transform" in obj:
        return load_spectral(path)
    raise InvalidElementError(f"{path}: unrecognised file")
