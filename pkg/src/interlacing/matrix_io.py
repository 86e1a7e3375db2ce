"""Matrix files (CSV or JSON) and JSON reports."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .charpoly import as_real_matrix, is_exact_matrix


class MatrixFormatError(ValueError):
    pass


def _token(tok: str, exact: bool):
    tok = tok.strip()
    if not tok:
        raise MatrixFormatError("empty entry")
    try:
        return Fraction(tok) if exact else float(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(f"bad entry {tok!r}") from exc


def parse_csv(text: str, exact: bool = False) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise MatrixFormatError("no rows")
    width = len(rows[0])
    for n, r in enumerate(rows, 1):
        if len(r) != width:
            raise MatrixFormatError(f"row {n} has {len(r)} entries, expected {width}")
    exact = exact or any("/" in c for r in rows for c in r)
    data = [[_token(c, exact) for c in r] for r in rows]
    return as_real_matrix(data, exact=exact)


def parse_json(text: str, exact: bool = False) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not {"rows", "cols", "data"} <= doc.keys():
        raise MatrixFormatError('JSON matrix needs "rows", "cols" and "data"')
    data = doc["data"]
    if not isinstance(data, list) or len(data) != doc["rows"]:
        raise MatrixFormatError("data length does not match rows")
    if any(not isinstance(r, list) or len(r) != doc["cols"] for r in data):
        raise MatrixFormatError("row length does not match cols")
    exact = exact or any(isinstance(v, str) and "/" in v for r in data for v in r)
    return as_real_matrix([[_token(str(v), exact) for v in r] for r in data], exact=exact)


def read_matrix(path: str | Path, exact: bool = False) -> np.ndarray:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json(text, exact)
    return parse_csv(text, exact)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


def format_matrix(B: np.ndarray, fmt: str = "csv") -> str:
    if fmt == "json":
        doc = {"rows": B.shape[0], "cols": B.shape[1],
               "data": [[_fmt(v) if is_exact_matrix(B) else float(v) for v in row] for row in B]}
        return json.dumps(doc) + "\n"
    return "".join(",".join(_fmt(v) for v in row) + "\n" for row in B)


def write_matrix(B: np.ndarray, path: str | Path) -> None:
    path = Path(path)
    path.write_text(format_matrix(B, "json" if path.suffix.lower() == ".json" else "csv"))
