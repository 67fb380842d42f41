"""State files, sigma specifications, CSV tables and JSON reports.

State files are JSON objects ``{"dim": d, "entries": [[re, im], ...]}``
with the d*d entries listed row-major.  CSV numbers are written with 17
significant digits so they round-trip exactly; JSON uses sorted keys and
the shortest round-trip float repr, so equal inputs give equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import BadSigmaSpec, ParseError
from .states import DensityMatrix, as_matrix, maximally_mixed, validate

CSV_FLOAT = "{:.17g}"


def state_to_dict(state) -> dict:
    m = as_matrix(state)
    return {
        "dim": int(m.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def state_from_dict(obj) -> DensityMatrix:
    """Parse and validate a state object; raises ParseError on bad structure."""
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ParseError("state needs the fields 'dim' and 'entries'")
    d = obj["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError(f"'dim' must be a positive integer, got {d!r}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != d * d:
        raise ParseError(f"'entries' must list {d * d} [re, im] pairs")
    try:
        arr = np.array(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric state entry: {exc}") from exc
    if arr.shape != (d * d, 2):
        raise ParseError("every entry must be a [re, im] pair")
    if not np.all(np.isfinite(arr)):
        raise ParseError("state entries must be finite")
    return validate((arr[:, 0] + 1j * arr[:, 1]).reshape(d, d))


def read_state(path) -> DensityMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read state file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return state_from_dict(obj)


def write_state(state, path):
    Path(path).write_text(dumps_json(state_to_dict(state)))


def parse_sigma_spec(spec, d=None) -> DensityMatrix:
    """``mixed``, ``diag:v1,v2,...`` or ``file:PATH``.

    ``mixed`` needs ``d``; for the other forms a given ``d`` must match.
    """
    if not isinstance(spec, str) or not spec:
        raise BadSigmaSpec("empty sigma specification")
    if spec == "mixed":
        if d is None:
            raise BadSigmaSpec("'mixed' needs a dimension")
        return maximally_mixed(d)
    head, sep, rest = spec.partition(":")
    if not sep:
        raise BadSigmaSpec(f"unrecognised sigma specification {spec!r}")
    if head == "diag":
        try:
            vals = [float(v) for v in rest.split(",")]
        except ValueError as exc:
            raise BadSigmaSpec(f"bad diagonal list {rest!r}") from exc
        if not all(math.isfinite(v) for v in vals):
            raise BadSigmaSpec("diagonal entries must be finite")
        try:
            sigma = validate(np.diag(np.array(vals, dtype=complex)))
        except ValueError as exc:
            raise BadSigmaSpec(f"diagonal {vals} is not a state: {exc}") from exc
    elif head == "file":
        try:
            sigma = read_state(rest)
        except ValueError as exc:
            raise BadSigmaSpec(str(exc)) from exc
    else:
        raise BadSigmaSpec(f"unrecognised sigma specification {spec!r}")
    if d is not None and sigma.dim != d:
        raise BadSigmaSpec(f"sigma has dimension {sigma.dim}, expected {d}")
    return sigma


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return CSV_FLOAT.format(float(v))
    return "" if v is None else str(v)


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def emit(text, path=None):
    """Write ``text`` to ``path``, or to stdout when no path is given."""
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
