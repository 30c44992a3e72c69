"""CSV and structured-text output with provenance headers.

Floats are written with repr (shortest round-trip form), so re-reading
a file reproduces bit-identical values.  Every emitted file begins with
a provenance header carrying the tool version and the full parameter
echo of the run.
"""

import json
from dataclasses import asdict, is_dataclass

import numpy as np

from . import __version__


def fmt_value(x):
    """Canonical text for one CSV cell; floats round-trip exactly."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    s = str(x)
    if "," in s or "\n" in s:
        raise ValueError(f"cell value {s!r} would break the CSV layout")
    return s


def provenance_lines(command, params):
    lines = [f"# zetacurves {__version__}", f"# command: {command}"]
    for k in params:
        lines.append(f"# param {k} = {params[k]}")
    return lines


def write_csv(path, columns, rows, command="", params=None):
    with open(path, "w") as fh:
        for line in provenance_lines(command, params or {}):
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(fmt_value(x) for x in row) + "\n")


def read_csv(path):
    """(columns, float ndarray) from a file written by write_csv."""
    columns = None
    data = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if columns is None:
                columns = line.split(",")
                continue
            data.append([float(x) for x in line.split(",")])
    if columns is None:
        raise ValueError(f"no header row in {path}")
    return columns, np.array(data, dtype=np.float64)


def _plain(obj):
    if is_dataclass(obj):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def to_structured(result, command="", params=None):
    """One top-level object per run; field order is fixed for diffing."""
    doc = {
        "tool": "zetacurves",
        "version": __version__,
        "command": command,
        "params": _plain(params or {}),
        "result": _plain(result),
    }
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=True) + "\n"


def write_structured(path, result, command="", params=None):
    with open(path, "w") as fh:
        fh.write(to_structured(result, command, params))


def read_structured(path):
    with open(path) as fh:
        return json.load(fh)
