"""JSON and CSV serialization.

Rationals serialize as "p/q" strings to preserve exactness; floats as
shortest round-trip decimals. JSON-loaded float weights are accepted when
they sum to within 1e-9 of 1 and are then exactly renormalized to rationals.
"""
from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import Iterable

import numpy as np

from .analysis import DecayReport, SweepRow
from .errors import InputError
from .measures import DiscreteMeasure, JointMeasure
from .spaces import FiniteMetricSpace

WEIGHT_SUM_TOL = Fraction(1, 10 ** 9)


def rational_to_str(x: Fraction) -> str:
    return str(x)


def value_to_str(value, exact: bool) -> str:
    if value is None:
        return "-"
    if exact:
        return str(Fraction(value))
    return repr(float(value))


def parse_value(s: str):
    if s == "-":
        return None
    if "/" in s:
        return Fraction(s)
    try:
        return Fraction(int(s))
    except ValueError:
        return float(s)


def space_to_dict(space: FiniteMetricSpace) -> dict:
    out = {"labels": list(space.labels), "dist": space.dist.tolist()}
    if space.coords is not None:
        out["coords"] = space.coords.tolist()
    return out


def space_from_dict(d: dict, validate: bool = True) -> FiniteMetricSpace:
    try:
        return FiniteMetricSpace(
            tuple(d["labels"]),
            np.array(d["dist"], dtype=float),
            coords=None if d.get("coords") is None else np.array(d["coords"], dtype=float),
            validate=validate,
        )
    except KeyError as exc:
        raise InputError(f"space dictionary is missing key {exc}") from exc


def _normalize_weights(flat: list) -> list[Fraction]:
    """Exact weights from mixed string/number entries; floats renormalized."""
    vals = []
    any_float = False
    for x in flat:
        if isinstance(x, str):
            vals.append(Fraction(x))
        elif isinstance(x, int):
            vals.append(Fraction(x))
        elif isinstance(x, float):
            vals.append(Fraction(x))
            any_float = True
        else:
            raise InputError(f"weight entry {x!r} is not a number or 'p/q' string")
    total = sum(vals)
    if total != 1:
        if not any_float or abs(total - 1) > WEIGHT_SUM_TOL:
            raise InputError(f"weights sum to {total}, not 1")
        vals = [v / total for v in vals]
    return vals


def measure_to_dict(m: DiscreteMeasure) -> dict:
    return {
        "space1": space_to_dict(m.space),
        "weights": [str(w) for w in m.weights],
    }


def joint_to_dict(j: JointMeasure) -> dict:
    return {
        "space1": space_to_dict(j.space1),
        "space2": space_to_dict(j.space2),
        "weights": [[str(w) for w in row] for row in j.weights],
    }


def measure_from_dict(d: dict, validate_spaces: bool = True):
    """Load a JointMeasure (space1 + space2) or a DiscreteMeasure (space1 only)."""
    if "space1" not in d or "weights" not in d:
        raise InputError("measure JSON needs 'space1' and 'weights'")
    s1 = space_from_dict(d["space1"], validate=validate_spaces)
    if "space2" in d:
        s2 = space_from_dict(d["space2"], validate=validate_spaces)
        rows = d["weights"]
        if not rows or not isinstance(rows[0], list):
            raise InputError("joint measure weights must be a matrix")
        flat = _normalize_weights([x for row in rows for x in row])
        ncols = len(rows[0])
        w = tuple(
            tuple(flat[r * ncols + c] for c in range(ncols)) for r in range(len(rows))
        )
        return JointMeasure(s1, s2, w)
    flat = _normalize_weights(list(d["weights"]))
    return DiscreteMeasure(s1, tuple(flat))


def load_measure(path: str, validate_spaces: bool = True):
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return measure_from_dict(payload, validate_spaces=validate_spaces)


def save_measure(obj, path: str) -> None:
    d = joint_to_dict(obj) if isinstance(obj, JointMeasure) else measure_to_dict(obj)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(d, fh, indent=2)
        fh.write("\n")


REPORT_COLUMNS = ("family", "n", "metric", "value", "exact", "mode", "certificate_ref")


def write_report_csv(rows: Iterable[SweepRow], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.family,
                    r.n,
                    r.metric,
                    value_to_str(r.value, r.exact),
                    str(r.exact).lower(),
                    r.mode,
                    r.note or "-",
                ]
            )


def read_report_csv(path: str) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        out = []
        for row in reader:
            row = dict(row)
            row["n"] = int(row["n"])
            row["value"] = parse_value(row["value"])
            row["exact"] = row["exact"] == "true"
            out.append(row)
        return out


def write_plot_data(report: DecayReport, path: str) -> None:
    """(n, value) columns per metric for external plotting."""
    metrics = sorted({r.metric for r in report.rows})
    ns = sorted({r.n for r in report.rows})
    lookup = {(r.n, r.metric): r.value for r in report.rows}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n"] + metrics)
        for n in ns:
            row = [n]
            for m in metrics:
                v = lookup.get((n, m))
                row.append("" if v is None else float(v))
            writer.writerow(row)


def read_series_csv(path: str) -> list[tuple[int, float]]:
    """A two-column (n, value) series; header row optional."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() in ("n", ""):
                continue
            out.append((int(row[0]), float(parse_value(row[1].strip()) or 0)))
    return out
