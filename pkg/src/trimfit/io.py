"""CSV datasets, benchmark manifests and JSON reports."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import fields
from pathlib import Path

import numpy as np

from .errors import InputError
from .regression import Dataset
from .simulation import ScenarioConfig, default_outlier_row

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

SCHEMA_VERSION = 1
MANIFEST_DIR = Path(__file__).parent / "manifests"


def read_csv(path, response: str):
    """Load a headed, comma-separated numeric table.

    Returns ``(dataset, predictor_names)``; every column other than
    ``response`` becomes a predictor, in file order.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    rows = [r for r in csv.reader(text.splitlines()) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if response not in header:
        raise InputError(f"{path}: response column '{response}' not found (columns: {', '.join(header)})")
    if len(header) < 2:
        raise InputError(f"{path}: need at least one predictor column")
    body = rows[1:]
    if not body:
        raise InputError(f"{path}: no data rows")
    values = np.empty((len(body), len(header)))
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
        for j, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise InputError(f"{path}:{lineno}: '{cell.strip()}' in column '{header[j]}' is not a number") from None
            if not math.isfinite(v):
                raise InputError(f"{path}:{lineno}: non-finite value in column '{header[j]}'")
            values[lineno - 2, j] = v
    ycol = header.index(response)
    names = [h for j, h in enumerate(header) if j != ycol]
    X = np.delete(values, ycol, axis=1)
    return Dataset(X, values[:, ycol]), names


def write_csv(path, d: Dataset, names=None, response: str = "y") -> None:
    names = names or [f"x{j + 1}" for j in range(d.p - 1)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([*names, response])
        for x, y in zip(d.predictors, d.responses):
            w.writerow([repr(float(v)) for v in (*x, y)])


_FIELD_TYPES = {
    "name": str, "n": int, "p": int, "epsilon": float, "replications": int,
    "beta0": list, "covariance": str, "rho": float, "outlier_row": list,
    "seed": int, "methods": list, "alpha": float, "lst_reps": int,
    "lst_delta": float, "lst_extend": bool, "mad_constant": float,
    "lts_h": int, "lts_starts": int, "lts_csteps": int,
}
assert set(_FIELD_TYPES) == {f.name for f in fields(ScenarioConfig)}


def _check_type(label: str, key: str, value):
    want = _FIELD_TYPES[key]
    if want is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if want is int and isinstance(value, bool):
        raise InputError(f"{label}: field '{key}' must be an integer")
    if not isinstance(value, want):
        raise InputError(f"{label}: field '{key}' must be of type {want.__name__}")
    if want is list:
        if key == "methods":
            if not all(isinstance(v, str) for v in value):
                raise InputError(f"{label}: field 'methods' must list method names")
            return tuple(value)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            raise InputError(f"{label}: field '{key}' must be a list of numbers")
        return tuple(float(v) for v in value)
    return value


def scenario_from_mapping(raw: dict, label: str = "scenario") -> ScenarioConfig:
    raw = dict(raw)
    outlier_value = raw.pop("outlier_value", None)
    unknown = sorted(set(raw) - set(_FIELD_TYPES))
    if unknown:
        raise InputError(f"{label}: unknown field '{unknown[0]}'")
    for key in ("n", "p"):
        if key not in raw:
            raise InputError(f"{label}: missing required field '{key}'")
    kw = {k: _check_type(label, k, v) for k, v in raw.items()}
    if outlier_value is not None:
        if "outlier_row" in kw:
            raise InputError(f"{label}: give 'outlier_row' or 'outlier_value', not both")
        if not isinstance(outlier_value, (int, float)) or isinstance(outlier_value, bool):
            raise InputError(f"{label}: field 'outlier_value' must be a number")
        kw["outlier_row"] = default_outlier_row(kw["p"], outlier_value)
    try:
        return ScenarioConfig(**kw)
    except ValueError as exc:
        raise InputError(f"{label}: {exc}") from None


def load_manifest(path) -> list:
    """Parse a TOML manifest: optional ``[defaults]`` plus ``[[scenario]]`` tables."""
    path = Path(path)
    if not path.exists() and (MANIFEST_DIR / path.name).exists():
        path = MANIFEST_DIR / path.name
    try:
        doc = tomllib.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read manifest {path}: {exc.strerror}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    extra = sorted(set(doc) - {"defaults", "scenario"})
    if extra:
        raise InputError(f"{path}: unknown top-level field '{extra[0]}'")
    defaults = doc.get("defaults", {})
    scenarios = doc.get("scenario")
    if not isinstance(scenarios, list) or not scenarios:
        raise InputError(f"{path}: field 'scenario' must hold at least one [[scenario]] table")
    out = []
    for i, raw in enumerate(scenarios):
        label = f"{path.name}: scenario '{raw.get('name', i + 1)}'"
        out.append(scenario_from_mapping({**defaults, **raw}, label))
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise InputError(f"{path}: field 'name' must be unique across scenarios")
    return out


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def dumps(payload: dict) -> str:
    """Versioned, deterministic JSON (non-finite floats become null)."""
    return json.dumps(_clean({"schema_version": SCHEMA_VERSION, **payload}), indent=2, sort_keys=True) + "\n"
