"""Deterministic file formats: function CSV, measure JSON, basis manifests, reports.

Reports must be byte-identical across runs with the same configuration and
seed, so JSON is rendered by a small writer with insertion-ordered keys and
floats at 17 significant digits instead of the stdlib encoder.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .bases import OrthoBasis
from .measures import (
    DiscreteMeasure,
    SampledFunction,
    make_interval_grid,
    make_product_space,
    make_square_grid,
)


def fmt_float(x: float) -> str:
    if x != x:
        raise ValueError("NaN is not representable in reports")
    if x in (float("inf"), float("-inf")):
        raise ValueError("infinity is not representable in reports")
    s = f"{x:.17g}"
    return s


def dumps(obj, indent: int = 0) -> str:
    """Render JSON with stable key order and fixed float formatting."""
    pad = "  " * indent
    inner_pad = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps(v, indent + 1) for v in obj]
        if sum(len(s) for s in items) < 60 and all("\n" not in s for s in items):
            return "[" + ", ".join(items) + "]"
        body = ",\n".join(inner_pad + s for s in items)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for k, v in obj.items():
            parts.append(inner_pad + json.dumps(str(k)) + ": " + dumps(v, indent + 1))
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def write_report(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------


def measure_to_json(measure: DiscreteMeasure) -> dict:
    if measure.kind in ("interval-grid", "square-grid"):
        return {"kind": measure.kind, "n": measure.meta["n"]}
    support = [
        [float(v.real), float(v.imag), float(p)] for v, p in measure.meta["support"]
    ]
    return {"kind": "product-space", "support": support, "m": measure.meta["m"]}


def measure_from_json(doc: dict) -> DiscreteMeasure:
    kind = doc.get("kind")
    if kind == "interval-grid":
        return make_interval_grid(int(doc["n"]))
    if kind == "square-grid":
        return make_square_grid(int(doc["n"]))
    if kind == "product-space":
        support = [(complex(re, im), float(p)) for re, im, p in doc["support"]]
        return make_product_space(support, int(doc["m"]))
    raise ValueError(f"unknown measure kind {kind!r}")


# ---------------------------------------------------------------------------
# sampled functions (CSV, header atom,weight,re,im)
# ---------------------------------------------------------------------------


def function_to_csv(f: SampledFunction, path) -> None:
    mu = f.measure
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["atom", "weight", "re", "im"])
        for atom, wt, val in zip(mu.atoms, mu.weights, f.values):
            writer.writerow([atom, fmt_float(float(wt)), fmt_float(val.real), fmt_float(val.imag)])


def function_from_csv(path, measure: DiscreteMeasure) -> SampledFunction:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["atom", "weight", "re", "im"]:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = list(reader)
    if len(rows) != measure.n_atoms:
        raise ValueError(
            f"CSV has {len(rows)} rows, measure has {measure.n_atoms} atoms"
        )
    weights = np.array([float(r[1]) for r in rows])
    if not np.allclose(weights, measure.weights, rtol=0, atol=1e-12):
        raise ValueError("CSV weights disagree with the measure")
    values = np.array([float(r[2]) + 1j * float(r[3]) for r in rows])
    return SampledFunction(values, measure)


# ---------------------------------------------------------------------------
# basis manifests
# ---------------------------------------------------------------------------


def save_basis(basis: OrthoBasis, path) -> None:
    """Write a JSON manifest plus one element CSV per basis function."""
    path = Path(path)
    stem = path.stem
    names = []
    for j, r in enumerate(basis.elements, start=1):
        name = f"{stem}_r{j:02d}.csv"
        function_to_csv(r, path.parent / name)
        names.append(name)
    doc = {
        "format": "spr-lab-basis",
        "version": 1,
        "field": basis.field,
        "provenance": basis.provenance,
        "measure": measure_to_json(basis.measure),
        "elements": names,
    }
    write_report(doc, path)


def load_basis(path) -> OrthoBasis:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("format") != "spr-lab-basis":
        raise ValueError("not a basis manifest")
    measure = measure_from_json(doc["measure"])
    elements = [function_from_csv(path.parent / name, measure) for name in doc["elements"]]
    from .bases import _finish_basis  # reuses the orthonormality validation

    basis = _finish_basis(elements, doc["field"], doc.get("provenance", {}))
    return basis
