"""JSON documents for matrices, entropy vectors, complexes and reports.

Exact values are strings: rationals as ``"p/q"`` (integers as ``"p"``) and
infinity as ``"inf"``. Floats are written with 17 significant digits.
Subsets are index strings such as ``""``, ``"1"``, ``"13"``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .entropy import EntropyVector, LatticeMatrix
from .errors import MatrixShapeError
from .polyhedral import Cell, Complex, HPolyhedron, vrep_for_plot
from .series import ext, fmt_ext
from .subsets import elements, mask_to_str, str_to_mask


def rat(x) -> str:
    return fmt_ext(ext(x))


def real(x: float):
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(format(x, ".17g"))


def point(v) -> list[str]:
    return [rat(c) for c in v]


def parse_point(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise ValueError(f"malformed point {text!r}")
    return tuple(ext(p) for p in parts)


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, sort_keys=False, ensure_ascii=False) + "\n"


# -- matrices --------------------------------------------------------------------


def matrix_to_doc(A: LatticeMatrix) -> dict:
    doc = {"n": A.n, "r": A.r, "rows": A.to_strings()}
    if A.label:
        doc["label"] = A.label
    return doc


def matrix_from_doc(doc: dict) -> LatticeMatrix:
    rows = doc.get("rows")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MatrixShapeError("matrix document needs a list of rows")
    A = LatticeMatrix.from_strings([[str(e) for e in r] for r in rows], label=doc.get("label"))
    if "n" in doc and int(doc["n"]) != A.n or "r" in doc and int(doc["r"]) != A.r:
        raise MatrixShapeError(f"declared shape {doc.get('r')}x{doc.get('n')} differs from rows {A.r}x{A.n}")
    return A


# -- entropy vectors ---------------------------------------------------------------


def subset_order(n: int) -> list[int]:
    """Masks ordered by size, then lexicographically by their index strings."""
    return sorted(range(1 << n), key=lambda m: (bin(m).count("1"), elements(m)))


def entropy_to_doc(h: EntropyVector) -> dict:
    return {"n": h.n, "h": {mask_to_str(m, h.n): rat(h[m]) for m in subset_order(h.n)}}


def entropy_from_doc(doc: dict) -> EntropyVector:
    n = int(doc["n"])
    return EntropyVector.from_dict(n, {k: ext(v) for k, v in doc["h"].items()})


def subsets(masks, n) -> list[str]:
    return [mask_to_str(m, n) for m in masks]


# -- polyhedra and complexes ---------------------------------------------------------


def hrep_to_doc(P: HPolyhedron) -> dict:
    return {
        "eq": [[*point(a), rat(b)] for a, b in P.equalities],
        "ineq": [[*point(a), rat(b)] for a, b in P.inequalities],
    }


def hrep_from_doc(doc: dict, n: int) -> HPolyhedron:
    def rows(key):
        return tuple((tuple(ext(x) for x in row[:n]), ext(row[n])) for row in doc.get(key, []))

    return HPolyhedron(n, rows("eq"), rows("ineq"))


def vrep_to_doc(cell: Cell) -> dict:
    V = vrep_for_plot(cell)
    return {
        "vertices": [point(x) for x in V.vertices],
        "rays": [point(d) for d in V.rays],
        "lineality": [point(d) for d in V.lineality],
    }


def cell_to_doc(cell: Cell, n: int, with_vrep: bool = False) -> dict:
    doc = {
        "id": cell.id,
        "dim": cell.dim,
        "active": subsets(cell.key, n),
        "label": None if cell.label is None else mask_to_str(cell.label, n),
        "witness": point(cell.witness),
        "hrep": hrep_to_doc(cell.hrep),
        "faces": sorted(cell.face_ids),
    }
    if with_vrep:
        doc["vrep"] = vrep_to_doc(cell)
    return doc


def complex_to_doc(c: Complex, sigma_only: bool = False, with_vrep: bool = False) -> dict:
    ids = c.sigma_ids if sigma_only else range(len(c.cells))
    keep = set(ids)
    cells = []
    for i in ids:
        d = cell_to_doc(c.cells[i], c.n, with_vrep)
        d["faces"] = [f for f in d["faces"] if f in keep]
        cells.append(d)
    return {
        "n": c.n,
        "h": entropy_to_doc(c.h)["h"],
        "cells": cells,
        "maximal_ids": list(c.maximal_ids),
        "sigma_ids": list(c.sigma_ids),
        "f_vector": {str(k): v for k, v in c.f_vector(ids).items()},
    }


def complex_from_doc(doc: dict) -> Complex:
    """Inverse of :func:`complex_to_doc` for full (not ``sigma_only``) documents."""
    n = int(doc["n"])
    h = EntropyVector.from_dict(n, {k: ext(v) for k, v in doc["h"].items()})
    cells = []
    for d in doc["cells"]:
        label = d.get("label")
        cells.append(
            Cell(
                id=int(d["id"]),
                key=tuple(sorted(str_to_mask(s, n) for s in d["active"])),
                dim=int(d["dim"]),
                hrep=hrep_from_doc(d["hrep"], n),
                witness=tuple(ext(x) for x in d["witness"]),
                label=None if label is None else str_to_mask(label, n),
                face_ids=frozenset(int(f) for f in d["faces"]),
            )
        )
    cells.sort(key=lambda c: c.id)
    labeled = any(c.label is not None for c in cells)
    return Complex(n, h, tuple(cells), tuple(doc["maximal_ids"]), tuple(doc["sigma_ids"]), labeled)


def plot_doc(c: Complex, sigma_only: bool = False) -> dict:
    """Plot data: per cell its dimension, labels and exact V-representation as floats and strings.

    Schema: ``{"n", "cells": [{"id", "dim", "active", "label", "in_sigma",
    "vertices", "rays", "lineality"}]}``; coordinates are rational strings.
    """
    sig = set(c.sigma_ids)
    ids = c.sigma_ids if sigma_only else range(len(c.cells))
    cells = []
    for i in ids:
        cell = c.cells[i]
        V = vrep_for_plot(cell)
        cells.append(
            {
                "id": cell.id,
                "dim": cell.dim,
                "active": subsets(cell.key, c.n),
                "label": None if cell.label is None else mask_to_str(cell.label, c.n),
                "in_sigma": cell.id in sig,
                "vertices": [point(x) for x in V.vertices],
                "rays": [point(d) for d in V.rays],
                "lineality": [point(d) for d in V.lineality],
            }
        )
    return {"n": c.n, "cells": cells}


def fraction_or_inf(s) -> Fraction | float:
    return ext(s)
