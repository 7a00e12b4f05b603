"""JSON documents in and out.

Rationals always travel as strings (``"p/q"`` or an integer); points are
referred to by label. Input errors carry a JSON-pointer to the offending node.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Optional

from .axioms import CertificationResult, ViolationReport
from .core import (
    BMetricError,
    FiniteSpace,
    RationalGrammarError,
    SelfMap,
    format_rational,
    make_map,
    make_space,
    parse_rational,
)
from .gallery import GalleryInstance, build
from .maps import UNCONSTRAINED, BoundReport, ConditionReport, ContractivityReport
from .picard import BoundednessReport, CauchyReport, OrbitDiagnostics, OrbitTrace


class SchemaError(BMetricError, ValueError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


def _load(document):
    if isinstance(document, (str, bytes)):
        try:
            return json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return document


def _rational_at(value, pointer: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(pointer, f"expected a rational string, got {json.dumps(value)}")
    try:
        return parse_rational(str(value))
    except RationalGrammarError as exc:
        raise SchemaError(pointer, str(exc)) from None


def parse_space(document) -> FiniteSpace:
    """Space from ``{"labels": [...], "dist": [[...]]}`` or a gallery spec."""
    return parse_input(document)[0]


def parse_input(document) -> tuple[FiniteSpace, Optional[SelfMap], Optional[GalleryInstance]]:
    """Space, map (if the document carries one) and gallery instance (if any)."""
    doc = _load(document)
    if not isinstance(doc, dict):
        raise SchemaError("", "expected a JSON object")
    if "gallery" in doc:
        try:
            inst = build(doc)
        except (KeyError, ValueError) as exc:
            raise SchemaError("/gallery", str(exc).strip("'\"")) from None
        return inst.space, inst.map, inst

    labels = doc.get("labels")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SchemaError("/labels", "expected a list of strings")
    dist = doc.get("dist")
    if not isinstance(dist, list):
        raise SchemaError("/dist", "expected a square list of lists")
    if len(dist) != len(labels):
        raise SchemaError("/dist", f"expected {len(labels)} rows, got {len(dist)}")
    table = []
    for i, row in enumerate(dist):
        if not isinstance(row, list) or len(row) != len(labels):
            raise SchemaError(f"/dist/{i}", f"expected a row of {len(labels)} entries")
        table.append([_rational_at(x, f"/dist/{i}/{j}") for j, x in enumerate(row)])
    try:
        space = make_space(labels, table)
    except BMetricError as exc:
        pair = getattr(exc, "pair", None)
        pointer = f"/dist/{pair[0]}/{pair[1]}" if pair else "/dist"
        raise SchemaError(pointer, str(exc)) from None
    tmap = parse_map(doc, space) if ("image" in doc or "map" in doc) else None
    return space, tmap, None


def parse_map(document, space: FiniteSpace) -> SelfMap:
    """Map from ``{"image": [label | null, ...]}`` or ``{"map": {label: label}}``."""
    doc = _load(document)
    if not isinstance(doc, dict):
        raise SchemaError("", "expected a JSON object")

    def resolve(label, pointer):
        if label is None:
            return None
        try:
            return space.index(label)
        except KeyError:
            raise SchemaError(pointer, f"unknown point {label!r}") from None

    if "image" in doc:
        image = doc["image"]
        if not isinstance(image, list) or len(image) != space.n:
            raise SchemaError("/image", f"expected a list of {space.n} labels")
        resolved = [resolve(t, f"/image/{i}") for i, t in enumerate(image)]
    elif "map" in doc:
        table = doc["map"]
        if not isinstance(table, dict):
            raise SchemaError("/map", "expected an object from label to label")
        for key in table:
            resolve(key, f"/map/{key}")
        resolved = [resolve(table.get(lab), f"/map/{lab}") for lab in space.labels]
    else:
        raise SchemaError("", "expected an 'image' list or a 'map' object")
    return make_map(space, resolved, name=doc.get("name", ""))


def space_to_dict(space: FiniteSpace) -> dict:
    return {
        "labels": list(space.labels),
        "dist": [[format_rational(x) for x in row] for row in space.dist],
    }


def map_to_dict(space: FiniteSpace, tmap: SelfMap) -> dict:
    return {"image": [None if t is None else space.labels[t] for t in tmap.image]}


def _r(q):
    return None if q is None else format_rational(q)


def _rs(seq):
    return [format_rational(q) for q in seq]


def violation_to_dict(space: FiniteSpace, w: ViolationReport) -> dict:
    x, y = w.endpoints
    return {
        "endpoints": [space.labels[x], space.labels[y]],
        "chain": [space.labels[u] for u in w.chain],
        "lhs": format_rational(w.lhs),
        "rhs": format_rational(w.rhs),
    }


def certification_to_dict(space: FiniteSpace, r: CertificationResult) -> dict:
    return {
        "verdict": r.verdict,
        "v": r.v,
        "s": format_rational(r.s),
        "points": r.n,
        "tuples_checked": r.tuples_checked,
        "witness": None if r.witness is None else violation_to_dict(space, r.witness),
    }


def contractivity_to_dict(space: FiniteSpace, r: ContractivityReport) -> dict:
    lab = space.labels
    return {
        "holds": r.holds,
        "pairs_checked": r.pairs_checked,
        "violations": [
            {"x": lab[x], "y": lab[y], "before": _r(b), "after": _r(a)}
            for x, y, b, a in r.violations
        ],
    }


def delta_to_dict(delta) -> dict:
    if delta is None:
        return {"delta": None, "unconstrained": False}
    if delta == UNCONSTRAINED:
        return {"delta": None, "unconstrained": True}
    return {"delta": format_rational(delta), "unconstrained": False}


def condition_to_dict(space: FiniteSpace, r: ConditionReport) -> dict:
    out = {
        "condition": r.condition,
        "holds": r.holds,
        "grid": [
            {"epsilon": format_rational(e), **delta_to_dict(d)}
            for e, d in zip(r.epsilon_grid, r.delta_at)
        ],
        "witness": None,
    }
    if r.condition == "B":
        out["start"] = space.labels[r.start]
        out["horizon"] = r.horizon
    if r.witness is not None:
        eps, a, b, before, after = r.witness
        key_a, key_b = ("i", "j") if r.condition == "B" else ("x", "y")
        if r.condition == "A":
            a, b = space.labels[a], space.labels[b]
        out["witness"] = {
            "epsilon": _r(eps),
            key_a: a,
            key_b: b,
            "before": _r(before),
            "after": _r(after),
        }
    return out


def bound_to_dict(space: FiniteSpace, r: BoundReport) -> dict:
    return {
        "v": r.v,
        "horizon": r.horizon,
        "effective_horizon": r.effective_horizon,
        "bound": _r(r.bound),
        "attained_at": r.attained_at,
    }


def trace_to_dict(space: FiniteSpace, t: OrbitTrace) -> dict:
    return {
        "start": space.labels[t.start],
        "points": [space.labels[p] for p in t.points],
        "step_dist": _rs(t.step_dist),
        "cycle": None if t.cycle is None else {"entry": t.cycle[0], "period": t.cycle[1]},
        "fixed_point": None if t.fixed_point is None else space.labels[t.fixed_point],
        "escaped": t.escaped,
    }


def cauchy_to_dict(r: CauchyReport) -> dict:
    return {
        "is_cauchy_at_tolerance": r.is_cauchy_at_tolerance,
        "tolerance": _r(r.tolerance),
        "tail_start": r.tail_start,
        "max_p": r.max_p,
        "witness": None
        if r.witness is None
        else {"n": r.witness[0], "p": r.witness[1], "value": _r(r.witness[2])},
    }


def diagnostics_to_dict(r: OrbitDiagnostics) -> dict:
    return {
        "gap1": _rs(r.gap1),
        "gap2": _rs(r.gap2),
        "to_fixed": None if r.to_fixed is None else _rs(r.to_fixed),
        "gap1_decreasing": r.gap1_decreasing,
        "gap1_vanishing": r.gap1_vanishing,
        "gap2_vanishing": r.gap2_vanishing,
        "s_n_strictly_decreasing_until_fixed": r.s_n_strictly_decreasing_until_fixed,
        "tolerance": _r(r.tolerance),
    }


def boundedness_to_dict(r: BoundednessReport) -> dict:
    return {"bounded": r.bounded, "M": _r(r.M)}


def diagnostics_csv(space: FiniteSpace, trace: OrbitTrace, diag: OrbitDiagnostics) -> str:
    """Columns n, x_n, d(x_n, x_{n+1}), d(x_n, z) as exact strings plus float twins for plotting."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "x_n", "gap1", "gap1_float", "to_fixed", "to_fixed_float"])
    for n in range(len(diag.gap1)):
        g = diag.gap1[n]
        z = diag.to_fixed[n] if diag.to_fixed is not None and n < len(diag.to_fixed) else None
        w.writerow([
            n,
            space.labels[trace.at(n)],
            format_rational(g),
            repr(float(g)),
            "" if z is None else format_rational(z),
            "" if z is None else repr(float(z)),
        ])
    return buf.getvalue()


def dumps(obj) -> str:
    def default(o):
        if isinstance(o, Fraction):
            return format_rational(o)
        if isinstance(o, float) and math.isinf(o):
            return None
        raise TypeError(f"not serializable: {type(o).__name__}")

    return json.dumps(obj, indent=2, sort_keys=False, default=default) + "\n"
