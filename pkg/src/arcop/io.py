"""JSON interchange and DOT export.

Every document is an object with a ``type`` and a ``version``.  Rationals are
written as ``"p/q"`` strings (integers without the slash) so no value ever
passes through floating point.  Serialization uses sorted keys and fixed
indentation, so equal values always produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema
import numpy as np

from .arcgraph import ArcGraph, GapGraph, WeightedArcGraph, from_sequence
from .cells import Cell, Chain
from .errors import ArcError
from .frobenius import Cochain, FrobeniusAlgebra

VERSION = 1

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_HALF_EDGE = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}

_GRAPH_FIELDS = {
    "partner": {"type": "array", "items": {"type": "array", "items": _HALF_EDGE}},
    "regions": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    "genus": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "sequence": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
    "weights": {"type": "array", "items": _RATIONAL},
    "gaps": {"type": "array", "items": _RATIONAL},
    "gap_star": _RATIONAL,
}

_GRAPH_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"enum": ["arc_graph", "weighted_arc_graph", "gap_graph", "cell"]},
        "version": {"const": VERSION},
        **_GRAPH_FIELDS,
    },
    "required": ["type"],
    "oneOf": [{"required": ["partner", "regions", "genus"]}, {"required": ["sequence"]}],
    "additionalProperties": False,
}

_CHAIN_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "chain"},
        "version": {"const": VERSION},
        "modulus": {"type": ["integer", "null"], "minimum": 2},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"cell": _GRAPH_SCHEMA, "coeff": {"type": "integer"}},
                "required": ["cell", "coeff"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["type", "terms"],
    "additionalProperties": False,
}

_ALGEBRA_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "frobenius_algebra"},
        "version": {"const": VERSION},
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "structure_constants": {"type": "array"},
        "trace": {"type": "array", "items": _RATIONAL},
        "unit": {"type": "array", "items": _RATIONAL},
    },
    "required": ["type", "dim", "structure_constants", "trace"],
    "additionalProperties": False,
}


_COCHAIN_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "cochain"},
        "version": {"const": VERSION},
        "dim": {"type": "integer", "minimum": 1},
        "arity": {"type": "integer", "minimum": 0},
        "tensor": {"type": ["array", "string"]},
    },
    "required": ["type", "dim", "arity", "tensor"],
    "additionalProperties": False,
}


class SchemaError(ArcError):
    """The document does not have the expected shape."""


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in exc.absolute_path)
        raise SchemaError(f"{path}: {exc.message}") from None


def rational(text) -> Fraction:
    return Fraction(text)


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- graphs -------------------------------------------------------------------------


def _graph_from_doc(doc) -> ArcGraph:
    if "sequence" in doc:
        return from_sequence(doc["sequence"])
    partner = tuple(tuple(tuple(h) for h in row) for row in doc["partner"])
    return ArcGraph(partner, tuple(tuple(r) for r in doc["regions"]), tuple(doc["genus"]))


def graph_to_doc(g: ArcGraph, kind="arc_graph") -> dict:
    return {
        "type": kind,
        "version": VERSION,
        "partner": [[list(h) for h in row] for row in g.partner],
        "regions": [list(r) for r in g.corner_region],
        "genus": list(g.region_genus),
    }


def from_doc(doc: dict) -> Any:
    """Decode any document into the matching library value."""
    if not isinstance(doc, dict):
        raise SchemaError("$: expected an object")
    kind = doc.get("type")
    if kind in ("arc_graph", "weighted_arc_graph", "gap_graph", "cell"):
        _validate(doc, _GRAPH_SCHEMA)
        g = _graph_from_doc(doc)
        if kind == "arc_graph":
            return g
        if kind == "cell":
            return Cell(g)
        if "weights" in doc:
            weights = tuple(rational(w) for w in doc["weights"])
        elif "sequence" in doc:
            weights = tuple(Fraction(1, doc["sequence"].count(b)) for b in doc["sequence"])
        else:
            raise SchemaError("$.weights: required for weighted graphs")
        if kind == "weighted_arc_graph":
            return WeightedArcGraph(g, weights)
        gaps = tuple(rational(x) for x in doc.get("gaps", ["0"] * g.window_size(0)))
        return GapGraph(g, weights, gaps, rational(doc.get("gap_star", "0")))
    if kind == "chain":
        _validate(doc, _CHAIN_SCHEMA)
        c = Chain(modulus=doc.get("modulus"))
        for term in doc["terms"]:
            c.add(from_doc(term["cell"]), term["coeff"])
        return c
    if kind == "frobenius_algebra":
        _validate(doc, _ALGEBRA_SCHEMA)
        d = doc["dim"]
        sc = np.array(doc["structure_constants"], dtype=object)
        if sc.shape != (d, d, d):
            raise SchemaError(f"$.structure_constants: expected shape {(d, d, d)}, got {sc.shape}")
        sc = np.vectorize(rational, otypes=[object])(sc)
        unit = None if "unit" not in doc else np.array([rational(x) for x in doc["unit"]], dtype=object)
        return FrobeniusAlgebra(
            sc,
            np.array([rational(x) for x in doc["trace"]], dtype=object),
            tuple(doc.get("basis", ())),
            unit,
        )
    if kind == "cochain":
        _validate(doc, _COCHAIN_SCHEMA)
        shape = (doc["dim"],) * (doc["arity"] + 1)
        t = np.array(doc["tensor"], dtype=object)
        if t.shape != shape:
            raise SchemaError(f"$.tensor: expected shape {shape}, got {t.shape}")
        return Cochain(np.vectorize(rational, otypes=[object])(t))
    raise SchemaError(f"$.type: unknown document type {kind!r}")


def to_doc(x) -> dict:
    if isinstance(x, ArcGraph):
        return graph_to_doc(x)
    if isinstance(x, Cell):
        return graph_to_doc(x.graph, "cell")
    if isinstance(x, WeightedArcGraph):
        doc = graph_to_doc(x.graph, "weighted_arc_graph")
        doc["weights"] = [rational_str(w) for w in x.weights]
        return doc
    if isinstance(x, GapGraph):
        doc = graph_to_doc(x.graph, "gap_graph")
        doc["weights"] = [rational_str(w) for w in x.weights]
        doc["gaps"] = [rational_str(w) for w in x.gaps]
        doc["gap_star"] = rational_str(x.gap_star)
        return doc
    if isinstance(x, Chain):
        return {
            "type": "chain",
            "version": VERSION,
            "modulus": x.modulus,
            "terms": [{"cell": to_doc(cell), "coeff": c} for cell, c in x],
        }
    if isinstance(x, FrobeniusAlgebra):
        return {
            "type": "frobenius_algebra",
            "version": VERSION,
            "dim": x.dim,
            "basis": list(x.basis),
            "structure_constants": [[[rational_str(v) for v in row] for row in mat] for mat in x.mult],
            "trace": [rational_str(v) for v in x.trace],
            "unit": [rational_str(v) for v in x.unit],
        }
    if isinstance(x, Cochain):
        if x.tensor.ndim == 0:
            raise ValueError("the result has negative arity, so it is the zero map and has no cochain form")
        return {
            "type": "cochain",
            "version": VERSION,
            "dim": x.dim,
            "arity": x.arity,
            "tensor": np.vectorize(rational_str, otypes=[object])(x.tensor).tolist(),
        }
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x) -> str:
    doc = x if isinstance(x, (dict, list)) else to_doc(x)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return from_doc(doc)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(x, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(x))


# -- DOT ---------------------------------------------------------------------------


def export_dot(g: ArcGraph) -> str:
    """Dual graph: one vertex per region, one edge per arc."""
    lines = ["graph dual {"]
    marks = {r: [] for r in range(g.region_count)}
    for b in range(g.boundary_count):
        if g.window_size(b):
            marks[g.corner_region[b][-1]].append(b)
    for r in range(g.region_count):
        b = g.region_orbit_count[r] if not g.is_empty else 1
        label = f"R{r}\\ng={g.region_genus[r]} b={b}"
        extra = f' marks="{",".join(map(str, marks[r]))}"' if marks[r] else ""
        lines.append(f'  r{r} [label="{label}"{extra}];')
    for n, ((b1, k1), (b2, k2)) in enumerate(g.arcs):
        m = g.window_size(b1)
        left = g.corner_region[b1][(k1 - 1) % m]
        right = g.corner_region[b1][k1]
        lines.append(f'  r{left} -- r{right} [label="e{n}" ends="{b1}.{k1}-{b2}.{k2}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
