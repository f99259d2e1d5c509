"""JSON and CSV formats for circuits, anchor sets and verification reports.

Rationals are written as ``"p/q"`` (``"p"`` when q = 1).  Key order is fixed
so identical inputs always serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import jsonschema

from .boolean import DecisionList, Depth2Circuit, SymmetricProfile, ThresholdGate
from .errors import SchemaError
from .numerics import RationalMatrix, format_rational, parse_rational
from .representations import AnchorSet, ConstructionParams
from .verification import VerificationReport

_RATIONAL = {"type": "string", "pattern": r"^[+-]?\d+(/\d+)?$"}
_BIT = {"enum": [0, 1]}

CIRCUIT_SCHEMA = {
    "type": "object",
    "required": ["n", "gates", "top"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "gates": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["weights", "bias", "kind"],
                "properties": {
                    "weights": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
                    "bias": _RATIONAL,
                    "kind": {"enum": ["linear", "exact"]},
                },
            },
        },
        "top": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["profile"],
                    "properties": {"profile": {"type": "array", "minItems": 1, "items": _BIT}},
                },
                {
                    "type": "object",
                    "required": ["list"],
                    "properties": {
                        "list": {
                            "type": "object",
                            "required": ["outputs", "default"],
                            "properties": {
                                "outputs": {"type": "array", "items": _BIT},
                                "default": _BIT,
                            },
                        }
                    },
                },
            ]
        },
    },
}

ANCHORS_SCHEMA = {
    "type": "object",
    "required": ["n", "anchors", "labels"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "anchors": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        "labels": {"type": "array", "items": _BIT},
        "types": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer"}}]},
        "meta": {"type": "object"},
    },
}


def _validate(doc, schema, what):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid {what}: {exc.message}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# --- circuits -------------------------------------------------------------


def _gate_to_dict(g: ThresholdGate) -> dict:
    return {"weights": list(g.weights), "bias": format_rational(g.bias), "kind": g.kind}


def circuit_to_dict(c) -> dict:
    doc = {"n": c.n, "gates": [_gate_to_dict(g) for g in c.gates]}
    if isinstance(c, DecisionList):
        doc["top"] = {"list": {"outputs": list(c.outputs), "default": c.default}}
    else:
        doc["top"] = {"profile": list(c.top.values)}
    return doc


def circuit_from_dict(doc):
    _validate(doc, CIRCUIT_SCHEMA, "circuit")
    n = doc["n"]
    gates = []
    for g in doc["gates"]:
        if len(g["weights"]) != n:
            raise SchemaError(f"gate has {len(g['weights'])} weights, expected n = {n}")
        gates.append(ThresholdGate(tuple(g["weights"]), parse_rational(g["bias"]), g["kind"]))
    top = doc["top"]
    try:
        if "profile" in top:
            return Depth2Circuit(tuple(gates), SymmetricProfile(tuple(top["profile"])))
        lst = top["list"]
        return DecisionList(tuple(gates), tuple(lst["outputs"]), lst["default"])
    except ValueError as exc:
        raise SchemaError(f"inconsistent circuit: {exc}") from None


# --- anchor sets ----------------------------------------------------------


def anchors_to_dict(A: AnchorSet) -> dict:
    p = A.params
    meta = {
        "construction": A.construction,
        "d": None if p.d is None else format_rational(p.d),
        "c": [format_rational(x) for x in p.c],
    }
    if p.xstar is not None:
        meta["xstar"] = [format_rational(x) for x in p.xstar]
    if p.T:
        meta["T"] = list(p.T)
    if p.epsilon is not None:
        meta["epsilon"] = format_rational(p.epsilon)
    return {
        "n": A.n,
        "anchors": [[format_rational(x) for x in row] for row in A.anchors],
        "labels": list(A.labels),
        "types": None if A.types is None else list(A.types),
        "meta": meta,
    }


def anchors_from_dict(doc) -> AnchorSet:
    _validate(doc, ANCHORS_SCHEMA, "anchor set")
    n = doc["n"]
    try:
        rows = [[parse_rational(x) for x in row] for row in doc["anchors"]]
        if any(len(row) != n for row in rows):
            raise SchemaError(f"every anchor must have n = {n} coordinates")
        meta = doc.get("meta") or {}
        params = ConstructionParams(
            d=None if meta.get("d") is None else parse_rational(meta["d"]),
            c=tuple(parse_rational(x) for x in meta.get("c", [])),
            xstar=None if "xstar" not in meta else tuple(parse_rational(x) for x in meta["xstar"]),
            T=tuple(meta.get("T", [])),
            epsilon=None if "epsilon" not in meta else parse_rational(meta["epsilon"]),
        )
        return AnchorSet(
            RationalMatrix(rows, cols=n),
            tuple(doc["labels"]),
            None if doc.get("types") is None else tuple(doc["types"]),
            meta.get("construction", "custom"),
            params,
        )
    except ValueError as exc:
        raise SchemaError(f"inconsistent anchor set: {exc}") from None


def anchors_to_csv(A: AnchorSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(A.n)] + ["label"])
    for row, z in zip(A.anchors, A.labels):
        writer.writerow([format_rational(x) for x in row] + [z])
    return buf.getvalue()


def anchors_from_csv(text: str) -> AnchorSet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not rows[0] or rows[0][-1] != "label":
        raise SchemaError("anchor CSV needs a header ending in 'label'")
    n = len(rows[0]) - 1
    anchors, labels = [], []
    try:
        for row in rows[1:]:
            if len(row) != n + 1:
                raise SchemaError(f"expected {n + 1} columns, got {len(row)}")
            anchors.append([parse_rational(x) for x in row[:-1]])
            labels.append(int(row[-1]))
        return AnchorSet(RationalMatrix(anchors, cols=n), tuple(labels))
    except ValueError as exc:
        raise SchemaError(f"bad anchor CSV: {exc}") from None


# --- reports --------------------------------------------------------------


def report_to_dict(r: VerificationReport) -> dict:
    return {
        "pass": r.passed,
        "total": r.total_inputs,
        "failures": [
            {"x": f.x, "expected": f.expected, "got": f.got, "anchor": f.anchor} for f in r.failures
        ],
        "min_margin": None if r.min_margin is None else format_rational(r.min_margin),
        "ties": r.tie_violations,
        "type_trace_ok": r.type_trace_ok,
    }


# --- files ----------------------------------------------------------------


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None


def load_circuit(path):
    return circuit_from_dict(_read_json(path))


def load_anchors(path) -> AnchorSet:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return anchors_from_csv(path.read_text())
    return anchors_from_dict(_read_json(path))


def write_anchors(A: AnchorSet, path, fmt: str = "json") -> None:
    text = anchors_to_csv(A) if fmt == "csv" else dumps(anchors_to_dict(A))
    Path(path).write_text(text)
