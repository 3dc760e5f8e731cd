"""JSON documents: knot specifications in, invariant reports out.

Knot specification document::

    {"knot": {"type": "lspace", "alexander": [[1, 1], [0, -1], [-1, 1]]},
     "options": {"truncation": 16, "window_slack": 0, "verify": false}}

Knot types are ``lspace``, ``alternating`` (adds ``signature``), ``sum``
(``summands``), ``mirror`` and ``reverse`` (``of``), and ``one_one``
(``diagram``: a path relative to the document, or an inline diagram object).

Result documents are built from the dataclasses below.  ``emit`` validates
against :data:`RESULT_SCHEMA` before serializing and ``parse`` validates
before rebuilding, so ``parse(emit(doc)) == doc``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import jsonschema

from .complexes import BigradedComplex, Bigrading, Monomial
from .errors import SchemaError
from .heegaard_h1 import AbelianGroup
from .knots import (Alternating, ConnectedSum, KnotSpec, LaurentPoly, LSpaceKnot, Mirror,
                    OneOne, Reverse)
from .modules import ABSOLUTE, RELATIVE, DvrModule, GradedVectorSpace
from .oneone import Bigon, diagram_from_json

# ---------------------------------------------------------------------------
# schemas

_INT = {"type": "integer"}
_LABEL = {"type": ["string", "integer"]}

KNOT_SCHEMA: dict = {
    "$defs": {
        "alexander": {
            "type": "array",
            "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
            "minItems": 1,
        },
        "knot": {
            "type": "object",
            "required": ["type"],
            "oneOf": [
                {"properties": {"type": {"const": "lspace"},
                                "alexander": {"$ref": "#/$defs/alexander"}},
                 "required": ["alexander"], "additionalProperties": False},
                {"properties": {"type": {"const": "alternating"},
                                "alexander": {"$ref": "#/$defs/alexander"},
                                "signature": _INT},
                 "required": ["alexander", "signature"], "additionalProperties": False},
                {"properties": {"type": {"const": "sum"},
                                "summands": {"type": "array", "items": {"$ref": "#/$defs/knot"}}},
                 "required": ["summands"], "additionalProperties": False},
                {"properties": {"type": {"enum": ["mirror", "reverse"]},
                                "of": {"$ref": "#/$defs/knot"}},
                 "required": ["of"], "additionalProperties": False},
                {"properties": {"type": {"const": "one_one"},
                                "diagram": {"type": ["string", "object"]}},
                 "required": ["diagram"], "additionalProperties": False},
            ],
        },
    },
    "type": "object",
    "required": ["knot"],
    "properties": {
        "knot": {"$ref": "#/$defs/knot"},
        "options": {
            "type": "object",
            "properties": {
                "truncation": {"type": "integer", "minimum": 1},
                "window_slack": {"type": "integer", "minimum": 0},
                "verify": {"type": "boolean"},
                "debug": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

MATRIX_SCHEMA: dict = {
    "type": "object",
    "required": ["matrix"],
    "properties": {"matrix": {"type": "array", "items": {"type": "array", "items": _INT}}},
    "additionalProperties": False,
}

_MODULE = {
    "type": "object",
    "required": ["free_gradings", "torsion", "grading_mode"],
    "properties": {
        "free_gradings": {"type": "array", "items": _INT},
        "torsion": {"type": "array",
                    "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}},
        "grading_mode": {"enum": [ABSOLUTE, RELATIVE]},
    },
    "additionalProperties": False,
}

_COMPLEX = {
    "type": "object",
    "required": ["generators", "differential"],
    "properties": {
        "generators": {"type": "array", "items": {
            "type": "object", "required": ["label", "gr_u", "gr_v"],
            "properties": {"label": _LABEL, "gr_u": _INT, "gr_v": _INT},
            "additionalProperties": False}},
        "differential": {"type": "array", "items": {
            "type": "object", "required": ["from", "to", "terms"],
            "properties": {"from": _LABEL, "to": _LABEL,
                           "terms": {"type": "array", "items": {
                               "type": "array", "items": _INT, "minItems": 2, "maxItems": 2}}},
            "additionalProperties": False}},
    },
    "additionalProperties": False,
}

RESULT_SCHEMA: dict = {
    "type": "object",
    "required": ["command"],
    "properties": {
        "command": {"enum": ["hfk", "surgery", "diagram", "h1"]},
        "invariants": {
            "type": "object",
            "required": ["hfk_hat", "hfk_minus", "genus", "fibered", "alexander"],
            "properties": {
                "hfk_hat": {"type": "array", "items": {
                    "type": "object", "required": ["m", "s", "dim"],
                    "properties": {"m": _INT, "s": _INT, "dim": {"type": "integer", "minimum": 1}},
                    "additionalProperties": False}},
                "hfk_minus": _MODULE,
                "genus": {"type": "integer", "minimum": 0},
                "fibered": {"type": "boolean"},
                "alexander": {"$ref": "#/$defs/alexander"},
            },
            "additionalProperties": False,
        },
        "surgery": {
            "type": "object",
            "required": ["n", "method", "classes", "l_space", "h1_order", "verified"],
            "properties": {
                "n": _INT,
                "method": {"enum": ["large_surgery", "mapping_cone"]},
                "classes": {"type": "array", "items": {
                    "type": "object",
                    "required": ["spin_c", "module", "d", "l_space", "hat_dimension",
                                 "stable", "truncation"],
                    "properties": {
                        "spin_c": _INT, "module": _MODULE, "d": _INT,
                        "l_space": {"type": "boolean"},
                        "hat_dimension": {"type": "integer", "minimum": 1},
                        "stable": {"type": "boolean"},
                        "truncation": {"type": "integer", "minimum": 1}},
                    "additionalProperties": False}},
                "l_space": {"type": "boolean"},
                "h1_order": {"type": "integer", "minimum": 1},
                "verified": {"type": ["boolean", "null"]},
            },
            "additionalProperties": False,
        },
        "diagram": {
            "type": "object",
            "required": ["generator_count", "generators", "bigons", "complex"],
            "properties": {
                "generator_count": {"type": "integer", "minimum": 0},
                "generators": {"type": "array", "items": _LABEL},
                "bigons": {"type": "array", "items": {
                    "type": "object", "required": ["from", "to", "n_w", "n_z"],
                    "properties": {"from": _LABEL, "to": _LABEL,
                                   "n_w": {"type": "integer", "minimum": 0},
                                   "n_z": {"type": "integer", "minimum": 0}},
                    "additionalProperties": False}},
                "complex": _COMPLEX,
            },
            "additionalProperties": False,
        },
        "h1": {
            "type": "object",
            "required": ["matrix", "invariant_factors", "free_rank", "order", "description"],
            "properties": {
                "matrix": {"type": "array", "items": {"type": "array", "items": _INT}},
                "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                "free_rank": {"type": "integer", "minimum": 0},
                "order": {"type": "integer", "minimum": 0},
                "description": {"type": "string"},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
    "$defs": {"alexander": KNOT_SCHEMA["$defs"]["alexander"]},
}


def _validate(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{what}: {e.message} (at {where})") from None


# ---------------------------------------------------------------------------
# knot specifications

def laurent_from_json(pairs: list) -> LaurentPoly:
    exps = [e for e, _ in pairs]
    if len(set(exps)) != len(exps):
        raise SchemaError(f"alexander: repeated exponent in {pairs}")
    return LaurentPoly.from_pairs(pairs)


def laurent_to_json(p: LaurentPoly) -> list:
    return p.pairs()


def knot_from_json(obj: dict, base_dir: Optional[Path] = None) -> KnotSpec:
    """Build a KnotSpec from an already schema-valid ``knot`` object."""
    kind = obj["type"]
    if kind == "lspace":
        return LSpaceKnot(laurent_from_json(obj["alexander"]))
    if kind == "alternating":
        return Alternating(laurent_from_json(obj["alexander"]), obj["signature"])
    if kind == "sum":
        return ConnectedSum(tuple(knot_from_json(k, base_dir) for k in obj["summands"]))
    if kind == "mirror":
        return Mirror(knot_from_json(obj["of"], base_dir))
    if kind == "reverse":
        return Reverse(knot_from_json(obj["of"], base_dir))
    ref = obj["diagram"]
    if isinstance(ref, dict):
        return OneOne(diagram_from_json(ref))
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return OneOne(diagram_from_json(read_json(path)))


@dataclass(frozen=True)
class Options:
    truncation: Optional[int] = None
    window_slack: int = 0
    verify: bool = False
    debug: bool = False


def parse_knot_document(doc: Any, base_dir: Optional[Path] = None) -> tuple[KnotSpec, Options]:
    _validate(doc, KNOT_SCHEMA, "knot specification")
    return knot_from_json(doc["knot"], base_dir), Options(**doc.get("options", {}))


def load_knot_document(path) -> tuple[KnotSpec, Options]:
    path = Path(path)
    return parse_knot_document(read_json(path), path.parent)


def parse_matrix_document(doc: Any) -> list[list[int]]:
    if isinstance(doc, list):
        doc = {"matrix": doc}
    _validate(doc, MATRIX_SCHEMA, "matrix document")
    return doc["matrix"]


def read_json(path) -> Any:
    """Load JSON; unreadable or malformed files are schema errors."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


# ---------------------------------------------------------------------------
# values <-> JSON

def module_to_json(m: DvrModule) -> dict:
    return {"free_gradings": list(m.free_gradings),
            "torsion": [list(t) for t in m.torsion],
            "grading_mode": m.grading_mode}


def module_from_json(d: dict) -> DvrModule:
    return DvrModule(tuple(d["free_gradings"]), tuple(tuple(t) for t in d["torsion"]),
                     d["grading_mode"])


def _json_label(label):
    return label if isinstance(label, (str, int)) and not isinstance(label, bool) else str(label)


def complex_to_json(c: BigradedComplex) -> dict:
    """Labels other than strings and integers are written as their ``str``."""
    labels = [_json_label(l) for l in c.labels]
    if len(set(map(repr, labels))) != len(labels):
        labels = [str(i) for i in range(len(labels))]
    diff = []
    for (t, s), p in sorted(c.differential.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        diff.append({"from": labels[s], "to": labels[t], "terms": [list(m) for m in sorted(p)]})
    return {"generators": [{"label": l, "gr_u": g.gr_u, "gr_v": g.gr_v}
                           for l, g in zip(labels, c.gradings)],
            "differential": diff}


def complex_from_json(d: dict) -> BigradedComplex:
    labels = tuple(g["label"] for g in d["generators"])
    index = {l: i for i, l in enumerate(labels)}
    diff = {}
    for e in d["differential"]:
        diff[(index[e["to"]], index[e["from"]])] = frozenset(Monomial(*m) for m in e["terms"])
    return BigradedComplex(labels, tuple(Bigrading(g["gr_u"], g["gr_v"]) for g in d["generators"]),
                           diff)


# ---------------------------------------------------------------------------
# result documents

@dataclass(frozen=True)
class KnotInvariants:
    hfk_hat: GradedVectorSpace
    hfk_minus: DvrModule
    genus: int
    fibered: bool
    alexander: LaurentPoly

    def to_json(self) -> dict:
        return {"hfk_hat": [{"m": m, "s": s, "dim": v} for (m, s), v in self.hfk_hat.dims.items()],
                "hfk_minus": module_to_json(self.hfk_minus),
                "genus": self.genus, "fibered": self.fibered,
                "alexander": laurent_to_json(self.alexander)}

    @classmethod
    def from_json(cls, d: dict) -> "KnotInvariants":
        return cls(GradedVectorSpace({(e["m"], e["s"]): e["dim"] for e in d["hfk_hat"]}),
                   module_from_json(d["hfk_minus"]), d["genus"], d["fibered"],
                   LaurentPoly.from_pairs(d["alexander"]))


@dataclass(frozen=True)
class ClassReport:
    spin_c: int
    module: DvrModule
    d: int
    l_space: bool
    hat_dimension: int
    stable: bool
    truncation: int

    def to_json(self) -> dict:
        return {"spin_c": self.spin_c, "module": module_to_json(self.module), "d": self.d,
                "l_space": self.l_space, "hat_dimension": self.hat_dimension,
                "stable": self.stable, "truncation": self.truncation}

    @classmethod
    def from_json(cls, d: dict) -> "ClassReport":
        return cls(d["spin_c"], module_from_json(d["module"]), d["d"], d["l_space"],
                   d["hat_dimension"], d["stable"], d["truncation"])


@dataclass(frozen=True)
class SurgeryReport:
    n: int
    method: str
    classes: tuple[ClassReport, ...]
    l_space: bool
    h1_order: int
    verified: Optional[bool] = None

    def to_json(self) -> dict:
        return {"n": self.n, "method": self.method,
                "classes": [c.to_json() for c in self.classes],
                "l_space": self.l_space, "h1_order": self.h1_order, "verified": self.verified}

    @classmethod
    def from_json(cls, d: dict) -> "SurgeryReport":
        return cls(d["n"], d["method"], tuple(ClassReport.from_json(c) for c in d["classes"]),
                   d["l_space"], d["h1_order"], d["verified"])


@dataclass(frozen=True)
class DiagramSummary:
    generators: tuple
    bigons: tuple[Bigon, ...]
    complex: BigradedComplex

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {"generator_count": self.generator_count,
                "generators": [_json_label(g) for g in self.generators],
                "bigons": [{"from": _json_label(b.from_gen), "to": _json_label(b.to_gen),
                            "n_w": b.n_w, "n_z": b.n_z} for b in self.bigons],
                "complex": complex_to_json(self.complex)}

    @classmethod
    def from_json(cls, d: dict) -> "DiagramSummary":
        return cls(tuple(d["generators"]),
                   tuple(Bigon(b["from"], b["to"], b["n_w"], b["n_z"]) for b in d["bigons"]),
                   complex_from_json(d["complex"]))


@dataclass(frozen=True)
class H1Report:
    matrix: tuple[tuple[int, ...], ...]
    group: AbelianGroup

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix],
                "invariant_factors": list(self.group.invariant_factors),
                "free_rank": self.group.free_rank, "order": self.group.order,
                "description": self.group.describe()}

    @classmethod
    def from_json(cls, d: dict) -> "H1Report":
        return cls(tuple(tuple(r) for r in d["matrix"]),
                   AbelianGroup(tuple(d["invariant_factors"]), d["free_rank"]))


_SECTIONS = {"invariants": KnotInvariants, "surgery": SurgeryReport,
             "diagram": DiagramSummary, "h1": H1Report}


@dataclass(frozen=True)
class ResultDocument:
    command: str
    invariants: Optional[KnotInvariants] = None
    surgery: Optional[SurgeryReport] = None
    diagram: Optional[DiagramSummary] = None
    h1: Optional[H1Report] = None

    def to_json(self) -> dict:
        out: dict = {"command": self.command}
        for key in _SECTIONS:
            part = getattr(self, key)
            if part is not None:
                out[key] = part.to_json()
        return out

    @classmethod
    def from_json(cls, d: dict) -> "ResultDocument":
        _validate(d, RESULT_SCHEMA, "result document")
        parts = {k: cls_.from_json(d[k]) for k, cls_ in _SECTIONS.items() if k in d}
        return cls(d["command"], **parts)


def emit(doc: ResultDocument) -> str:
    data = doc.to_json()
    _validate(data, RESULT_SCHEMA, "result document")
    return json.dumps(data, indent=2)


def parse(text: str) -> ResultDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON ({e.msg})") from None
    return ResultDocument.from_json(data)
