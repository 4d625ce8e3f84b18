"""Definition documents: the JSON schema tying a group presentation, a twist,
labeled points, optional Lie data and an ordered task list into one runnable
description.

Schema sketch (all coefficients and elements are text in the canonical
monomial syntax):

    {
      "name": "...",
      "group": {"laurent": [...], "unipotent": [...],
                "q": {"V": [["X", "Y", "1"], ...]}},
      "twist": {"kind": "trivial"}
               | {"kind": "expR", "support": {...}, "pairs": [["X","V","1"]],
                  "scale": "1/2", "embed": {"X": "X", ...}, "max_order": 64}
               | {"kind": "table", "j": [["X","V","1/2"], ...], "jinv": [...],
                  "certified_degree": 2}
               | {"kind": "pullback", "map": {...}, "base_group": {...},
                  "base_twist": {...}},
      "points": {"g1": {"Y": "1"}},
      "lie": {"basis": [...], "brackets": [["a","b","c","1"], ...],
              "subalgebra": [...], "r": [["a","c","1"]],
              "omega": [["a","c","1"]]},
      "tasks": [{"op": "...", ...}, ...]
    }

The fixture files shipped with the package are the normative reference.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from .hopf import GroupPoint, GroupPresentation
from .lie import LieModel, RMatrix, SkewForm
from .poly import (InputError, TensorElement, ValidationError, Variables,
                   parse_element)
from .twists import (Twist, build_expr_twist, build_table_twist,
                     pullback_twist, trivial_twist)

_KNOWN_OPS = {
    "validate", "cocycle", "cotriangular", "coproduct-hom", "associativity",
    "presentation", "lemma-formula", "primitive-pairing", "product-equality",
    "invariance", "quotient", "coset-table", "smash", "double-coset",
    "leading-term", "lie", "lie-closure",
}


def _require(cond: bool, msg: str):
    if not cond:
        raise InputError(msg)


def _parse_fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {text!r}: {exc}") from None


def build_presentation(section: Mapping, where: str = "group") -> GroupPresentation:
    _require(isinstance(section, dict), f"{where}: expected an object")
    laurent = section.get("laurent", [])
    unipotent = section.get("unipotent", [])
    _require(isinstance(laurent, list) and isinstance(unipotent, list),
             f"{where}: laurent/unipotent must be lists")
    vars = Variables(laurent=laurent, unipotent=unipotent)
    q: Dict[str, TensorElement] = {}
    for nm, triples in (section.get("q") or {}).items():
        _require(nm in vars.index, f"{where}: q-data for undeclared variable {nm!r}")
        from .poly import parse_tensor
        total = TensorElement.zero(vars, 2)
        for entry in triples:
            _require(isinstance(entry, list) and len(entry) == 3,
                     f"{where}: q({nm}) entries must be [left, right, coeff] triples")
            lm, rm, c = entry
            leg_l = parse_element(str(lm), vars)
            leg_r = parse_element(str(rm), vars)
            _require(len(leg_l.terms) == 1 and len(leg_r.terms) == 1,
                     f"{where}: q({nm}) legs must be monomials")
            (ml, cl), = leg_l.terms.items()
            (mr, cr), = leg_r.terms.items()
            coeff = _parse_fraction(c, f"{where}: q({nm})") * cl * cr
            total = total + TensorElement(vars, 2, {(ml, mr): coeff})
        q[nm] = total
    return GroupPresentation(vars, q)


def build_twist(section: Mapping, presentation: GroupPresentation,
                max_order: Optional[int] = None) -> Twist:
    _require(isinstance(section, dict) and "kind" in section,
             "twist: missing kind")
    kind = section["kind"]
    if kind == "trivial":
        return trivial_twist(presentation)
    if kind == "expR":
        support = build_presentation(section["support"], "twist.support")
        pairs = [(a, b, _parse_fraction(c, "twist.pairs"))
                 for a, b, c in section["pairs"]]
        scale = _parse_fraction(section.get("scale", "1/2"), "twist.scale")
        cap = max_order if max_order is not None else int(section.get("max_order", 64))
        return build_expr_twist(presentation, support, pairs,
                                section["embed"], scale=scale, max_order=cap)
    if kind == "table":
        j = [(a, b, _parse_fraction(c, "twist.j")) for a, b, c in section["j"]]
        jinv = [(a, b, _parse_fraction(c, "twist.jinv")) for a, b, c in section["jinv"]]
        return build_table_twist(presentation, j, jinv,
                                 certified_degree=int(section.get("certified_degree", 2)))
    if kind == "pullback":
        base_gp = build_presentation(section["base_group"], "twist.base_group")
        base = build_twist(section["base_twist"], base_gp, max_order=max_order)
        return pullback_twist(presentation, base, section["map"])
    raise InputError(f"twist: unknown kind {kind!r}")


def build_lie(section: Mapping) -> dict:
    _require("basis" in section, "lie: missing basis")
    brackets: Dict[tuple, Dict[str, Fraction]] = {}
    for entry in section.get("brackets", []):
        _require(len(entry) == 4, "lie.brackets entries must be [a, b, c, coeff]")
        a, b, c, v = entry
        row = brackets.setdefault((a, b), {})
        row[c] = row.get(c, Fraction(0)) + _parse_fraction(v, "lie.brackets")
    model = LieModel(section["basis"], brackets)
    out = {"model": model}
    if "r" in section:
        wedges = {}
        for a, b, v in section["r"]:
            key = (a, b)
            wedges[key] = wedges.get(key, Fraction(0)) + _parse_fraction(v, "lie.r")
        out["r"] = RMatrix(model, wedges)
    if "omega" in section:
        entries = {}
        for a, b, v in section["omega"]:
            key = (a, b)
            entries[key] = entries.get(key, Fraction(0)) + _parse_fraction(v, "lie.omega")
        out["omega"] = SkewForm(model, entries)
    if "subalgebra" in section:
        for nm in section["subalgebra"]:
            _require(nm in model.index, f"lie.subalgebra: unknown label {nm!r}")
        out["subalgebra"] = list(section["subalgebra"])
    return out


class DefinitionDocument:
    """A fully validated definition: presentation, twist, points, lie data, tasks."""

    def __init__(self, raw: Mapping, max_order: Optional[int] = None):
        _require(isinstance(raw, dict), "document must be a JSON object")
        self.raw = raw
        self.name = raw.get("name", "unnamed")
        _require("group" in raw, "document: missing group section")
        self.presentation = build_presentation(raw["group"])
        twist_section = raw.get("twist", {"kind": "trivial"})
        self.twist = build_twist(twist_section, self.presentation, max_order=max_order)
        self.points: Dict[str, GroupPoint] = {}
        for label, coords in (raw.get("points") or {}).items():
            parsed = {nm: _parse_fraction(v, f"points.{label}")
                      for nm, v in coords.items()}
            self.points[label] = GroupPoint(self.presentation.vars, parsed)
        self.lie = build_lie(raw["lie"]) if "lie" in raw else None
        self.tasks: List[dict] = list(raw.get("tasks", []))
        for k, task in enumerate(self.tasks):
            _require(isinstance(task, dict) and "op" in task,
                     f"tasks[{k}]: each task needs an op")
            _require(task["op"] in _KNOWN_OPS,
                     f"tasks[{k}]: unknown op {task['op']!r}")

    def element(self, text: str):
        return self.presentation.element(text)

    def point(self, label: str) -> GroupPoint:
        if label not in self.points:
            raise InputError(f"unknown point label {label!r}")
        return self.points[label]

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self.raw))

    def __eq__(self, other):
        return isinstance(other, DefinitionDocument) and self.raw == other.raw


def load_definition(text: str, max_order: Optional[int] = None) -> DefinitionDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"document is not valid JSON: {exc}") from None
    return DefinitionDocument(raw, max_order=max_order)
