"""Canonical JSON encoding for every domain object.

All integers travel as decimal strings so arbitrary precision survives any
consumer; rationals are ``{"num": ..., "den": ...}`` pairs of such strings.
``dumps`` is canonical (sorted keys, fixed separators), so re-serializing
an unchanged object is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import Box, HPolytope, LinearInequality, VPolytope
from .gsa import GsaInstance
from .reductions import (
    Literal,
    ProjectionInstance,
    Q3SatInstance,
    QuantBlock,
    QuantSentence,
    TwoQuantifierForm,
)


def int_to_json(value) -> str:
    return str(int(value))


def int_from_json(text) -> int:
    return int(text)


def frac_to_json(value) -> dict:
    f = Fraction(value)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def frac_from_json(obj) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def box_to_json(box: Box) -> dict:
    return {
        "lo": [int_to_json(v) for v in box.lo],
        "hi": [int_to_json(v) for v in box.hi],
    }


def box_from_json(obj) -> Box:
    return Box(tuple(int(v) for v in obj["lo"]), tuple(int(v) for v in obj["hi"]))


def hpoly_to_json(polytope: HPolytope) -> dict:
    return {
        "dim": int_to_json(polytope.dim),
        "rows": [
            {"coeffs": [int_to_json(c) for c in row.coeffs], "rhs": int_to_json(row.rhs)}
            for row in polytope.rows
        ],
    }


def hpoly_from_json(obj) -> HPolytope:
    rows = tuple(
        LinearInequality(tuple(int(c) for c in row["coeffs"]), int(row["rhs"]))
        for row in obj["rows"]
    )
    return HPolytope(int(obj["dim"]), rows)


def vpoly_to_json(polytope: VPolytope) -> dict:
    return {
        "dim": int_to_json(polytope.dim),
        "vertices": [[frac_to_json(c) for c in v] for v in polytope.vertices],
    }


def vpoly_from_json(obj) -> VPolytope:
    verts = tuple(tuple(frac_from_json(c) for c in v) for v in obj["vertices"])
    return VPolytope(int(obj["dim"]), verts)


def sentence_to_json(sentence: QuantSentence) -> dict:
    blocks = []
    for block in sentence.blocks:
        if block.box is None:
            blocks.append({"q": block.quantifier, "unbounded": int_to_json(block.dim)})
        else:
            blocks.append({"q": block.quantifier, "box": box_to_json(block.box)})
    if isinstance(sentence.constraint, HPolytope):
        constraint = {"hrep": hpoly_to_json(sentence.constraint)}
    else:
        constraint = {"vrep": vpoly_to_json(sentence.constraint)}
    return {"kind": "sentence", "blocks": blocks, "constraint": constraint}


def sentence_from_json(obj) -> QuantSentence:
    blocks = []
    for item in obj["blocks"]:
        if "unbounded" in item:
            blocks.append(QuantBlock(item["q"], None, int(item["unbounded"])))
        else:
            box = box_from_json(item["box"])
            blocks.append(QuantBlock(item["q"], box, box.dim))
    constraint_obj = obj["constraint"]
    if "hrep" in constraint_obj:
        constraint = hpoly_from_json(constraint_obj["hrep"])
    else:
        constraint = vpoly_from_json(constraint_obj["vrep"])
    return QuantSentence(tuple(blocks), constraint)


def gsa_to_json(inst: GsaInstance) -> dict:
    return {
        "kind": "gsa",
        "alpha": [frac_to_json(a) for a in inst.alpha],
        "N": int_to_json(inst.N),
        "eps": frac_to_json(inst.eps),
    }


def gsa_from_json(obj) -> GsaInstance:
    return GsaInstance(
        tuple(frac_from_json(a) for a in obj["alpha"]),
        int(obj["N"]),
        frac_from_json(obj["eps"]),
    )


def q3sat_to_json(inst: Q3SatInstance) -> dict:
    return {
        "kind": "q3sat",
        "k": int_to_json(inst.k),
        "ell": int_to_json(inst.ell),
        "prefix": list(inst.prefix),
        "clauses": [
            [
                {
                    "block": int_to_json(lit.block),
                    "index": int_to_json(lit.index),
                    "negated": lit.negated,
                }
                for lit in clause
            ]
            for clause in inst.clauses
        ],
    }


def q3sat_from_json(obj) -> Q3SatInstance:
    clauses = tuple(
        tuple(
            Literal(int(lit["block"]), int(lit["index"]), bool(lit["negated"]))
            for lit in clause
        )
        for clause in obj["clauses"]
    )
    return Q3SatInstance(int(obj["k"]), int(obj["ell"]), tuple(obj["prefix"]), clauses)


def projection_to_json(inst: ProjectionInstance) -> dict:
    return {
        "kind": "projection",
        "inner": hpoly_to_json(inst.inner),
        "outer": hpoly_to_json(inst.outer),
        "N": int_to_json(inst.N),
    }


def projection_from_json(obj) -> ProjectionInstance:
    return ProjectionInstance(
        inner=hpoly_from_json(obj["inner"]),
        outer=hpoly_from_json(obj["outer"]),
        N=int(obj["N"]),
    )


def two_quant_to_json(form: TwoQuantifierForm) -> dict:
    return {
        "kind": "two_quantifier",
        "x_box": box_to_json(form.x_box),
        "z_box": box_to_json(form.z_box),
        "parts": [hpoly_to_json(p) for p in form.parts],
    }


def two_quant_from_json(obj) -> TwoQuantifierForm:
    return TwoQuantifierForm(
        x_box=box_from_json(obj["x_box"]),
        z_box=box_from_json(obj["z_box"]),
        parts=tuple(hpoly_from_json(p) for p in obj["parts"]),
    )


def simplices_to_json(simplices) -> dict:
    return {"kind": "simplices", "parts": [vpoly_to_json(s) for s in simplices]}


def simplices_from_json(obj):
    return [vpoly_from_json(s) for s in obj["parts"]]


_INSTANCE_READERS = {
    "gsa": gsa_from_json,
    "q3sat": q3sat_from_json,
    "sentence": sentence_from_json,
    "projection": projection_from_json,
    "two_quantifier": two_quant_from_json,
    "simplices": simplices_from_json,
}


def from_json(obj):
    """Decode any serialized object by its ``kind`` discriminator."""
    kind = obj.get("kind")
    if kind not in _INSTANCE_READERS:
        raise ValueError(f"unknown kind {kind!r}")
    return _INSTANCE_READERS[kind](obj)


def dumps(obj) -> str:
    """Canonical one-line JSON with a trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text):
    return json.loads(text)
