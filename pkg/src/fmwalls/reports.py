"""Deterministic JSON report building shared by the service and the CLI.

Rationals are serialized as {"num": string, "den": string} with positive
denominator and reduced fraction; identical inputs always produce byte
identical output (sorted keys, sorted collections at construction).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__ as _version
from .lattice import Surface
from .mukai import DUAL_MODEL_NOTE, MukaiVector, format_vector
from .regimes import AnnotatedWall, CheckReport, RegimeReport, RolePair
from .verdict import ExceptionalCase, PreservationVerdict
from .walls import AmpWallWitness, Decomposition, WallScan

TOOL = {"name": "fmwalls", "version": _version}


def frac_json(q: Fraction | int) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def frac_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def fracvec_json(vec) -> list[dict]:
    return [frac_json(c) for c in vec]


def vector_json(v: MukaiVector) -> dict:
    return {"r": v.r, "xi": list(v.xi), "a": v.a}


def vector_from_json(obj: dict) -> MukaiVector:
    return MukaiVector(int(obj["r"]), tuple(int(c) for c in obj["xi"]), int(obj["a"]))


def decomposition_json(dec: Decomposition) -> dict:
    return {"ell": dec.ell, "u": vector_json(dec.u), "w": vector_json(dec.w)}


def roles_json(roles: RolePair) -> dict:
    return {
        "v1": vector_json(roles.v1),
        "ell1": roles.ell1,
        "v2": vector_json(roles.v2),
        "ell2": roles.ell2,
    }


def annotated_wall_json(wall: AnnotatedWall) -> dict:
    return {
        "tsq": frac_json(wall.wall.tsq),
        "witnesses": [vector_json(u) for u in wall.wall.witnesses],
        "decomposition": decomposition_json(wall.wall.decomposition),
        "roles": roles_json(wall.roles),
        "crossing": wall.crossing.value,
        "fm_case": {
            "side": wall.fm_case.side,
            "case": wall.fm_case.case,
            "exceptional": wall.fm_case.exceptional,
        },
        "exceptional": wall.exceptional,
        "regime_below": wall.regime_below.value,
    }


def scan_json(scan: WallScan, annotated: tuple[AnnotatedWall, ...] | None = None) -> dict:
    if annotated is not None:
        walls = [annotated_wall_json(w) for w in annotated]
    else:
        walls = [
            {
                "tsq": frac_json(w.tsq),
                "witnesses": [vector_json(u) for u in w.witnesses],
                "decomposition": decomposition_json(w.decomposition),
            }
            for w in scan.walls
        ]
    return {
        "walls": walls,
        "certified": scan.certified,
        "limiting": scan.limiting,
        "window": {"lo": frac_json(scan.tsq_lo), "hi": frac_json(scan.tsq_hi)},
        "radius": scan.radius,
        "degenerate_witnesses": [vector_json(u) for u in scan.degenerate_witnesses],
    }


def regimes_json(report: RegimeReport) -> dict:
    out = {
        "vector": vector_json(report.vector),
        "walls": [annotated_wall_json(w) for w in report.walls],
        "t1sq": frac_json(report.t1sq) if report.t1_applicable else None,
        "t2sq": frac_json(report.t2sq),
        "t1_applicable": report.t1_applicable,
        "certified": report.certified,
        "limiting": report.limiting,
        "radius": report.radius,
        "window": {"lo": frac_json(0), "hi": frac_json(report.window_hi)},
    }
    if report.dual_of is not None:
        out["dual_of"] = vector_json(report.dual_of)
        out["dual_model"] = DUAL_MODEL_NOTE
    return out


def exceptional_json(case: ExceptionalCase) -> dict:
    out: dict[str, Any] = {"kind": case.kind, "blocks": case.blocks}
    if case.ell is not None:
        out["ell"] = case.ell
    if case.k is not None:
        out["k"] = case.k
    if case.c is not None:
        out["c"] = list(case.c)
    if case.eta is not None:
        out["eta"] = list(case.eta)
        out["eta_sq_sign"] = case.eta_sq_sign
    if case.confidence is not None:
        out["confidence"] = case.confidence
    return out


def verdict_json(v: PreservationVerdict) -> dict:
    advisory = None
    if v.advisory is not None:
        advisory = {
            "mirrored_dual_t1sq": frac_json(v.advisory["mirrored_dual_t1sq"]),
            "t1sq": frac_json(v.advisory["t1sq"]),
            "relation": v.advisory["relation"],
            "holds": v.advisory["holds"],
        }
    witness = None
    if v.witness_pair is not None:
        witness = {
            "h_plus": fracvec_json(v.witness_pair[0]),
            "h_minus": fracvec_json(v.witness_pair[1]),
        }
    return {
        "status": v.status,
        "shift": v.shift,
        "corollary_applied": v.corollary_applied,
        "certified": v.certified,
        "reason": v.reason,
        "exceptional": [exceptional_json(e) for e in v.exceptional],
        "regimes": regimes_json(v.regimes),
        "dual_regimes": regimes_json(v.dual),
        "witness_pair": witness,
        "advisory": advisory,
    }


def check_report_json(report: CheckReport) -> dict:
    return {
        "tsq_low": frac_json(report.tsq_low),
        "tsq_high": frac_json(report.tsq_high),
        "passed": report.passed,
        "items": [
            {
                "name": item.name,
                "passed": item.passed,
                "values": {k: frac_json(x) for k, x in item.values},
            }
            for item in report.items
        ],
    }


def amp_witness_json(w: AmpWallWitness) -> dict:
    return {
        "v1": vector_json(w.v1),
        "v2": vector_json(w.v2),
        "delta": list(w.delta),
        "ample_orthogonal": fracvec_json(w.ample_orthogonal),
    }


def make_report(
    command: str,
    surface: Surface,
    payload: dict,
    vector: MukaiVector | None = None,
    certified: bool | None = None,
) -> dict:
    return {
        "tool": dict(TOOL),
        "command": command,
        "surface": surface.name,
        "vector": format_vector(vector) if vector is not None else None,
        "certified": certified,
        "payload": payload,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def decode_rationals(obj: Any) -> Any:
    """Replace every {"num","den"} object with a Fraction, recursively."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return frac_from_json(obj)
        return {k: decode_rationals(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode_rationals(x) for x in obj]
    return obj


def encode_rationals(obj: Any) -> Any:
    """Inverse of decode_rationals."""
    if isinstance(obj, Fraction):
        return frac_json(obj)
    if isinstance(obj, dict):
        return {k: encode_rationals(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [encode_rationals(x) for x in obj]
    return obj
