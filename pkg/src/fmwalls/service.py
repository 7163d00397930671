"""FastAPI service exposing every computation as a POST endpoint.

The handler functions are plain request-model -> report-dict functions; the
CLI calls them in process, the endpoints wrap them with HTTP error mapping.
Invalid input maps to 422 with the violated invariant named and the CLI exit
code (2, or 3 for an unsupported intersection form) in the detail.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import __version__
from .lattice import InvalidInput, UnsupportedSurface
from .mukai import fm_dual, fm_shift, fm_transform, format_vector, pairing, parse_vector
from .oracle import crosscheck_walls
from .regimes import appendix_verify, assign_roles, classify_crossing, compute_regimes, dual_regimes
from .reports import (
    amp_witness_json,
    check_report_json,
    decomposition_json,
    frac_json,
    make_report,
    regimes_json,
    roles_json,
    scan_json,
    vector_json,
    verdict_json,
)
from .schemas import (
    AmpWallsRequest,
    AppendixRequest,
    DecomposeRequest,
    FmRequest,
    OracleRequest,
    PairRequest,
    RegimesRequest,
    Report,
    SweepRequest,
    VerdictRequest,
    WallsRequest,
    parse_rational,
    resolve_vector,
)
from .verdict import decide_preservation
from .walls import (
    WallPosition,
    amp_irreducibility_check,
    enumerate_tss_walls_line,
    tss_decompose,
    wall_position_line,
)


def handle_pair(req: PairRequest) -> dict:
    surface = req.surface.build()
    x = resolve_vector(req.x, surface)
    y = resolve_vector(req.y, surface)
    payload = {"x": vector_json(x), "y": vector_json(y), "value": pairing(surface, x, y)}
    return make_report("pair", surface, payload)


_FM_MAPS = {"transform": fm_transform, "dual": fm_dual, "shift": fm_shift}


def handle_fm(req: FmRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    if req.kind not in _FM_MAPS:
        raise InvalidInput("fm_kind", f"kind must be one of {sorted(_FM_MAPS)}")
    out = _FM_MAPS[req.kind](v)
    payload = {"kind": req.kind, "input": vector_json(v), "output": vector_json(out)}
    return make_report("fm", surface, payload, vector=v)


def handle_walls(req: WallsRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    scan = enumerate_tss_walls_line(
        surface, v, parse_rational(req.tsq_min), parse_rational(req.tsq_max), req.radius
    )
    return make_report("walls", surface, scan_json(scan), vector=v, certified=scan.certified)


def handle_decompose(req: DecomposeRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    u = resolve_vector(req.u, surface)
    dec = tss_decompose(surface, v, u)
    pos = wall_position_line(surface, v, u)
    payload: dict = {"decomposition": decomposition_json(dec)}
    if isinstance(pos, WallPosition):
        payload["position"] = pos.value
    else:
        payload["position"] = frac_json(pos)
        roles = assign_roles(surface, v, dec)
        payload["roles"] = roles_json(roles)
        payload["crossing"] = classify_crossing(roles).value
    return make_report("decompose", surface, payload, vector=v)


def handle_regimes(req: RegimesRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    report = dual_regimes(surface, v, req.radius) if req.dual else compute_regimes(surface, v, req.radius)
    return make_report("regimes", surface, regimes_json(report), vector=v, certified=report.certified)


def handle_verdict(req: VerdictRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    verdict = decide_preservation(surface, v, req.radius)
    return make_report("verdict", surface, verdict_json(verdict), vector=v, certified=verdict.certified)


def handle_amp_walls(req: AmpWallsRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    mode, witnesses = amp_irreducibility_check(surface, v, req.radius)
    payload = {
        "mode": mode,
        "witnesses": [amp_witness_json(w) for w in witnesses],
        "radius": req.radius,
    }
    return make_report("amp-walls", surface, payload, vector=v)


def handle_appendix(req: AppendixRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    report = compute_regimes(surface, v, req.radius)
    pairs = []
    ok = True
    walls = [w.wall for w in report.walls]
    for high, low in zip(walls, walls[1:]):  # walls are sorted descending
        check = appendix_verify(surface, v, low, high)
        ok = ok and check.passed
        pairs.append(check_report_json(check))
    payload = {
        "pairs": pairs,
        "passed": ok,
        "wall_count": len(walls),
        "certified": report.certified,
        "radius": req.radius,
    }
    return make_report("appendix-check", surface, payload, vector=v, certified=report.certified)


def handle_oracle(req: OracleRequest) -> dict:
    surface = req.surface.build()
    v = resolve_vector(req.v, surface)
    check = crosscheck_walls(surface, v, Fraction(0), parse_rational(req.tsq_max), req.box)
    payload = {
        "agree": check.agree,
        "box": req.box,
        "oracle_pairs": [
            {"tsq": frac_json(p), "witness": vector_json(u)} for p, u in check.oracle_pairs
        ],
        "fast_pairs": [
            {"tsq": frac_json(p), "witness": vector_json(u)} for p, u in check.fast_pairs
        ],
    }
    return make_report("oracle-check", surface, payload, vector=v)


_VAR_TOKEN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def expand_template(template: str, variables: dict[str, tuple[int, int]]) -> list[tuple[dict, str]]:
    """Substitute each variable assignment into the vector template.

    Variables are name tokens inside the "r;c1,...;a" syntax; every name in
    the template must come with an inclusive integer range.
    """
    names = sorted(set(_VAR_TOKEN.findall(template)))
    missing = [n for n in names if n not in variables]
    if missing:
        raise InvalidInput("sweep_variables", f"no range given for template variable(s) {missing}")
    spans = []
    for name in names:
        lo, hi = variables[name]
        if hi < lo:
            raise InvalidInput("sweep_range", f"empty range for {name}: [{lo},{hi}]")
        spans.append(range(lo, hi + 1))
    rows = []
    for combo in itertools.product(*spans):
        assignment = dict(zip(names, combo))
        text = _VAR_TOKEN.sub(lambda m: str(assignment[m.group(0)]), template)
        rows.append((assignment, text))
    return rows


def handle_sweep(req: SweepRequest) -> dict:
    surface = req.surface.build()
    rows = []
    for assignment, text in expand_template(req.template, req.variables):
        v = parse_vector(text, surface.rank)
        verdict = decide_preservation(surface, v, req.radius)
        rows.append(
            {
                "assignment": assignment,
                "vector": format_vector(v),
                "status": verdict.status,
                "shift": verdict.shift,
                "exceptional": [e.kind for e in verdict.exceptional if e.blocks],
                "t1sq": frac_json(verdict.regimes.t1sq),
                "t2sq": frac_json(verdict.regimes.t2sq),
                "certified": verdict.certified,
            }
        )
    payload = {"template": req.template, "radius": req.radius, "rows": rows}
    return make_report("sweep", surface, payload)


HANDLERS = {
    "pair": (PairRequest, handle_pair),
    "fm": (FmRequest, handle_fm),
    "walls": (WallsRequest, handle_walls),
    "decompose": (DecomposeRequest, handle_decompose),
    "regimes": (RegimesRequest, handle_regimes),
    "verdict": (VerdictRequest, handle_verdict),
    "amp-walls": (AmpWallsRequest, handle_amp_walls),
    "appendix-check": (AppendixRequest, handle_appendix),
    "oracle-check": (OracleRequest, handle_oracle),
    "sweep": (SweepRequest, handle_sweep),
}

app = FastAPI(title="fmwalls", version=__version__)


def _http_invalid(exc: InvalidInput) -> HTTPException:
    code = 3 if isinstance(exc, UnsupportedSurface) else 2
    return HTTPException(
        status_code=422,
        detail={"invariant": exc.invariant, "message": exc.message, "exit_code": code},
    )


def _endpoint(handler):
    def run(req):
        try:
            return handler(req)
        except InvalidInput as exc:
            raise _http_invalid(exc) from exc

    return run


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "tool": "fmwalls", "version": __version__}


@app.post("/pair", response_model=Report)
def pair_endpoint(req: PairRequest):
    return _endpoint(handle_pair)(req)


@app.post("/fm", response_model=Report)
def fm_endpoint(req: FmRequest):
    return _endpoint(handle_fm)(req)


@app.post("/walls", response_model=Report)
def walls_endpoint(req: WallsRequest):
    return _endpoint(handle_walls)(req)


@app.post("/decompose", response_model=Report)
def decompose_endpoint(req: DecomposeRequest):
    return _endpoint(handle_decompose)(req)


@app.post("/regimes", response_model=Report)
def regimes_endpoint(req: RegimesRequest):
    return _endpoint(handle_regimes)(req)


@app.post("/verdict", response_model=Report)
def verdict_endpoint(req: VerdictRequest):
    return _endpoint(handle_verdict)(req)


@app.post("/amp-walls", response_model=Report)
def amp_walls_endpoint(req: AmpWallsRequest):
    return _endpoint(handle_amp_walls)(req)


@app.post("/appendix-check", response_model=Report)
def appendix_endpoint(req: AppendixRequest):
    return _endpoint(handle_appendix)(req)


@app.post("/oracle-check", response_model=Report)
def oracle_endpoint(req: OracleRequest):
    return _endpoint(handle_oracle)(req)


@app.post("/sweep", response_model=Report)
def sweep_endpoint(req: SweepRequest):
    return _endpoint(handle_sweep)(req)
