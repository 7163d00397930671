"""Command-line client for the wall-and-chamber service.

Each subcommand builds the same request model the HTTP endpoints accept and
executes it in process by default; pass --server to send it to a running
instance instead.  Exit codes: 0 on any computed result, 2 on invalid input
(the violated invariant is named), 3 on an unsupported intersection form.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .lattice import InvalidInput, UnsupportedSurface
from .service import HANDLERS
from .reports import dumps


def _load_surface(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InvalidInput("surface_file", f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InvalidInput("surface_json", f"{path}: {exc}")
    if not isinstance(data, dict):
        raise InvalidInput("surface_schema", f"{path}: expected a JSON object")
    return data


def _vector_arg(args) -> str | dict:
    if getattr(args, "v_file", None):
        try:
            return json.loads(Path(args.v_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput("vector_file", f"{args.v_file}: {exc}")
    if getattr(args, "v", None) is None:
        raise InvalidInput("vector_required", "pass --v or --v-file")
    return args.v


def _parse_var(spec: str) -> tuple[str, tuple[int, int]]:
    try:
        name, rng = spec.split("=", 1)
        lo, hi = rng.split(":", 1)
        return name.strip(), (int(lo), int(hi))
    except ValueError:
        raise InvalidInput("sweep_var_syntax", f"expected NAME=lo:hi, got {spec!r}")


def _frac_text(obj) -> str:
    if obj is None:
        return "n/a"
    num, den = obj["num"], obj["den"]
    return num if den == "1" else f"{num}/{den}"


def _vec_text(obj) -> str:
    return f"{obj['r']};{','.join(str(c) for c in obj['xi'])};{obj['a']}"


def build_request(args) -> dict:
    surface = _load_surface(args.surface)
    body: dict = {"surface": surface}
    cmd = args.command
    if cmd == "pair":
        body.update(x=args.x, y=args.y)
    elif cmd == "fm":
        body.update(v=_vector_arg(args), kind=args.kind)
    elif cmd == "walls":
        body.update(v=_vector_arg(args), tsq_min=args.tsq_min, tsq_max=args.tsq_max, radius=args.radius)
    elif cmd == "decompose":
        body.update(v=_vector_arg(args), u=args.u)
    elif cmd == "regimes":
        body.update(v=_vector_arg(args), radius=args.radius, dual=args.dual)
    elif cmd in ("verdict", "amp-walls", "appendix-check"):
        body.update(v=_vector_arg(args), radius=args.radius)
    elif cmd == "oracle-check":
        body.update(v=_vector_arg(args), box=args.box, tsq_max=args.tsq_max)
    elif cmd == "sweep":
        body.update(
            template=args.template,
            variables=dict(_parse_var(s) for s in args.var or []),
            radius=args.radius,
        )
    return body


def execute(command: str, body: dict, server: str | None) -> dict:
    if server is not None:
        import httpx

        resp = httpx.post(f"{server.rstrip('/')}/{command}", json=body, timeout=120.0)
        if resp.status_code == 422:
            detail = resp.json().get("detail", {})
            if isinstance(detail, dict) and "invariant" in detail:
                cls = UnsupportedSurface if detail.get("exit_code") == 3 else InvalidInput
                raise cls(detail["invariant"], detail.get("message", ""))
            raise InvalidInput("request", json.dumps(detail))
        resp.raise_for_status()
        return resp.json()
    model_cls, handler = HANDLERS[command]
    return handler(model_cls.model_validate(body))


def _render(report: dict) -> str:
    cmd = report["command"]
    p = report["payload"]
    lines: list[str] = []
    if cmd == "pair":
        lines.append(str(p["value"]))
    elif cmd == "fm":
        lines.append(_vec_text(p["output"]))
    elif cmd == "walls":
        if not p["walls"]:
            lines.append("no walls in the window")
        for w in p["walls"]:
            dec = w["decomposition"]
            lines.append(
                f"t^2 = {_frac_text(w['tsq'])}: witnesses "
                + ", ".join(_vec_text(u) for u in w["witnesses"])
                + f" | v = {dec['ell']}*({_vec_text(dec['u'])}) + ({_vec_text(dec['w'])})"
            )
        lines.append(f"certified: {p['certified']}" + (f" ({p['limiting']})" if p["limiting"] else ""))
    elif cmd == "decompose":
        dec = p["decomposition"]
        lines.append(f"v = {dec['ell']}*({_vec_text(dec['u'])}) + ({_vec_text(dec['w'])})")
        pos = p["position"]
        lines.append(f"line position t^2 = {pos if isinstance(pos, str) else _frac_text(pos)}")
        if "crossing" in p:
            lines.append(f"crossing: {p['crossing']}")
    elif cmd == "regimes":
        t1 = _frac_text(p["t1sq"]) if p["t1_applicable"] else "not applicable"
        lines.append(f"t1^2 = {t1}, t2^2 = {_frac_text(p['t2sq'])} (certified: {p['certified']})")
        for w in p["walls"]:
            tag = w["fm_case"]
            lines.append(
                f"  t^2 = {_frac_text(w['tsq'])}: {w['crossing']}, case {tag['side']}({tag['case']})"
                + (" exceptional" if w["exceptional"] else "")
            )
    elif cmd == "verdict":
        lines.append(f"{p['status']} (shift {p['shift']})")
        lines.append(f"reason: {p['reason']}")
        reg, dual = p["regimes"], p["dual_regimes"]
        lines.append(f"t1^2 = {_frac_text(reg['t1sq'])}, t2^2 = {_frac_text(reg['t2sq'])}")
        t1d = _frac_text(dual["t1sq"]) if dual["t1_applicable"] else "not applicable"
        lines.append(f"dual: t1'^2 = {t1d}, t2'^2 = {_frac_text(dual['t2sq'])}")
        for case in p["exceptional"]:
            lines.append(f"exceptional: {json.dumps(case, sort_keys=True)}")
        if p["witness_pair"]:
            lines.append("witness ample pair attached")
        if p["advisory"]:
            adv = p["advisory"]
            lines.append(
                f"advisory: 1/(n^2 t1'^2) = {_frac_text(adv['mirrored_dual_t1sq'])} "
                f"{adv['relation']} t1^2 = {_frac_text(adv['t1sq'])}"
            )
        lines.append(f"certified: {p['certified']}")
    elif cmd == "amp-walls":
        lines.append(p["mode"])
        for w in p["witnesses"]:
            lines.append(
                f"  v1 = {_vec_text(w['v1'])}, v2 = {_vec_text(w['v2'])}, delta = {w['delta']}"
            )
    elif cmd == "appendix-check":
        if not p["pairs"]:
            lines.append(f"no adjacent wall pairs ({p['wall_count']} wall(s))")
        for pair in p["pairs"]:
            lines.append(
                f"pair ({_frac_text(pair['tsq_low'])}, {_frac_text(pair['tsq_high'])}): "
                + ("PASS" if pair["passed"] else "FAIL")
            )
            for item in pair["items"]:
                vals = ", ".join(f"{k}={_frac_text(x)}" for k, x in sorted(item["values"].items()))
                lines.append(f"  {'ok ' if item['passed'] else 'BAD'} {item['name']}: {vals}")
        lines.append(f"passed: {p['passed']}")
    elif cmd == "oracle-check":
        lines.append("Agree" if p["agree"] else "Disagree")
        for pair in p["oracle_pairs"]:
            lines.append(f"  t^2 = {_frac_text(pair['tsq'])}: {_vec_text(pair['witness'])}")
    elif cmd == "sweep":
        for row in p["rows"]:
            assign = " ".join(f"{k}={v}" for k, v in sorted(row["assignment"].items()))
            lines.append(
                f"{assign}: {row['vector']} -> {row['status']}"
                f" t1^2={_frac_text(row['t1sq'])} t2^2={_frac_text(row['t2sq'])}"
            )
    else:
        lines.append(dumps(report))
    return "\n".join(lines)


def _add_common(sp, vector: bool = True, radius: int | None = 12) -> None:
    sp.add_argument("--surface", required=True, help="surface descriptor JSON file")
    if vector:
        sp.add_argument("--v", help='Mukai vector "r;c1,...,crho;a"')
        sp.add_argument("--v-file", help='JSON file {"r":int,"xi":[int],"a":int}')
    if radius is not None:
        sp.add_argument("--radius", type=int, default=radius)
    sp.add_argument("--json", action="store_true", help="emit the full JSON report")
    sp.add_argument("--server", help="base URL of a running service (thin-client mode)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fmwalls", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pair", help="Mukai pairing of two vectors")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    _add_common(sp, vector=False, radius=None)

    sp = sub.add_parser("fm", help="cohomological transform of a vector")
    sp.add_argument("--kind", choices=["transform", "dual", "shift"], default="transform")
    _add_common(sp, radius=None)

    sp = sub.add_parser("walls", help="totally semistable walls on the line (0,tH)")
    sp.add_argument("--tsq-min", default="0")
    sp.add_argument("--tsq-max", default="10")
    _add_common(sp)

    sp = sub.add_parser("decompose", help="decomposition v = l*u + w for a witness u")
    sp.add_argument("--u", required=True)
    _add_common(sp, radius=None)

    sp = sub.add_parser("regimes", help="torsion-free/torsion/complex thresholds")
    sp.add_argument("--dual", action="store_true", help="report the transformed vector instead")
    _add_common(sp)

    sp = sub.add_parser("verdict", help="stability preservation decision")
    _add_common(sp)

    sp = sub.add_parser("amp-walls", help="chamber-separating decompositions in the ample cone")
    _add_common(sp)

    sp = sub.add_parser("appendix-check", help="inequality suite on adjacent wall pairs")
    _add_common(sp)

    sp = sub.add_parser("oracle-check", help="compare the enumerator against the box-scan oracle")
    sp.add_argument("--box", type=int, default=6)
    sp.add_argument("--tsq-max", default="10")
    _add_common(sp, radius=None)

    sp = sub.add_parser("sweep", help="verdicts over a template family of vectors")
    sp.add_argument("--template", required=True, help='vector template, e.g. "L;0,K;-1"')
    sp.add_argument("--var", action="append", help="variable range NAME=lo:hi", default=[])
    _add_common(sp, vector=False)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("fmwalls.service:app", host=args.host, port=args.port)
        return 0
    try:
        body = build_request(args)
        report = execute(args.command, body, args.server)
    except UnsupportedSurface as exc:
        print(f"error [{exc.invariant}]: {exc.message}", file=sys.stderr)
        return 3
    except InvalidInput as exc:
        print(f"error [{exc.invariant}]: {exc.message}", file=sys.stderr)
        return 2
    print(dumps(report) if args.json else _render(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
