import json
from pathlib import Path

import pytest

from fmwalls.cli import main

ROOT = Path(__file__).resolve().parents[1]
PRODUCT = str(ROOT / "surfaces" / "product.json")
RANK1 = str(ROOT / "surfaces" / "rank1.json")


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pair_command(capsys):
    code, out, _ = run(capsys, "pair", "--surface", PRODUCT, "--x", "1;0,0;0", "--y", "0;0,0;1")
    assert code == 0 and out.strip() == "-1"


def test_fm_command(capsys):
    code, out, _ = run(capsys, "fm", "--surface", PRODUCT, "--v", "2;0,5;-1")
    assert code == 0 and out.strip() == "-1;0,-5;2"
    code, out, _ = run(capsys, "fm", "--surface", PRODUCT, "--v", "2;0,5;-1", "--kind", "shift")
    assert out.strip() == "1;0,5;-2"


def test_walls_command_json(capsys):
    code, out, _ = run(
        capsys, "walls", "--surface", PRODUCT, "--v", "2;0,5;-1",
        "--tsq-min", "0", "--tsq-max", "10", "--radius", "12", "--json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "walls" and report["surface"] == "product"
    assert [w["tsq"] for w in report["payload"]["walls"]] == [
        {"num": "2", "den": "1"},
        {"num": "1", "den": "3"},
    ]


def test_walls_command_empty_table_exit_zero(capsys):
    code, out, _ = run(
        capsys, "walls", "--surface", RANK1, "--v", "1;1;0", "--tsq-max", "10", "--radius", "10"
    )
    assert code == 0 and "no walls" in out


def test_verdict_command(capsys):
    code, out, _ = run(capsys, "verdict", "--surface", PRODUCT, "--v", "2;0,5;-1", "--radius", "12")
    assert code == 0
    assert "NotPreservedGenerically" in out and "ShapeLK1" in out


def test_regimes_and_decompose_render(capsys):
    code, out, _ = run(capsys, "regimes", "--surface", PRODUCT, "--v", "2;0,5;-1")
    assert code == 0 and "t1^2 = 2" in out
    code, out, _ = run(
        capsys, "decompose", "--surface", PRODUCT, "--v", "2;0,5;-1", "--u", "1;0,2;0"
    )
    assert code == 0 and "v = 2*(1;0,2;0) + (0;0,1;-1)" in out


def test_appendix_and_oracle_and_amp(capsys):
    code, out, _ = run(capsys, "appendix-check", "--surface", PRODUCT, "--v", "2;0,5;-1")
    assert code == 0 and "passed: True" in out
    code, out, _ = run(capsys, "oracle-check", "--surface", PRODUCT, "--v", "2;0,5;-1", "--box", "8")
    assert code == 0 and out.startswith("Agree")
    code, out, _ = run(capsys, "amp-walls", "--surface", PRODUCT, "--v", "2;1,1;0", "--radius", "5")
    assert code == 0 and "possibly_separated" in out


def test_sweep_command(capsys):
    code, out, _ = run(
        capsys, "sweep", "--surface", PRODUCT, "--template", "L;0,K;-1",
        "--var", "L=1:2", "--var", "K=2:3", "--json",
    )
    assert code == 0
    rows = json.loads(out)["payload"]["rows"]
    assert len(rows) == 4
    assert {r["vector"] for r in rows} == {"1;0,2;-1", "1;0,3;-1", "2;0,2;-1", "2;0,3;-1"}


def test_vector_file_input(capsys, tmp_path):
    vfile = tmp_path / "v.json"
    vfile.write_text(json.dumps({"r": 2, "xi": [0, 5], "a": -1}))
    code, out, _ = run(capsys, "fm", "--surface", PRODUCT, "--v-file", str(vfile))
    assert code == 0 and out.strip() == "-1;0,-5;2"


def test_invalid_input_exit_2(capsys):
    code, _, err = run(capsys, "walls", "--surface", PRODUCT, "--v", "2;0,5")
    assert code == 2 and "vector_syntax" in err
    code, _, err = run(capsys, "pair", "--surface", PRODUCT, "--x", "1;0,0;0", "--y", "0;0;1")
    assert code == 2
    code, _, err = run(capsys, "verdict", "--surface", str(ROOT / "missing.json"), "--v", "1;1,1;0")
    assert code == 2 and "surface_file" in err


def test_unsupported_surface_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "posdef", "gram": [[2, 0], [0, 2]], "ample": [1, 0]}))
    code, _, err = run(capsys, "verdict", "--surface", str(bad), "--v", "1;1,1;0")
    assert code == 3 and "gram_signature" in err


def test_json_output_deterministic(capsys):
    args = ("verdict", "--surface", PRODUCT, "--v", "2;0,5;-1", "--json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_cli_matches_service_over_http(capsys):
    import threading
    import time

    import httpx
    import uvicorn

    from fmwalls.service import app

    config = uvicorn.Config(app, host="127.0.0.1", port=8777, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        for _ in range(100):
            try:
                httpx.get("http://127.0.0.1:8777/health", timeout=1.0)
                break
            except httpx.HTTPError:
                time.sleep(0.05)
        else:
            pytest.fail("service did not start")
        args = ("walls", "--surface", PRODUCT, "--v", "2;0,5;-1", "--json")
        code, local, _ = run(capsys, *args)
        assert code == 0
        code, remote, _ = run(capsys, *args, "--server", "http://127.0.0.1:8777")
        assert code == 0
        assert local == remote
    finally:
        server.should_exit = True
        thread.join(timeout=5)
