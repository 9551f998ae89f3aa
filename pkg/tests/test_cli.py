import json

import pytest

from raylanding.cli import main


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def test_trace_poly_csv(tmp_path):
    assert run(tmp_path, "trace", "--angle", "1/3", "--c", "-1,0") == 0
    rows = (tmp_path / "ray.csv").read_text().splitlines()
    assert rows[0] == "t,re,im,residual"
    ts = [float(r.split(",")[0]) for r in rows[1:]]
    assert all(a < b for a, b in zip(ts, ts[1:]))
    meta = json.loads((tmp_path / "ray.json").read_text())
    assert meta


def test_trace_exp_negative_parameter(tmp_path):
    assert run(tmp_path, "trace", "--kind", "exp", "--c", "-2,0", "--address", "[0]", "--t", "0.5:8") == 0


@pytest.mark.parametrize("args", [
    ["trace", "--angle", "1/0"],
    ["trace"],
    ["trace", "--kind", "exp"],
    ["trace", "--angle", "0", "--degree", "1"],
    ["render", "--viewport", "0,0,0,1"],
    ["verify", "--set", "no_such_key=1"],
    ["land", "--bogus"],
])
def test_usage_errors(tmp_path, args):
    assert run(tmp_path, *args) == 2


def test_land(tmp_path, capsys):
    assert run(tmp_path, "land", "--angle", "0", "--c", "-1,0") == 0
    assert "lands at 1.618" in capsys.readouterr().out
    assert json.loads((tmp_path / "landing.json").read_text())["status"] == "landed"


def test_landing_set_table(tmp_path, capsys):
    assert run(tmp_path, "landing-set", "--c", "-1,0", "--target=-0.618,0") == 0
    out = capsys.readouterr().out
    assert "1/3" in out and "2/3" in out


def test_verify_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "--suite", "polynomial-basics", "--out", str(a)]) == 0
    assert main(["verify", "--suite", "polynomial-basics", "--out", str(b)]) == 0
    assert (a / "verify.json").read_bytes() == (b / "verify.json").read_bytes()


def test_verify_corrupted_tolerance(tmp_path):
    assert run(tmp_path, "verify", "--suite", "polynomial-basics", "--set", "landing_tol=1e-30") == 1
    assert (tmp_path / "verify_failures.json").exists()


def test_dump_config_round_trip(tmp_path, capsys):
    assert main(["land", "--angle", "1/3", "--c", "-1,0", "--dump-config"]) == 0
    text = capsys.readouterr().out
    conf = tmp_path / "land.conf"
    conf.write_text(text)
    assert main(["land", "--config", str(conf), "--dump-config"]) == 0
    assert capsys.readouterr().out == text


def test_config_rejects_unknown_keys(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour=blue\n")
    assert main(["land", "--config", str(conf)]) == 2


def test_render_hash_stable(tmp_path, capsys):
    args = ["render", "--c", "-1,0", "--size", "96x96", "--max-iter", "60", "--rays", "1/3;2/3"]
    assert main([*args, "--out", str(tmp_path / "a")]) == 0
    first = capsys.readouterr().out
    assert main([*args, "--out", str(tmp_path / "b")]) == 0
    assert capsys.readouterr().out.split()[-1] == first.split()[-1]
    assert any((tmp_path / "a").glob("*.png"))
