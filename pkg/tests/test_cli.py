import hashlib
import json
import os
import subprocess
import sys

import pytest

from siegelq import HalfIntegralMatrix, deserialize, eisenstein_q, nearly_eisenstein, serialize
from siegelq.cli import RunConfig, UsageError, main, parse_args


def cli(*args, stdin=b"", env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "siegelq", *args], input=stdin, capture_output=True,
                          env=full_env, timeout=120)


def test_parse_eis():
    cfg = parse_args(["eis", "--weight", "4", "--prec", "7"])
    assert cfg == RunConfig(command="eis", genus=1, level=1, trace_bound=7, h=4, threads=cfg.threads)


def test_parse_ladder_and_errors():
    cfg = parse_args(["ladder", "--weight", "8", "--s", "-2", "--prec", "3"])
    assert (cfg.h, cfg.s, cfg.trace_bound) == (8, -2, 3)
    for argv in (["ladder", "--weight", "6", "--s", "1"], ["ladder", "--weight", "6", "--s", "-2"],
                 ["eis", "--weight", "5"], ["eis", "--weight", "2"], ["eis", "--weight", "4", "--genus", "2"],
                 ["gate", "--p", "4"], ["dim", "--group", "gl", "--kappa", "0,1"], ["dp", "--e", "0"],
                 ["mul", "only-one"], ["frobnicate"], ["eis", "--weight", "4", "--threads", "0"]):
        with pytest.raises(UsageError):
            parse_args(argv)


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("SIEGELQ_THREADS", "3")
    assert parse_args(["eis", "--weight", "4"]).threads == 3
    assert parse_args(["eis", "--weight", "4", "--threads", "2"]).threads == 2


def test_usage_error_exit_code_and_message():
    r = cli("eis", "--weight", "5")
    assert r.returncode == 2
    assert b"weight must be even" in r.stderr and r.stdout == b""


def test_eis_output_matches_library():
    r = cli("eis", "--weight", "6", "--prec", "8")
    assert r.returncode == 0
    assert r.stdout.decode() == serialize(eisenstein_q(6, 8))


def test_mul_files_and_pipe(tmp_path):
    a = tmp_path / "e4.json"
    a.write_text(serialize(eisenstein_q(4, 6)))
    r = cli("mul", str(a), str(a))
    assert r.returncode == 0
    assert deserialize(r.stdout) == eisenstein_q(8, 6)
    v = cli("validate", stdin=r.stdout)
    assert v.returncode == 0
    assert json.loads(v.stdout)["terms"] == 7


def test_ladder_realize_pipe():
    lad = cli("ladder", "--weight", "6", "--s", "-1", "--prec", "4")
    real = cli("realize", stdin=lad.stdout)
    assert real.returncode == 0
    assert deserialize(real.stdout)[HalfIntegralMatrix.scalar(1)] == 60


def test_output_file_and_log(tmp_path):

    out, log = tmp_path / "out.json", tmp_path / "run.json"
    assert main(["ladder", "--weight", "8", "--s", "-2", "--prec", "3", "-o", str(out), "--log", str(log)]) == 0
    assert deserialize(out.read_bytes()).identical(nearly_eisenstein(8, -2, 3))
    record = json.loads(log.read_text())
    assert record["exit_code"] == 0 and record["config"]["h"] == 8
    assert record["output_sha256"] == hashlib.sha256(out.read_bytes()).hexdigest()


def test_gate_failure_is_exit_one(tmp_path):
    path = tmp_path / "e12.json"
    path.write_text(serialize(eisenstein_q(12, 3)))
    out = tmp_path / "gate.json"
    assert main(["gate", "--p", "691", str(path), "-o", str(out)]) == 1
    doc = json.loads(out.read_text())
    assert doc["ok"] is False and doc["witness"][0] == {"S": [[2]]}
    assert main(["gate", "--p", "5", str(path), "-o", str(out)]) == 0


def test_congr(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(serialize(eisenstein_q(4, 10)))
    b.write_text(serialize(eisenstein_q(8, 10)))
    out = tmp_path / "c.json"
    assert main(["congr", "--p", "5", str(a), str(b), "-o", str(out)]) == 0
    assert main(["congr", "--p", "7", str(a), str(b), "-o", str(out)]) == 1


def test_enum_and_dim(tmp_path):
    r = cli("enum-T", "--genus", "2", "--max-trace", "2")
    rows = [json.loads(line) for line in r.stdout.decode().splitlines()]
    assert len(rows) == 10 and rows[0] == [[0, 0], [0, 0]]
    assert [[2, 2], [2, 2]] in rows and [[2, 4], [4, 2]] not in rows
    assert cli("dim", "--group", "sp", "--kappa", "1,1").stdout == b"5\n"
    assert cli("dim", "--group", "gl", "--kappa", "2,0").stdout == b"3\n"


def test_domain_error_is_exit_one():
    r = cli("theta", stdin=b'{"genus": 1,')
    assert r.returncode == 1
    assert b"byte" in r.stderr


def test_lenient_flag(tmp_path):
    doc = json.loads(serialize(eisenstein_q(4, 2)))
    doc["note"] = "extra"
    path = tmp_path / "x.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "v.json"
    assert main(["validate", str(path), "-o", str(out)]) == 1
    assert main(["validate", "--lenient", str(path), "-o", str(out)]) == 0


def test_genus_two_contract_matches_theta(tmp_path):
    from siegelq import QExpansion
    from siegelq.rings import QQ
    f = QExpansion(2, 1, 2, QQ, {HalfIntegralMatrix.from_doubled([[2, 1], [1, 2]]): 3,
                                 HalfIntegralMatrix.from_doubled([[2, 0], [0, 2]]): -1})
    src = tmp_path / "f.json"
    src.write_text(serialize(f))
    d = cli("dp", "--e", "2", str(src))
    assert d.returncode == 0
    c = cli("contract", stdin=d.stdout)
    assert c.returncode == 0
    assert c.stdout == cli("theta", str(src)).stdout
    assert cli("contract", str(src)).returncode == 1
    assert cli("D", "--weight", "10", str(src)).returncode == 0
