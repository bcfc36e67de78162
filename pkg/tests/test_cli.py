"""Command-line interface: subcommands, exit codes, JSON report shape,
cache behavior."""
from __future__ import annotations

import json

import numpy as np
import pytest

from pgcodes import cli, codes, fplinalg, projgeom


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_json(stdout: str) -> dict:
    start = stdout.index("{")
    return json.loads(stdout[start:])


def test_space(capsys):
    code, out, _ = run(capsys, "space", "--p", "3", "--h", "1", "--n", "2")
    assert code == 0
    payload = last_json(out)
    assert payload["result"]["theta"] == [1, 4, 13]
    assert payload["result"]["num_points"] == 13
    code, out, _ = run(capsys, "space", "--p", "2", "--h", "2", "--n", "2")
    assert last_json(out)["result"]["theta"][-1] == 21
    code, out, _ = run(capsys, "space", "--p", "2", "--h", "1", "--n", "3")
    assert last_json(out)["result"]["theta"][-1] == 15


def test_space_rejects_non_prime(capsys):
    code, _, err = run(capsys, "space", "--p", "6", "--h", "1", "--n", "2")
    assert code == 2
    assert "usage error" in err


def test_matrix_summary_and_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    code, out, _ = run(capsys, "matrix", "--p", "2", "--h", "1", "--n", "2", "--save", str(path))
    assert code == 0
    payload = last_json(out)
    assert payload["result"]["shape"] == [7, 7]
    assert payload["result"]["row_weights"] == [3]
    M, p = fplinalg.read_matrix(path)
    assert p == 2 and M.shape == (7, 7)


def test_code_dim(capsys):
    code, out, _ = run(capsys, "code-dim", "--p", "2", "--h", "2", "--n", "2")
    assert code == 0
    assert last_json(out)["result"]["dimension"] == 10


def test_min_weight_and_hull(capsys):
    code, out, _ = run(capsys, "min-weight", "--p", "3", "--h", "1", "--n", "2")
    assert code == 0
    assert last_json(out)["result"]["min"] == 4
    code, out, _ = run(capsys, "hull", "--p", "3", "--h", "1", "--n", "2")
    assert last_json(out)["result"]["min"] == 6


def test_gap_scan(capsys):
    code, out, _ = run(capsys, "gap-scan", "--p", "3", "--h", "1", "--n", "2",
                       "--lo", "4", "--hi", "6")
    assert code == 0
    assert last_json(out)["result"]["weights_present"] == []


def test_dual_min_weight_with_cache(capsys, tmp_path):
    cache = tmp_path / "cache"
    args = ("dual-min-weight", "--p", "2", "--h", "2", "--n", "2",
            "--cache-dir", str(cache))
    code, out1, _ = run(capsys, *args)
    assert code == 0
    p1 = last_json(out1)
    assert p1["result"]["min"] == 6 and p1["meta"]["cache"] == "miss"
    code, out2, _ = run(capsys, *args, "--workers", "4")
    p2 = last_json(out2)
    assert p2["meta"]["cache"] == "hit"
    assert p1["result"] == p2["result"]


def test_dual_budget_reported_honestly(capsys):
    code, out, _ = run(capsys, "dual-min-weight", "--p", "3", "--h", "1", "--n", "2",
                       "--budget", "13")
    assert code == 0
    assert last_json(out)["result"]["exhaustive"] is False


def test_blocking_build_profile_reduce_round_trip(capsys, tmp_path):
    ps_file = tmp_path / "baer.txt"
    code, out, _ = run(capsys, "blocking", "build", "--p", "2", "--h", "2", "--n", "2",
                       "--kind", "baer-cone", "--t", "-1", "--save", str(ps_file))
    assert code == 0
    assert last_json(out)["result"]["size"] == 7
    code, out, _ = run(capsys, "blocking", "profile", "--in", str(ps_file))
    assert code == 0
    payload = last_json(out)
    assert payload["result"]["identities_hold"] and payload["result"]["minimal"]
    code, out, _ = run(capsys, "blocking", "reduce", "--in", str(ps_file))
    assert code == 0
    assert last_json(out)["result"]["removed"] == []


def test_blocking_companion(capsys):
    code, out, _ = run(capsys, "blocking", "companion", "--p", "2", "--h", "2")
    assert code == 0
    payload = last_json(out)
    assert payload["result"]["two_mod_p"]
    assert payload["result"]["intersection"] % 2 == 0


def test_blocking_redei(capsys, tmp_path):
    word = tmp_path / "w.txt"
    code, out, _ = run(capsys, "blocking", "redei", "--p", "2", "--h", "3", "--save", str(word))
    assert code == 0
    assert last_json(out)["result"]["weight"] == 10
    vec, p = codes.read_codeword(word)
    assert p == 2 and int((vec != 0).sum()) == 10


def test_blocking_redei_usage_error(capsys):
    code, _, err = run(capsys, "blocking", "redei", "--p", "3", "--h", "1")
    assert code == 2 and "usage error" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "dimensions")
    assert code == 0
    payload = last_json(out)
    assert payload["result"]["passed"] is True
    assert "suite dimensions: pass" in out


def test_verify_alias(capsys):
    code, out, _ = run(capsys, "verify", "blocking-lemmas", "--workers", "2")
    assert code == 0
    assert last_json(out)["result"]["name"] == "lemmas"


def test_export_round_trips(capsys, tmp_path):
    m = tmp_path / "m.txt"
    code, _, _ = run(capsys, "export", "matrix", "--p", "2", "--h", "1", "--n", "2", "--out", str(m))
    assert code == 0
    M, p = fplinalg.read_matrix(m)
    assert M.shape == (7, 7) and (M.sum(axis=1) == 3).all()

    s = tmp_path / "s.txt"
    code, _, _ = run(capsys, "export", "spread", "--p", "2", "--h", "2", "--n", "2", "--out", str(s))
    assert code == 0
    spread = projgeom.read_spread(s)
    assert spread.num_elements == 21

    ps = tmp_path / "ps.txt"
    code, _, _ = run(capsys, "export", "pointset", "--p", "2", "--h", "1", "--n", "3", "--out", str(ps))
    assert code == 0
    space, idx = projgeom.read_pointset(ps)
    assert len(idx) == 7

    w = tmp_path / "w.txt"
    code, _, _ = run(capsys, "export", "codeword", "--p", "3", "--h", "1", "--n", "2",
                     "--index", "2", "--out", str(w))
    assert code == 0
    vec, p = codes.read_codeword(w)
    assert p == 3 and int((vec != 0).sum()) == 4


def test_export_requires_out(capsys):
    code, _, err = run(capsys, "export", "matrix", "--p", "2", "--h", "1", "--n", "2")
    assert code == 2 and "usage error" in err


def test_io_error_exit(capsys):
    code, _, err = run(capsys, "blocking", "profile", "--in", "/nonexistent/nope.txt")
    assert code == 4 and "io error" in err


def test_budget_error_exit(capsys):
    code, _, err = run(capsys, "gap-scan", "--p", "23", "--h", "1", "--n", "2",
                       "--lo", "1", "--hi", "2")
    assert code == 3 and "budget exceeded" in err


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "min-weight", "--p", "3", "--h", "1", "--n", "2", "--out", str(a))
    run(capsys, "min-weight", "--p", "3", "--h", "1", "--n", "2", "--out", str(b))
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ja["result"] == jb["result"]
