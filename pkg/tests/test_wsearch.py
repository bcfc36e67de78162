"""Weight searches: enumeration reports, dual minimum-weight search with
certificates and checkpointing, subset scans, and the bound table."""
from __future__ import annotations

import json

import numpy as np
import pytest

from pgcodes import fplinalg, wsearch
from pgcodes.codes import Code
from pgcodes.errors import BudgetExceeded, UsageError
from pgcodes.projgeom import projective_space, theta
from pgcodes.wsearch import SearchBudget


def test_budget_validation():
    with pytest.raises(UsageError):
        SearchBudget(workers=0)
    with pytest.raises(UsageError):
        SearchBudget(max_enumeration=-1)


def test_enumerate_weights_symmetric_code():
    code = Code(projective_space(2, 1, 2))
    hist = wsearch.enumerate_weights(code).result["histogram"]
    # Fano plane code: 1 zero word, 7+7 words of weights 3 and 4, 1 full word
    assert hist == {"0": 1, "3": 7, "4": 7, "7": 1}


def test_enumerate_weights_budget():
    code = Code(projective_space(3, 2, 2))  # 3^37 words
    with pytest.raises(BudgetExceeded) as err:
        wsearch.enumerate_weights(code)
    assert err.value.needed == 3**37


@pytest.mark.parametrize("p,h,n,expect_min,expect_count", [
    (2, 1, 2, 3, 7),
    (3, 1, 2, 4, 26),
    (2, 2, 2, 5, 21),
    (2, 1, 3, 7, 15),
])
def test_min_weight_all_hyperplane_multiples(p, h, n, expect_min, expect_count):
    r = wsearch.min_weight_report(Code(projective_space(p, h, n))).result
    assert r["min"] == expect_min == theta(p**h, n - 1)
    assert r["count"] == expect_count
    assert r["all_hyperplane_multiples"]
    assert r["certificates"][0]["weight"] == expect_min


def test_gap_scan_finds_and_misses():
    code = Code(projective_space(2, 1, 2))
    r = wsearch.gap_scan(code, 3, 7).result
    assert r["weights_present"] == [4]
    assert r["certificates"][0]["weight"] == 4
    r = wsearch.gap_scan(code, 4, 7).result
    assert r["weights_present"] == [] and r["exhaustive"]


@pytest.mark.parametrize("p,h,n,expect,count,structure", [
    (3, 1, 2, 6, 156, True),
    (2, 2, 2, 8, 210, None),
    (2, 1, 3, 8, 15, True),
])
def test_hull_min_weights(p, h, n, expect, count, structure):
    r = wsearch.hull_min_weight(Code(projective_space(p, h, n))).result
    assert r["min"] == expect == 2 * (p**h) ** (n - 1)
    assert r["count"] == count
    assert r["all_hyperplane_differences"] is structure


@pytest.mark.parametrize("p,h,expect", [(2, 1, 4), (3, 1, 6), (2, 2, 6)])
def test_dual_min_weight_planes(p, h, expect):
    space = projective_space(p, h, 2)
    r = wsearch.dual_min_weight(space).result
    assert r["min"] == expect
    assert r["exhaustive"]
    kinds = [c["kind"] for c in r["certificates"]]
    assert "line_difference" in kinds
    # every certificate is a verified dual word of its stated weight
    for c in r["certificates"]:
        vec = fplinalg.row_of_digits(c["digits"], p)
        assert fplinalg.weight(vec) == c["weight"]
        assert Code(space).dual_contains(vec)


def test_dual_min_weight_q4_certificate_below_line_difference():
    r = wsearch.dual_min_weight(projective_space(2, 2, 2)).result
    kinds = [c["kind"] for c in r["certificates"]]
    assert kinds[0] == "support_search"  # 6 < 2q = 8: search found the optimum
    assert r["min"] == 6 and r["candidates"] > 0


def test_dual_min_weight_three_space_equals_plane_value():
    r = wsearch.dual_min_weight(projective_space(2, 1, 3)).result
    assert r["min"] == 4
    assert r["equals_plane_value"] and r["exhaustive"]
    kinds = [c["kind"] for c in r["certificates"]]
    assert "embedded_plane_word" in kinds
    assert r["plane"]["min"] == 4


def test_dual_min_weight_determinism_across_workers():
    space = projective_space(2, 2, 2)
    a = wsearch.dual_min_weight(space, SearchBudget(workers=1))
    b = wsearch.dual_min_weight(space, SearchBudget(workers=3))
    assert a.result_json() == b.result_json()
    assert a.meta["workers"] == 1 and b.meta["workers"] == 3


def test_dual_min_weight_budget_is_honest():
    space = projective_space(3, 1, 2)
    r = wsearch.dual_min_weight(space, SearchBudget(max_combinations=13)).result
    assert not r["exhaustive"]  # one node per root cannot finish
    assert r["min"] == 6  # the certificate bound still stands


def test_dual_min_weight_checkpoint_resume(tmp_path):
    space = projective_space(2, 2, 2)
    ck = tmp_path / "dual.ckpt"
    first = wsearch.dual_min_weight(space, checkpoint=str(ck))
    assert ck.exists()
    state = json.loads(ck.read_text())
    assert state["roots_done"] == space.num_points
    second = wsearch.dual_min_weight(space, checkpoint=str(ck))
    assert first.result_json() == second.result_json()


def test_dual_min_weight_checkpoint_header_mismatch(tmp_path):
    ck = tmp_path / "dual.ckpt"
    ck.write_text(json.dumps({"header": {"different": True}, "state": {}}))
    r = wsearch.dual_min_weight(projective_space(2, 1, 2), checkpoint=str(ck)).result
    assert r["min"] == 4  # stale checkpoint ignored, fresh search ran


def _record_blocking(space, mask):
    cache_masks = _fano_masks(space)
    if all(mask & m for m in cache_masks):
        return {"mask": mask}
    return None


def _fano_masks(space):
    from pgcodes.blocking import line_cache

    return line_cache(space).masks


def test_subset_scan_counts_fano_blocking_sets():
    space = projective_space(2, 1, 2)
    records = wsearch.subset_scan(space, _record_blocking)
    # complements of line-free sets: C(7,0)+C(7,1)+C(7,2)+(C(7,3)-7)+7 = 64
    assert len(records) == 64
    masks = [r["mask"] for r in records]
    assert masks == sorted(masks)  # deterministic mask order


def test_subset_scan_workers_match():
    space = projective_space(2, 1, 2)
    solo = wsearch.subset_scan(space, _record_blocking)
    multi = wsearch.subset_scan(space, _record_blocking, SearchBudget(workers=3))
    assert solo == multi


def test_subset_scan_guard():
    with pytest.raises(BudgetExceeded):
        wsearch.subset_scan(projective_space(3, 1, 3), _record_blocking)


def test_table1_rows():
    rep = wsearch.table1_report()
    rows = {r["q"]: r for r in rep.result["rows"]}
    assert rows[2]["d"] == 4 and rows[8]["d"] == 10  # 2^h + 2
    assert rows[3]["d"] == 6 and rows[5]["d"] == 10 and rows[7]["d"] == 14  # 2p
    assert rows[9]["lower"] == 12 and rows[9]["upper"] == 15
    assert rows[9]["certificate"]["weight"] == 15
    assert rows[9]["certificate_matches_upper"]
    assert rows[49]["lower"] == "85" and rows[49]["upper"] == 91
    assert "discrepancy" in rows[49]
    assert rows[121]["lower"] == "210" and rows[121]["upper"] == 231
    assert all(r["consistent"] for r in rep.result["rows"])


def test_table1_determinism():
    a = wsearch.table1_report().result_json()
    b = wsearch.table1_report().result_json()
    assert a == b
