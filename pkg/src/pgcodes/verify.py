"""Verification suites: each suite checks one family of facts about the
point-hyperplane codes and blocking sets, and returns a deterministic report
(pass/fail per check, with certificates or counterexamples).

Suites (runnable via the CLI as `pgcodes verify <name>`):

- dimensions:  code dimensions against the binomial dimension formula
- min_weights: minimum weight + classification of all minimum words
- hull:        hull minimum weight + hyperplane-difference structure
- gaps:        verified empty weight intervals
- dual:        dual minimum weights with certificates (plane and n = 3)
- redei:       Rédei-type dual words of weight 2q+1-k
- spread:      spread partitions, |B(U)| = 1 mod p, one-point-element bounds
- companion:   companion blocking sets, |B /\\ B'| = 2 mod p, and v not in C
- lemmas:      brute-force subset scans of the tangent/reduction lemmas
- identities:  exact counting identities and size-bound brackets
- table1:      the summary bound table with certificates
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import blocking, codes, fplinalg, kernels, projgeom, wsearch
from .blocking import PointSet, line_cache
from .codes import Code
from .errors import AssertionFailed
from .gfq import field
from .projgeom import projective_space, desarguesian_spread, theta
from .wsearch import SearchBudget


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: list[dict]
    meta: dict

    def result_json(self) -> str:
        return json.dumps(
            {"name": self.name, "passed": self.passed, "checks": self.checks},
            sort_keys=True, indent=2,
        )

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "passed": self.passed, "checks": self.checks, "meta": self.meta},
            sort_keys=True, indent=2,
        )


def _finish(name: str, checks: list[dict], t0: float, workers: int = 1) -> SuiteResult:
    meta = {
        "runtime_ms": int((time.time() - t0) * 1000),
        "backend": kernels.backend_name(),
        "workers": workers,
    }
    return SuiteResult(name, all(c["passed"] for c in checks), checks, meta)


def _check(name: str, passed: bool, **detail) -> dict:
    out = {"name": name, "passed": bool(passed)}
    out.update(detail)
    return out


# -- criterion 1: dimensions ------------------------------------------------------


def suite_dimensions() -> SuiteResult:
    t0 = time.time()
    cases = [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3), (3, 2, 2)]
    checks = []
    for p, h, n in cases:
        space = projective_space(p, h, n)
        got = Code(space).dimension
        want = codes.dimension_formula(p, h, n)
        checks.append(_check(f"dim C(PG({n},{p**h}))", got == want, got=got, expected=want))
    return _finish("dimensions", checks, t0)


# -- criterion 2: minimum weights ---------------------------------------------------


def suite_min_weights() -> SuiteResult:
    t0 = time.time()
    checks = []
    for p, h, n in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)]:
        space = projective_space(p, h, n)
        r = wsearch.min_weight_report(Code(space)).result
        want = theta(p**h, n - 1)
        ok = r["min"] == want and r["all_hyperplane_multiples"] and r["count"] == r["expected_hyperplane_multiples"]
        checks.append(_check(
            f"min weight C(PG({n},{p**h}))", ok,
            got=r["min"], expected=want, count=r["count"],
            all_hyperplane_multiples=r["all_hyperplane_multiples"],
        ))
    return _finish("min_weights", checks, t0)


# -- criterion 3: hull ---------------------------------------------------------------


def suite_hull() -> SuiteResult:
    t0 = time.time()
    checks = []
    for p, h, n, want in [(3, 1, 2, 6), (2, 2, 2, 8), (2, 1, 3, 8)]:
        space = projective_space(p, h, n)
        code = Code(space)
        r = wsearch.hull_min_weight(code).result
        ok = r["min"] == want == 2 * (p**h) ** (n - 1)
        detail = {"got": r["min"], "expected": want, "count": r["count"]}
        if h == 1:
            ok = ok and r["all_hyperplane_differences"]
            detail["all_hyperplane_differences"] = r["all_hyperplane_differences"]
        checks.append(_check(f"hull min weight PG({n},{p**h})", ok, **detail))
        hd = code.hull_dimension()
        checks.append(_check(
            f"hull dimension PG({n},{p**h})", hd == code.dimension - 1,
            got=hd, expected=code.dimension - 1,
        ))
    return _finish("hull", checks, t0)


# -- criterion 4: weight gaps ---------------------------------------------------------


def suite_gaps() -> SuiteResult:
    t0 = time.time()
    checks = []
    cases = [
        (3, 1, 2, 4, 6),   # no weight-5 words
        (2, 2, 2, 5, 8),   # ]5, 8[ empty
        (2, 1, 3, 7, 8),   # ]theta, 2p^2[ empty (trivially)
        (3, 1, 3, 13, 18),  # ]theta, 2p^2[ empty
    ]
    for p, h, n, lo, hi in cases:
        space = projective_space(p, h, n)
        r = wsearch.gap_scan(Code(space), lo, hi).result
        checks.append(_check(
            f"gap ]{lo},{hi}[ PG({n},{p**h})",
            r["weights_present"] == [] and r["exhaustive"],
            weights_present=r["weights_present"], exhaustive=r["exhaustive"],
        ))
    return _finish("gaps", checks, t0)


# -- criterion 5: dual minimum weights -------------------------------------------------


def suite_dual(workers: int = 1) -> SuiteResult:
    t0 = time.time()
    budget = SearchBudget(workers=workers)
    checks = []
    for p, h, want in [(2, 1, 4), (3, 1, 6), (2, 2, 6), (5, 1, 10)]:
        space = projective_space(p, h, 2)
        r = wsearch.dual_min_weight(space, budget).result
        cert_ok = all(c["weight"] >= r["min"] for c in r["certificates"]) and any(
            c["weight"] == r["min"] for c in r["certificates"]
        )
        checks.append(_check(
            f"dual min weight PG(2,{p**h})",
            r["min"] == want and r["exhaustive"] and cert_ok,
            got=r["min"], expected=want, exhaustive=r["exhaustive"],
            certificates=[{"kind": c["kind"], "weight": c["weight"]} for c in r["certificates"]],
        ))
    for p, want in [(2, 4), (3, 6)]:
        space = projective_space(p, 1, 3)
        r = wsearch.dual_min_weight(space, budget).result
        kinds = [c["kind"] for c in r["certificates"]]
        checks.append(_check(
            f"dual min weight PG(3,{p}) equals plane value",
            r["min"] == want and r["equals_plane_value"] and r["exhaustive"]
            and "embedded_plane_word" in kinds,
            got=r["min"], expected=want, equals_plane_value=r["equals_plane_value"],
            exhaustive=r["exhaustive"], certificate_kinds=kinds,
        ))
    return _finish("dual", checks, t0, workers)


# -- criterion 6: Rédei dual words -----------------------------------------------------


def suite_redei() -> SuiteResult:
    t0 = time.time()
    checks = []
    for p, h, want_w in [(2, 2, 6), (2, 3, 10), (3, 2, 15)]:
        q = p**h
        rs = blocking.redei_blocking_set(field(p, h), 1)
        rep = blocking.redei_dual_word(rs)
        code = Code(rs.points.space)
        in_dual = code.dual_contains(rep.word.vector)
        checks.append(_check(
            f"Redei word q={q} e=1",
            rep.weight == want_w == 2 * q + 1 - rs.k and in_dual,
            weight=rep.weight, expected=want_w, k=rs.k, in_dual=in_dual,
            size=len(rs.points), minimal=rs.minimal, hypothesis_met=rep.hypothesis_met,
        ))
    return _finish("redei", checks, t0)


# -- criterion 7: field reduction / spreads ---------------------------------------------


def suite_spread(n_random: int = 10_000, seed: int = 73) -> SuiteResult:
    t0 = time.time()
    checks = []
    for p, h in [(2, 2), (3, 2)]:
        spread = desarguesian_spread(p, h, 2)
        q = p**h
        n_el = spread.num_elements
        covered = bool((spread.lookup >= 0).all())
        sizes_ok = all(len(pts) == theta(p, h - 1) for pts in spread.element_points)
        checks.append(_check(
            f"spread partition PG({3 * h - 1},{p}) from PG(2,{q})",
            n_el == theta(q, 2) and covered and sizes_ok,
            elements=n_el, expected=theta(q, 2), covered=covered,
        ))
    # exhaustive over all planes of PG(5,2)
    spread = desarguesian_spread(2, 2, 2)
    amb = spread.ambient
    n_planes = 0
    bad_mod = 0
    bad_bound = 0
    for u in projgeom.enumerate_subspaces(amb, 2):
        n_planes += 1
        elems = spread.b_of(u)
        if len(elems) % 2 != 1:
            bad_mod += 1
        try:
            blocking.count_one_point_elements(spread, u)
        except AssertionFailed:
            bad_bound += 1
    checks.append(_check(
        "all planes of PG(5,2): |B(U)| odd and one-point bound",
        n_planes == 1395 and bad_mod == 0 and bad_bound == 0,
        planes=n_planes, expected_planes=1395, mod_violations=bad_mod,
        bound_violations=bad_bound,
    ))
    # random subspaces of PG(5,3)
    spread9 = desarguesian_spread(3, 2, 2)
    amb9 = spread9.ambient
    rng = np.random.default_rng(seed)
    bad_mod = 0
    bad_bound = 0
    dims_seen: dict[str, int] = {}
    for _ in range(n_random):
        d = int(rng.integers(1, 5))
        idx = rng.choice(amb9.num_points, size=d + 1, replace=False)
        u = projgeom.span(amb9, *[int(i) for i in idx])
        dims_seen[str(u.dim)] = dims_seen.get(str(u.dim), 0) + 1
        if len(spread9.b_of(u)) % 3 != 1:
            bad_mod += 1
        if u.dim == 2:
            try:
                blocking.count_one_point_elements(spread9, u)
            except AssertionFailed:
                bad_bound += 1
    checks.append(_check(
        f"{n_random} random subspaces of PG(5,3): |B(U)| = 1 mod 3",
        bad_mod == 0 and bad_bound == 0,
        mod_violations=bad_mod, bound_violations=bad_bound,
        dims_sampled=dims_seen, seed=seed,
    ))
    return _finish("spread", checks, t0)


# -- criterion 8: companion construction -------------------------------------------------


def suite_companion() -> SuiteResult:
    t0 = time.time()
    checks = []
    for p, h in [(2, 2), (3, 2)]:
        q = p**h
        spread = desarguesian_spread(p, h, 2)
        u = blocking.first_baer_plane(spread)
        rep = blocking.companion_blocking_set(spread, u)
        b, bp = rep.b, rep.b_prime
        prof_b = blocking.line_profile(b, p)
        prof_bp = blocking.line_profile(bp, p)
        checks.append(_check(
            f"companion of Baer subplane PG(2,{q})",
            rep.two_mod_p and len(bp) % p == 1 % p and blocking.is_minimal_blocking(bp)
            and prof_b.holds() and prof_bp.holds(),
            size_b=len(b), size_b_prime=len(bp), intersection=len(rep.intersection),
            two_mod_p=rep.two_mod_p, profiles_hold=prof_b.holds() and prof_bp.holds(),
        ))
        # the full-space code must not contain the blocking set's vector
        space = spread.source
        inc = space.incidence.astype(np.int64)
        in_c = fplinalg.row_member(b.incidence_vector(), inc, p)
        checks.append(_check(
            f"Baer subplane vector not in C(PG(2,{q}))", not in_c, in_code=in_c,
        ))
    return _finish("companion", checks, t0)


# -- criterion 9: brute-force lemma scans ---------------------------------------------------


def _scan_mask(space, mask: int):
    """Per-subset lemma checks; returns a record when the subset is relevant
    (a violation, or a classified set the aggregate step needs)."""
    cache = line_cache(space)
    q = space.field.q
    p = space.field.p
    n = space.n
    sizes = [(m & mask).bit_count() for m in cache.masks]
    npts = mask.bit_count()
    out = {}
    # 3q lemma: any set spanning dim >= 3 with the secant/tangent separation
    if n >= 3 and 4 <= npts < 3 * q:
        pts = [i for i in range(space.num_points) if (mask >> i) & 1]
        sep = True
        for Q in range(space.num_points):
            if (mask >> Q) & 1:
                continue
            has_sec = has_tan = False
            for l in cache.point_lines[Q]:
                if sizes[l] >= 2:
                    has_sec = True
                elif sizes[l] == 1:
                    has_tan = True
            if has_sec and has_tan:
                sep = False
                break
        if sep:
            coords = space.points[pts].astype(np.int64)
            _, rank, _ = projgeom.gfq_rref(coords, space.field)
            if rank - 1 >= 3:
                out["lem_3q_violation"] = npts
    if not all(sizes):
        return out or None
    # blocking from here on
    tangents = [0] * space.num_points
    pts = [i for i in range(space.num_points) if (mask >> i) & 1]
    for P in pts:
        tangents[P] = sum(1 for l in cache.point_lines[P] if sizes[l] == 1)
    s = (q ** (n - 1) + theta(q, n - 1) - 1) - npts
    if s >= 0:
        bad = [P for P in pts if 1 <= tangents[P] <= s]
        if bad:
            out["tangent_bound_violation"] = {"size": npts, "s": s, "points": bad}
    if npts < q ** (n - 1) + theta(q, n - 1):
        ess = [P for P in pts if tangents[P] >= 1]
        emask = 0
        for P in ess:
            emask |= 1 << P
        esizes = [(m & emask).bit_count() for m in cache.masks]
        if all(esizes):
            minimal = all(
                any(esizes[l] == 1 for l in cache.point_lines[P]) for P in ess
            )
            if not minimal:
                out["unique_reduction_violation"] = npts
        else:
            out["unique_reduction_violation"] = npts
    minimal = all(tangents[P] >= 1 for P in pts)
    if minimal and all(sz % p == 1 for sz in sizes):
        out["one_mod_p_minimal"] = mask
    if minimal:
        full = [
            P for P in pts
            if all(sizes[l] == 1 or sizes[l] == q + 1 for l in cache.point_lines[P])
        ]
        bound = p ** (n - 1) - p ** (n - 2) + 1  # p^N - p^(N-1) + 1 with N = n-1 (h = 1)
        if len(full) >= bound:
            out["many_full_line_points"] = mask
    return out or None


def suite_lemmas(workers: int = 1) -> SuiteResult:
    t0 = time.time()
    checks = []
    budget = SearchBudget(workers=workers)
    for p, n in [(3, 2), (2, 3)]:
        space = projective_space(p, 1, n)
        records = wsearch.subset_scan(space, _scan_mask, budget)
        tangent_viol = [r["tangent_bound_violation"] for r in records if "tangent_bound_violation" in r]
        reduction_viol = [r["unique_reduction_violation"] for r in records if "unique_reduction_violation" in r]
        lem3q_viol = [r["lem_3q_violation"] for r in records if "lem_3q_violation" in r]
        one_mod = {r["one_mod_p_minimal"] for r in records if "one_mod_p_minimal" in r}
        many_full = {r["many_full_line_points"] for r in records if "many_full_line_points" in r}
        hyp_masks = set()
        for i in range(space.num_hyperplanes):
            m = 0
            for x in space.hyperplane_points(i):
                m |= 1 << int(x)
            hyp_masks.add(m)
        label = f"PG({n},{p})"
        checks.append(_check(
            f"{label}: essential points have > s tangents", not tangent_viol,
            violations=len(tangent_viol),
        ))
        checks.append(_check(
            f"{label}: unique reduction below q^(n-1)+theta", not reduction_viol,
            violations=len(reduction_viol),
        ))
        checks.append(_check(
            f"{label}: minimal + 1 mod p lines => hyperplane",
            one_mod == hyp_masks,
            classified=len(one_mod), hyperplanes=len(hyp_masks),
        ))
        checks.append(_check(
            f"{label}: >= p^N-p^(N-1)+1 full-line points => hyperplane",
            many_full <= hyp_masks,
            classified=len(many_full), all_hyperplanes=bool(many_full <= hyp_masks),
            hypothesis_q_above_2=p > 2,
        ))
        if n >= 3:
            checks.append(_check(
                f"{label}: secant/tangent separation + dim >= 3 => size >= 3q",
                not lem3q_viol, violations=len(lem3q_viol),
            ))
    return _finish("lemmas", checks, t0, workers)


# -- criterion 10: counting identities and bounds ---------------------------------------------


def suite_identities() -> SuiteResult:
    t0 = time.time()
    checks = []
    sets: list[tuple[str, PointSet]] = []
    for p, h, n in [(3, 1, 2), (2, 1, 3), (3, 2, 2)]:
        space = projective_space(p, h, n)
        sets.append((f"hyperplane PG({n},{p**h})",
                     PointSet.from_indices(space, space.hyperplane_points(0))))
    for p, h in [(2, 2), (2, 3), (3, 2)]:
        rs = blocking.redei_blocking_set(field(p, h), 1)
        sets.append((f"redei q={p**h}", rs.points))
    for p, h in [(2, 2), (3, 2)]:
        bc = blocking.baer_cone(projective_space(p, h, 2), -1)
        sets.append((f"baer subplane PG(2,{p**h})", bc.points))
    bc = blocking.baer_cone(projective_space(2, 2, 3), 0)
    sets.append(("baer cone PG(3,4)", bc.points))
    for label, ps in sets:
        space = ps.space
        p, q, n = space.field.p, space.field.q, space.n
        me = blocking.max_exponent(ps)
        prof = blocking.line_profile(ps, p**me.e)
        detail = {
            "size": len(ps), "e": me.e, "e_divides_h": me.divides_h,
            "one_mod_E": prof.one_mod_E,
            "identities": {k: v["holds"] for k, v in prof.identities.items()},
        }
        ok = prof.holds() and prof.one_mod_E and me.divides_h
        lo, hi = theta(q, n - 1), 2 * q ** (n - 1)
        if lo < len(ps) < hi:
            br = blocking.bounds(q, n, me.e)
            detail["bracket"] = [str(br.lower), str(br.upper)]
            detail["upper_applicable"] = br.upper_applicable
            ok = ok and br.brackets(len(ps))
        checks.append(_check(f"profile identities: {label}", ok, **detail))
    br = blocking.bounds(9, 2, 1)
    checks.append(_check(
        "bound report (q=9,n=2,e=1) brackets 13",
        br.brackets(13) and not br.upper_applicable,
        lower=str(br.lower), upper=str(br.upper), upper_applicable=br.upper_applicable,
    ))
    return _finish("identities", checks, t0)


# -- criterion 11: Table 1 --------------------------------------------------------------------


def suite_table1() -> SuiteResult:
    t0 = time.time()
    rep = wsearch.table1_report()
    rows = {r["q"]: r for r in rep.result["rows"]}
    checks = []
    expected_exact = {2: 4, 3: 6, 4: 6, 5: 10, 7: 14, 8: 10}
    for q, d in sorted(expected_exact.items()):
        row = rows.get(q)
        ok = row is not None and row.get("d") == d and row["consistent"]
        checks.append(_check(f"table row q={q}: d = {d}", ok, row=row))
    for q, (lo, hi) in sorted({9: ("12", 15), 49: ("85", 91), 121: ("210", 231)}.items()):
        row = rows.get(q)
        ok = (row is not None and str(row.get("lower")) == lo and row.get("upper") == hi
              and row["consistent"])
        checks.append(_check(f"table row q={q}: {lo} <= d <= {hi}", ok, row=row))
    for q, w in [(4, 6), (8, 10), (9, 15)]:
        row = rows.get(q) or {}
        cert = row.get("certificate")
        ok = cert is not None and cert["weight"] == w and row.get("certificate_matches_upper", False)
        checks.append(_check(f"upper certificate q={q}: weight {w}", ok, certificate=cert))
    row49 = rows.get(49, {})
    disc = row49.get("discrepancy")
    checks.append(_check(
        "p=7 rounding discrepancy surfaced",
        disc is not None and disc["plane_bound"] != disc["general_bound"],
        discrepancy=disc,
    ))
    return _finish("table1", checks, t0)


SUITES = {
    "dimensions": suite_dimensions,
    "min_weights": suite_min_weights,
    "hull": suite_hull,
    "gaps": suite_gaps,
    "dual": suite_dual,
    "redei": suite_redei,
    "spread": suite_spread,
    "companion": suite_companion,
    "lemmas": suite_lemmas,
    "identities": suite_identities,
    "table1": suite_table1,
}

_WORKER_SUITES = {"dual", "lemmas"}


def run_suite(name: str, workers: int = 1, **kwargs) -> SuiteResult:
    if name not in SUITES:
        from .errors import UsageError

        raise UsageError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    if name in _WORKER_SUITES:
        return fn(workers=workers, **kwargs)
    return fn(**kwargs)
