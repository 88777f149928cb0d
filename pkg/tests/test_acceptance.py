"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
that is echoed in the terminal summary (see conftest.py)."""

import math
import random
import statistics
import time

import numpy as np
import pytest

import oracles
from conftest import random_bipartite, record
from purebraid import appendix, bounds, curves, harness
from purebraid.cli import EXIT_VIOLATION, main
from purebraid.curves import Case, build_configuration, case2_row_ceilings, case2_row_sums, configuration_dilatation
from purebraid.pf import dilatation_from_mu, gram, max_row_sum, min_row_sum, pf_eigenvalue, residual, row_sums

# Frozen from the mpmath oracle: log of the larger root of x^2 - 166x + 1.
ENTROPY_2_2 = 5.111951496643704


@pytest.fixture(scope="module")
def sweep():
    curves._graph_dilatation.cache_clear()
    return harness.run_sweep(harness.SweepSpec())


def test_case1_exactness():
    name = "case-1 exactness"
    config = build_configuration(2, 2)
    N_ok = sorted(config.matrix.entries) == sorted([(6, 0), (0, 6), (8, 8)])
    M = gram(config.matrix)
    lo, hi = oracles.bisect_root(M.tolist(), 84, 224, steps=120)
    br = pf_eigenvalue(M)
    bracket_ok = br.lower <= 164 <= br.upper and br.width <= 1e-8 and lo <= 164 <= hi and float(hi - lo) < 1e-30
    est = dilatation_from_mu(br.upper_float)
    oracle_entropy = float(oracles.entropy(164))
    entropy_ok = abs(est.entropy - oracle_entropy) <= 1e-6 and abs(ENTROPY_2_2 - oracle_entropy) < 1e-15
    chain_ok = br.upper <= 3 * 8**2 < 7**4 * 1 - 2

    times = []
    for _ in range(51):
        t0 = time.perf_counter()
        c = build_configuration(2, 2)
        dilatation_from_mu(pf_eigenvalue(gram(c.matrix)).upper_float)
        times.append(time.perf_counter() - t0)
    runtime = statistics.median(times)
    ok = N_ok and bracket_ok and entropy_ok and chain_ok and runtime < 1e-3
    record(name, ok, f"mu in [{float(br.lower)!r}, {float(br.upper)!r}], entropy {est.entropy:.12f} "
                     f"(oracle {oracle_entropy:.12f}), mu <= 192 < 2399, median runtime {runtime * 1e3:.3f} ms")
    assert ok


def test_main_upper_certification(sweep):
    name = "main upper bound certification"
    over = []
    for r in sweep.results:
        cap = 4 * math.log(6) if r.n > 2 * r.g else 4 * math.log(math.ceil(2 * r.g / r.n)) + 4 * math.log(7)
        if r.error or not r.entropy <= cap:
            over.append((r.g, r.n, r.entropy, cap))
    odd = all(n % 2 == 1 for _, n, _, _ in over)
    ok = not over and not sweep.errors and sweep.elapsed < 10
    sample = ", ".join(f"({g},{n}) {e:.4f}>{c:.4f}" for g, n, e, c in over[:4])
    record(name, ok, f"{sweep.grid_size} points in {sweep.elapsed:.2f} s, {len(over)} over the bound"
                     + (f" (all odd n: {odd}; e.g. {sample})" if over else ""))
    assert ok


def test_case2_row_sums():
    name = "case-2 row-sum identities"
    mismatched, over = [], []
    points = 0
    for g in range(2, 65):
        for n in range(2, 2 * g + 17):
            if curves.case_for(g, n) is not Case.CASE2:
                continue
            points += 1
            config = build_configuration(g, n)
            m = len(config.subsurface_genera)
            rs = row_sums(config.gram)
            closed = case2_row_sums(config)
            if rs != closed["alpha"] + closed["c"]:
                mismatched.append((g, n))
            alpha_cap, c_cap = case2_row_ceilings(g, n)
            if max(rs[:m]) > alpha_cap or max(rs[m:]) > c_cap:
                over.append((g, n))
    ok = not mismatched and not over
    detail = f"{points} points, {len(mismatched)} closed-form mismatches, {len(over)} above the quoted ceilings"
    if over:
        detail += f" (all odd n: {all(n % 2 for _, n in over)}; e.g. {over[:3]})"
    record(name, ok, detail)
    assert ok


def test_case3_constant(sweep):
    name = "case-3 constant"
    rows = [r for r in sweep.results if r.case == "case3"]
    sums = {r.max_row_sum for r in rows}
    entropy_ok = all(r.entropy <= math.log(162) for r in rows) and math.log(162) < 4 * math.log(6)
    noted = any("152" in note and "160" in note for note in sweep.discrepancies)
    ok = sums == {160} and entropy_ok and noted
    record(name, ok, f"{len(rows)} configurations, max row sums {sorted(sums)}, "
                     f"max entropy {max(r.entropy for r in rows):.6f} <= log 162, 152 discrepancy recorded: {noted}")
    assert ok


def test_ivanov_identity():
    name = "ivanov/AT identity"
    bad = []
    for g in range(2, 101):
        i = 2 * g - 1
        lower, upper = bounds.ivanov_bounds(bounds.ivanov_input((3, -3), (i, i), (i, i), 0))
        if not (type(upper) is int and upper == 24 * g * g - 24 * g + 6):
            bad.append(g)
    record(name, not bad, f"g in [2,100], mismatches {bad}")
    assert not bad


def test_constant_lower_bound():
    name = "constant lower bound"
    bad = []
    count = 0
    for g in range(2, 513):
        for n in range(1, 2 * g + 65):
            count += 1
            chi = 2 - 2 * g - n
            kappa = bounds.kappa_lower(g, n)
            if not (bounds.alm_lower(kappa, chi) >= 0.000155 and 2 * (max(2 * g, n - 1) + 1) > 2 * g + n - 2):
                bad.append((g, n))
    record(name, not bad, f"{count} (g,n) pairs, failures {bad[:5]}")
    assert not bad


def test_diameter_bound_cross_module(sweep):
    name = "diameter lower bound cross-module identity"
    worst = 0.0
    worst_literal = 0.0
    for g in range(6, 10**4 + 1):
        core = math.log((g - 2) / 3) - 2
        for n in range(1, 101):
            via_appendix = appendix.entropy_lower_from_diameter(g, n)
            direct = bounds.thm61_lower(g, n, "proof")
            worst = max(worst, abs(via_appendix - direct))
            if core >= 0:
                literal = math.log(1 + (core / (40 * 2)) / (2 * n)) / 3
                worst_literal = max(worst_literal, abs(literal - direct))
    below = [(r.g, r.n) for r in sweep.results
             if r.thm61_proof is not None and not r.error and not r.thm61_proof <= r.entropy]
    checked = sum(1 for r in sweep.results if r.thm61_proof is not None)
    ok = worst <= 1e-12 and worst_literal <= 1e-12 and not below
    record(name, ok, f"max |appendix - bounds| {worst:.2e}, max |literal - bounds| {worst_literal:.2e} "
                     f"(literal used where log((g-2)/3) >= 2, both clamp to 0 below), "
                     f"thm61 <= entropy at {checked - len(below)}/{checked} grid points")
    assert ok


def test_appendix_numeric_checks():
    name = "appendix numeric checks"
    angle = appendix.angle_from_sides(math.log(4), math.log(4), math.log(2))
    side = appendix.side_from_sides_angle(math.log(2), math.log(2), math.pi / 9)
    trig_ok = angle > math.pi / 9 + 1e-9 and side >= 0.25 + 1e-9
    iso_ok = True
    for p in np.logspace(-4, 6, 400):
        s1, s2, s3 = appendix.isoperimetric_stages(float(p))
        iso_ok &= s1 <= s2 * (1 + 1e-12) and s2 <= s3 * (1 + 1e-12)
    bad = []
    for g in range(6, 10**6 + 1):
        d = appendix.min_covering_radius(g)
        x = math.log((g - 2) / 3)
        diam = appendix.diameter_lower(g).lower_bound
        if not (appendix.ball_size_bound(d) > g - 1 and d >= x
                and appendix.hyperbolic_length_lower(d) >= diam
                and diam == appendix.hyperbolic_length_lower(x)):
            bad.append(g)
    ok = trig_ok and iso_ok and not bad
    record(name, ok, f"angle {angle:.6f} > {math.pi / 9:.6f}, segment {side:.6f} >= 0.25, "
                     f"isoperimetric chain on 400-point log grid: {iso_ok}, ball/diameter failures for g in (5,1e6]: {len(bad)}")
    assert ok


def test_pf_property_suite():
    name = "PF engine property suite"
    rng = random.Random(500)
    worst_res = 0.0
    worst_id = 0.0
    outside = 0
    for _ in range(500):
        M = gram(random_bipartite(rng, 8, 50))
        br = pf_eigenvalue(M)
        if not (min_row_sum(M) <= br.lower <= br.upper <= max_row_sum(M)):
            outside += 1
        worst_res = max(worst_res, residual(M, br))
        est = dilatation_from_mu(br.upper_float)
        worst_id = max(worst_id, abs(est.dilatation + 1 / est.dilatation - (2 + est.mu)))
    ok = outside == 0 and worst_res <= 1e-8 and worst_id <= 1e-10
    record(name, ok, f"500 configurations: {outside} brackets outside row sums, "
                     f"max residual {worst_res:.2e}, max |lambda + 1/lambda - (2 + mu)| {worst_id:.2e}")
    assert ok


def test_fault_injection(capsys):
    name = "fault-injection self-test"
    code = main(["verify", "--g-max", "8", "--perturb-upper"])
    err = capsys.readouterr().err
    ok = code == EXIT_VIOLATION and "VIOLATION" in err
    record(name, ok, f"exit code {code}, {err.count('VIOLATION')} violation lines shown")
    assert ok
