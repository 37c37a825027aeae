"""End-to-end acceptance checks, one test per shipped guarantee.

Each test exercises the public pipeline (scenario documents, engines,
artifact emission) at full replicate budgets and asserts the guarantee at
its stated tolerance, so `pytest -v` prints one pass/fail line per
guarantee.
"""

import functools
import time

import numpy as np

from singh_audit.presets import PRESETS
from singh_audit.runner import run_analysis, run_preset
from singh_audit.scenario import parse_scenario
from singh_audit.singh_engine import (
    SinghBand,
    TargetSpec,
    dkw_epsilon,
    eval_curve,
    exact_singh_curve,
    max_coverage_deficit,
    singh_curve,
)
from singh_audit.special_math import SeededStream
from singh_audit.structures import StructureSpec

GRID = np.linspace(0.0, 1.0, 1001)
EPS_10K = dkw_epsilon(10_000)


@functools.cache
def analysis(doc: str):
    return run_analysis(parse_scenario(doc))


def preset_doc(preset: str, name: str | None = None) -> str:
    docs = {parse_scenario(d).name: d for d in PRESETS[preset].documents}
    return docs[name or preset]


def ks_distance(curve) -> float:
    # Exact sup distance between the empirical CDF and the diagonal.
    s = curve.required
    ranks = np.arange(1, s.size + 1, dtype=np.float64)
    return float(max((ranks / curve.m - s).max(), (s - (ranks - 1.0) / curve.m).max()))


def straddle_margins(band: SinghBand, eps: float) -> tuple[float, float]:
    lo = eval_curve(band.lower_curve, GRID)
    up = eval_curve(band.upper_curve, GRID)
    return float((lo - (GRID - eps)).min()), float(((GRID + eps) - up).min())


def test_01_t_pivot_curve_is_uniform_favourable_and_fast():
    started = time.perf_counter()
    result, report = run_analysis(parse_scenario(preset_doc("fig1")))
    elapsed = time.perf_counter() - started
    assert ks_distance(result) <= 0.0165
    assert report.classification == "favourable"
    assert elapsed < 5.0


def test_02_monte_carlo_agrees_with_exact_enumeration():
    structures = (
        (StructureSpec("jeffreys"), "bernoulli"),
        (StructureSpec("clopper_pearson"), "bernoulli"),
        (StructureSpec("scaled_cbox", 0.5), "bernoulli"),
        (StructureSpec("scaled_cbox", 1.0), "bernoulli"),
        (StructureSpec("scaled_cbox", 3.0), "bernoulli"),
        (StructureSpec("chebyshev_ucl"), "scaled_bernoulli"),
    )
    failures = 0
    combos = 0
    for structure, family in structures:
        for n in (5, 10, 20, 30):
            for rate in (0.05, 0.2, 0.4, 0.5):
                if family == "bernoulli":
                    target = TargetSpec.bernoulli(rate)
                else:
                    target = TargetSpec.scaled_bernoulli(rate, 2.0)
                exact = exact_singh_curve(structure, target, n)
                mc = singh_curve(structure, target, n, 10_000, SeededStream(20_000 + combos))
                if isinstance(exact, SinghBand):
                    pairs = ((exact.lower_curve, mc.lower_curve), (exact.upper_curve, mc.upper_curve))
                else:
                    pairs = ((exact, mc),)
                worst = max(
                    float(np.abs(eval_curve(e, GRID) - eval_curve(s, GRID)).max())
                    for e, s in pairs
                )
                failures += worst > EPS_10K
                combos += 1
    assert combos == 96
    assert failures / combos <= 0.02


def test_03_posterior_used_as_confidence_undercovers_by_pinned_margins():
    # Exact-enumeration deficits, frozen before the Monte Carlo path existed.
    pins = {
        0.1: 0.20667805,
        0.2: 0.14881041,
        0.3: 0.12961068,
        0.4: 0.12410336,
        0.5: 0.12204698,
    }
    deficits = []
    for k, (theta, pin) in enumerate(sorted(pins.items())):
        curve = singh_curve(
            StructureSpec("jeffreys"), TargetSpec.bernoulli(theta), 10, 10_000,
            SeededStream(3101 + k),
        )
        deficit = max_coverage_deficit(curve)
        assert abs(deficit - pin) <= 0.015
        deficits.append(deficit)
    assert max(deficits) >= 0.05


def test_04_binomial_cbox_straddles_without_crossing():
    local, _ = analysis(preset_doc("fig3"))
    lo_margin, up_margin = straddle_margins(local, EPS_10K)
    assert lo_margin >= 0.0
    assert up_margin >= 0.0
    swept, _ = analysis(preset_doc("fig8"))
    lo_margin, up_margin = straddle_margins(swept, dkw_epsilon(1000))
    assert lo_margin >= 0.0
    assert up_margin >= 0.0


def test_05_imprecision_scale_orders_the_classifications():
    reports = {}
    for name in ("fig7_c05", "fig7_c1", "fig7_c3"):
        _, report = analysis(preset_doc("fig7", name))
        reports[name] = report
    assert reports["fig7_c05"].classification == "overconfident"
    assert reports["fig7_c1"].classification == "valid"
    assert reports["fig7_c3"].classification == "conservative"
    assert reports["fig7_c3"].conservatism_area > reports["fig7_c1"].conservatism_area > 0.0


def test_06_next_draw_band_straddles_and_steps_on_the_data_grid():
    band, _ = analysis(preset_doc("fig4"))
    lo_margin, up_margin = straddle_margins(band, EPS_10K)
    assert lo_margin >= 0.0
    assert up_margin >= 0.0
    # Every stored value is an exact multiple of 1/(n+1) with n = 10.
    levels = {k / 11.0 for k in range(12)}
    stored = np.concatenate((band.lower_curve.required, band.upper_curve.required))
    assert all(value in levels for value in stored)


def test_07_moment_bound_coverage_case_study():
    curve, _ = analysis(preset_doc("fig9", "fig9_n5_p020"))
    assert abs(eval_curve(curve, 0.95) - 0.67232) <= 0.015

    skewed, report = analysis(preset_doc("fig9", "fig9_n30_p005"))
    assert report.classification == "overconfident"
    assert 0.95 - eval_curve(skewed, 0.95) >= 0.16463861 - 0.015

    symmetric, _ = analysis(preset_doc("fig9", "fig9_n30_p050"))
    head = GRID[GRID <= 0.95]
    assert float((head - eval_curve(symmetric, head)).max()) <= EPS_10K


def test_08_band_area_shrinks_with_sample_size():
    areas = []
    for name in ("fig5_n10", "fig5_n50", "fig5_n250"):
        _, report = analysis(preset_doc("fig5", name))
        areas.append(report.conservatism_area)
    assert areas[0] > areas[1] > areas[2]


def _assert_csv_matches_result(path, result) -> None:
    lines = path.read_text(encoding="utf-8").splitlines()
    band = isinstance(result, SinghBand)
    judged = result.lower_curve if band else result
    assert lines[0] == ("alpha,coverage_lower,coverage_upper" if band else "alpha,coverage")
    assert lines[-1] == f"# never={judged.never_count}"
    for row in lines[1:-1]:
        cells = row.split(",")
        alpha = float(cells[0])
        if band:
            assert format(eval_curve(result.lower_curve, alpha), ".9g") == cells[1]
            assert format(eval_curve(result.upper_curve, alpha), ".9g") == cells[2]
        else:
            assert format(eval_curve(result, alpha), ".9g") == cells[1]


def test_09_preset_artifacts_are_deterministic_and_self_consistent(tmp_path):
    for preset_name, preset in sorted(PRESETS.items()):
        first = run_preset(preset_name, tmp_path / "a" / preset_name)
        second = run_preset(preset_name, tmp_path / "b" / preset_name)
        assert [p.name for p in first] == [p.name for p in second]
        for one, two in zip(first, second):
            assert one.read_bytes() == two.read_bytes(), one.name
        for doc in preset.documents:
            scenario = parse_scenario(doc)
            result, _ = analysis(doc)
            _assert_csv_matches_result(
                tmp_path / "a" / preset_name / f"{scenario.name}.csv", result
            )
