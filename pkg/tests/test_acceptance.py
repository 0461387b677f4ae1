"""Exit criteria.  Run with ``pytest tests/test_acceptance.py``; a summary
line per criterion is printed at the end of the session."""
import itertools
import math
import subprocess
import sys
import time

import pytest

from computads.constructions import coequalizer, pair_into_product
from computads.core import compose, computad, enumerate_homs, find_isomorphism
from computads.counterexample import (VERDICT_NOT_PRESERVED, build_empty_target_objects,
                                      run_counterexample, run_counterexample_empty_target_variant)
from computads.multiset import Multiset, enumerate_pairings
from computads.oracle import (GeneratorBounds, check_coequalizer_up, check_product_up,
                              count_pairings_oracle, generate_computads)

from helpers import (over_quotient, paper_coequalizer, paper_pipeline, product_missing_cell,
                     product_with_duplicate)

# Hom-set search spaces for P at (6,2,2) reach 6^9 * 2^2; the default budget is 10^7.
ORACLE_BUDGET = 10**9


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


@pytest.mark.acceptance(1, "counterexample golden counts")
def test_golden_counts():
    report, elapsed = timed(run_counterexample)
    objs = report.objects
    axb = objs["AxB"]
    assert len(axb.cells2) == 9
    assert sorted((c.src, c.tgt) for c in axb.cells3) == sorted([
        (Multiset(["(a1,b1)", "(a2,b2)"]), Multiset(["(a3,b3)"])),
        (Multiset(["(a1,b2)", "(a2,b1)"]), Multiset(["(a3,b3)"])),
    ])
    assert objs["ExB"].stats() == (6, 0)
    assert len(objs["CxB"].cells3) == 1
    assert len(objs["P"].cells3) == 2
    assert elapsed < 1.0


@pytest.mark.acceptance(2, "non-preservation verdict and 3-cell merge")
def test_non_preservation():
    start = time.perf_counter()
    report = run_counterexample()
    p, cxb = report.objects["P"], report.objects["CxB"]
    assert find_isomorphism(p, cxb) is None
    assert report.verdict == VERDICT_NOT_PRESERVED
    comparison = report.morphisms["comparison"][0]
    assert len(p.cells3) == 2
    assert set(comparison.map3.values()) == {cxb.cells3[0].name}
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(3, "product universal property at bounds (3,1,2)")
def test_product_universal_property():
    o, _, prod_ab, _, _ = paper_pipeline()
    bounds = GeneratorBounds(3, 1, 2)
    report, elapsed = timed(check_product_up, o.A, o.B, prod_ab, bounds)
    print(report.to_text())
    assert report.passed and report.cones_checked > 0
    assert elapsed < 300

    four_case = computad("Y", ["y1", "y2", "y3"], [("e", ["y1", "y2"], ["y3"])])
    matches = [y for y in generate_computads(bounds) if find_isomorphism(four_case, y)]
    assert len(matches) == 1
    y = matches[0]
    cones = [(u, v) for u in enumerate_homs(y, o.A) for v in enumerate_homs(y, o.B)]
    assert len(cones) == 4
    # keep/keep and swap/swap give one cell, the mixed cases the other
    cells = {}
    for u, v in cones:
        e = y.cells3[0]
        src = sorted(e.src)
        key = (u.map2[src[0]] == "a1", v.map2[src[0]] == "b1")
        k = pair_into_product(u, v, prod_ab)
        assert compose(prod_ab.proj_left, k) == u and compose(prod_ab.proj_right, k) == v
        cells[key] = k.map3[e.name]
    assert cells[(True, True)] == cells[(False, False)]
    assert cells[(True, False)] == cells[(False, True)]
    assert cells[(True, True)] != cells[(True, False)]


@pytest.mark.acceptance(4, "coequaliser universal properties and sabotage fixtures")
def test_coequaliser_universal_properties():
    o, ce_c = paper_coequalizer()
    report_c, elapsed_c = timed(check_coequalizer_up, o.alpha1, o.alpha2, ce_c, GeneratorBounds(3, 2, 2))
    print(report_c.to_text())
    assert report_c.passed and report_c.cones_checked > 0
    assert elapsed_c < 600


@pytest.mark.acceptance(4, "coequaliser universal properties and sabotage fixtures")
def test_product_coequaliser_universal_property_full_bounds():
    _, _, _, a1x1, a2x1 = paper_pipeline()
    ce_p = coequalizer(a1x1, a2x1)
    report, elapsed = timed(check_coequalizer_up, a1x1, a2x1, ce_p, GeneratorBounds(6, 2, 2),
                            budget=ORACLE_BUDGET)
    print(report.to_text(), f"elapsed {elapsed:.1f}s")
    assert report.bounds == GeneratorBounds(6, 2, 2)
    assert report.passed and report.cones_checked > 0
    assert elapsed < 600


@pytest.mark.acceptance(4, "coequaliser universal properties and sabotage fixtures")
def test_sabotage_fixtures_fail():
    o, _, prod_ab, _, _ = paper_pipeline()
    bounds = GeneratorBounds(3, 1, 2)
    missing = check_product_up(o.A, o.B, product_missing_cell(prod_ab, "(f,g)#2"), bounds)
    duplicate = check_product_up(o.A, o.B, product_with_duplicate(prod_ab, "(f,g)#1"), bounds)
    over = check_coequalizer_up(o.alpha1, o.alpha2, over_quotient(o.alpha1, o.alpha2), GeneratorBounds(3, 2, 2))
    for report in (missing, duplicate, over):
        assert len(report.failures) >= 1


def _multisets(labels, max_size):
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(labels, size):
            yield Multiset(combo)


@pytest.mark.acceptance(5, "pairing enumeration equals the bijection oracle")
def test_pairing_oracle_equivalence():
    start = time.perf_counter()
    lefts = list(_multisets("abc", 5))
    rights = list(_multisets("xyz", 5))
    checked = 0
    for s, t in itertools.product(lefts, rights):
        assert len(enumerate_pairings(s, t)) == count_pairings_oracle(s, t)
        checked += 1
    assert checked == 56 * 56
    for n in range(6):
        s = Multiset(f"l{i}" for i in range(n))
        t = Multiset(f"r{i}" for i in range(n))
        assert len(enumerate_pairings(s, t)) == math.factorial(n)
    for s, t in itertools.product(lefts, rights):
        if s.size != t.size:
            assert enumerate_pairings(s, t) == []
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(6, "empty-target variant is not preserved either")
def test_empty_target_variant():
    o = build_empty_target_objects()
    f, g = o.A.cells3[0], o.B.cells3[0]
    # goldens from the bijection oracle, before looking at the pipeline
    axb_cells = count_pairings_oracle(f.src, g.src) * count_pairings_oracle(f.tgt, g.tgt)
    merged = Multiset(["[a1|a2]"] * 2)
    cxb_cells = count_pairings_oracle(merged, g.src) * count_pairings_oracle(Multiset(), g.tgt)
    assert (axb_cells, cxb_cells) == (2, 1)

    report, elapsed = timed(run_counterexample_empty_target_variant)
    assert len(report.objects["AxB"].cells3) == axb_cells
    assert len(report.objects["CxB"].cells3) == cxb_cells
    assert len(report.objects["P"].cells3) == 2
    assert report.verdict == VERDICT_NOT_PRESERVED
    assert elapsed < 1.0


@pytest.mark.acceptance(7, "CLI output is byte-identical across runs")
def test_determinism():
    cmd = [sys.executable, "-m", "computads", "paper"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert first.rstrip().endswith(b"VERDICT: coequaliser NOT preserved by - x B")
