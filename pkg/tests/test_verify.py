"""The verification suites themselves: report plumbing, determinism, the
independent rational oracle, and the coverage manifest."""

from fractions import Fraction

import pytest

from octanet.laurent import VarTable, lp_eval_rational
from octanet.network import TooLarge
from octanet.surface import Window, flat_surface, generic_data
from octanet.tsystem import TSystemOracle
from octanet.verify import (
    COVERAGE,
    Report,
    SUITES,
    _FractionOracle,
    check_boundary_emergence,
    check_equivalence,
    check_identities,
    check_periodicity,
    check_positivity,
    run_suite,
)


# -- report plumbing ----------------------------------------------------------------


def test_report_counts_and_text():
    rep = Report("demo")
    rep.add("first thing", "x", "x", True)
    rep.add("second thing", "x", "y", False)
    assert (rep.passed, rep.failed, rep.ok) == (1, 1, False)
    txt = rep.text()
    lines = txt.splitlines()
    assert lines[0] == "suite: demo"
    assert lines[1] == "  PASS first thing"
    assert lines[2] == "  FAIL second thing (expected x, got y)"
    assert lines[3] == "summary: 1 passed, 1 failed"


def test_report_record_fields():
    rep = Report("demo")
    rep.check("a claim", True)
    rec = rep.record()
    assert set(rec) == {"suite", "passed", "failed", "cases"}
    assert rec["cases"][0] == {
        "description": "a claim",
        "expected": "holds",
        "got": "holds",
        "ok": True,
    }


def test_run_suite_dispatch():
    rep = run_suite("periodicity", r=1, ell=1)
    assert rep.ok
    with pytest.raises(ValueError):
        run_suite("no-such-suite")


# -- suite results ------------------------------------------------------------------


def test_identity_battery_small():
    rep = check_identities(r_max=3)
    assert rep.ok
    assert rep.failed == 0


def test_periodicity_symbolic():
    rep = check_periodicity(1, 2)
    assert "symbolic" in rep.suite
    assert rep.ok
    minimal = [c for c in rep.cases if "minimal" in c.description]
    assert minimal and minimal[0].got == "10"


def test_periodicity_rational_smoke():
    rep = check_periodicity(2, 3, mode="rational", seed=3)
    assert rep.ok
    assert all("(rational smoke)" in c.description for c in rep.cases)


def test_periodicity_auto_switches_to_rational():
    rep = check_periodicity(3, 3)
    assert "rational" in rep.suite
    assert rep.ok


def test_periodicity_guards():
    with pytest.raises(ValueError):
        check_periodicity(1, 1, k_span=4)
    with pytest.raises(TooLarge):
        check_periodicity(4, 2, mode="symbolic")


def test_positivity_suite():
    rep = check_positivity(seed=1)
    assert rep.ok


def test_equivalence_suite_small():
    rep = check_equivalence(seed=2, flat_count=8, mutated_count=3, truncated_count=2)
    assert rep.ok
    assert len(rep.cases) == 8 + 3 + 2 + 1  # + the path-counting case
    with pytest.raises(TooLarge):
        check_equivalence(flat_count=400)


def test_boundary_emergence_suite():
    for (r, ell) in ((1, 2), (2, 1)):
        rep = check_boundary_emergence(r, ell)
        assert rep.ok
    with pytest.raises(TooLarge):
        check_boundary_emergence(4, 4)


# -- determinism -----------------------------------------------------------------------


def test_reports_are_deterministic_under_a_seed():
    kw = dict(seed=7, flat_count=6, mutated_count=2, truncated_count=1)
    assert check_equivalence(**kw).record() == check_equivalence(**kw).record()
    assert (
        check_periodicity(2, 3, mode="rational", seed=11).record()
        == check_periodicity(2, 3, mode="rational", seed=11).record()
    )


# -- the independent rational oracle ---------------------------------------------------


def test_fraction_oracle_matches_hand_values():
    t1, t2 = Fraction(3), Fraction(5, 2)
    o = _FractionOracle(1, 2, {(1, 1): t1, (1, 2): t2})
    assert o.value(1, 1, 0) == t1
    assert o.value(1, 2, 1) == t2
    assert o.value(1, 1, 2) == (t2 + 1) / t1
    assert o.value(1, 2, 3) == (t1 + t2 + 1) / (t1 * t2)


def test_fraction_oracle_matches_the_symbolic_oracle():
    r, ell = 2, 2
    tb = VarTable()
    s = flat_surface("Restricted", Window(1, r, 1, ell), r=r, ell=ell)
    sym = TSystemOracle(s, generic_data(s, tb))
    data = {}
    images = {}
    for i in range(1, r + 1):
        for j in range(1, ell + 1):
            q = Fraction(2 * i + j, 2)
            data[(i, j)] = q
            images[next(iter(tb.poly("t[%d,%d]" % (i, j)).variables()))] = q
    frac = _FractionOracle(r, ell, data)
    for (i, j, k) in [(1, 1, 4), (2, 2, 6), (1, 2, 5), (2, 1, -3)]:
        assert lp_eval_rational(sym.value(i, j, k), images) == frac.value(i, j, k)


# -- coverage manifest -------------------------------------------------------------------


def test_every_tagged_behavior_is_exercised():
    reports = {
        "identities": check_identities(r_max=2),
        "periodicity": check_periodicity(1, 2),
        "positivity": check_positivity(),
        "equivalence": check_equivalence(flat_count=5, mutated_count=2, truncated_count=1),
        "boundary-emergence": check_boundary_emergence(1, 1),
    }
    assert set(reports) == set(SUITES)
    for tag, suite in sorted(COVERAGE.items()):
        hits = [c for c in reports[suite].cases if c.description.startswith(tag + ":")]
        assert hits, "tag %r never exercised by suite %r" % (tag, suite)
        assert all(c.ok for c in hits)
