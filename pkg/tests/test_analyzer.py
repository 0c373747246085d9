import pytest

from agqss.core.errors import ConsistencyError, SchemeParamsError
from agqss.models.funcfield import CurveModel
from agqss.models.gf import FieldSpec
from agqss.models.scheme import SchemeParams, build, thresholds
from agqss.sharing import analyzer
from agqss.sharing.analyzer import (
    AccessClass,
    AccessReport,
    SubsetClass,
    all_subsets,
    analyze,
    classify_all,
    strong_security_map,
    uniform_strong_security,
)
from agqss.sharing.qsim import CheckMode, forbidden_oracle, strong_security_oracle

F, M, Q = AccessClass.forbidden, AccessClass.intermediate, AccessClass.qualified


@pytest.fixture(scope="module")
def report_a(instance_a):
    return analyze(instance_a, CheckMode.both)


@pytest.fixture(scope="module")
def report_rs(instance_rs):
    return analyze(instance_rs, CheckMode.both)


def test_all_subsets_order():
    assert all_subsets(3) == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert len(all_subsets(6)) == 64


def test_instance_a_counts(report_a):
    counts = report_a.counts_by_size()
    assert counts[0] == {"qualified": 0, "intermediate": 0, "forbidden": 1}
    assert counts[1] == {"qualified": 0, "intermediate": 0, "forbidden": 6}
    assert counts[2] == {"qualified": 0, "intermediate": 3, "forbidden": 12}
    assert counts[3] == {"qualified": 0, "intermediate": 20, "forbidden": 0}
    assert counts[4] == {"qualified": 12, "intermediate": 3, "forbidden": 0}
    assert counts[5] == {"qualified": 6, "intermediate": 0, "forbidden": 0}
    assert counts[6] == {"qualified": 1, "intermediate": 0, "forbidden": 0}


def test_instance_a_boundaries(report_a):
    assert report_a.forbidden_up_to == 1
    assert report_a.qualified_from == 5
    assert len(report_a.exceptional()) == 24
    assert report_a.subsets(M)[:3] == [(0, 1), (2, 3), (4, 5)]
    assert report_a.klass([5, 4, 0, 1]) is M
    assert report_a.klass([0, 2, 4, 5]) is Q


def test_instance_a_soundness(report_a):
    flags = report_a.soundness()
    assert flags == {
        "qualified_bound": True,
        "forbidden_bound": True,
        "monotone": True,
        "paths_agree": True,
        "strong_bound": True,
        "strong_monotone": True,
    }
    assert report_a.ok
    assert report_a.paths_agree is True


def test_instance_a_rows_carry_both_paths(report_a):
    for row in report_a.rows:
        assert row.fast is row.klass
        assert row.oracle is row.klass


def test_instance_a_strong_map(report_a):
    strong = report_a.strong
    assert len(strong.rows) == 4 * 64
    assert not strong.lookup([0, 1], [0, 1])
    assert strong.lookup([1, 0], [2, 0])
    assert strong.counterexamples == []
    for row in strong.rows:
        if row.I == (0, 1):
            assert row.secure == (report_a.klass(row.J) is F)
        if row.I == ():
            assert row.secure
        assert row.fast == row.oracle


def test_instance_a_strong_summary(report_a):
    summary = {s.i_bar_size: s for s in report_a.strong.summary()}
    assert summary[0].bound == 1
    assert summary[0].secure_up_to == 1
    assert summary[1].bound == 2
    assert summary[1].secure_up_to >= 2
    assert summary[2].secure_up_to == 6


def test_instance_a_strong_by_size(report_a):
    by_size = report_a.strong.by_bar_size()
    assert len(by_size) == 3 * 64
    for row in by_size:
        if row.i_bar_size == 0:
            assert row.secure == (report_a.klass(row.J) is F)
        if row.i_bar_size == 2:
            assert row.secure
        if row.within_bound:
            assert row.secure
    one = {row.J: row.secure for row in by_size if row.i_bar_size == 1}
    for J, secure in one.items():
        expected = all(report_a.strong.lookup(I, J) for I in [(0,), (1,)])
        assert secure == expected


def test_uniform_strong_security(report_a, report_rs):
    assert not uniform_strong_security(report_a, report_a.strong)
    assert uniform_strong_security(report_rs, report_rs.strong)


def test_rs_report(report_rs):
    for row in report_rs.rows:
        assert row.klass is (F if len(row.J) <= 1 else Q)
    assert report_rs.exceptional() == []
    assert report_rs.ok


def test_toy_classification(toy):
    report = classify_all(toy, CheckMode.both)
    assert [r.klass for r in report.rows] == [F, M, M, Q]
    assert report.forbidden_up_to == 0
    assert report.qualified_from == 2
    assert report.exceptional() == []


def test_no_strong_sweep(instance_rs):
    report = analyze(instance_rs, CheckMode.fast, strong=False)
    assert report.strong is None
    assert "strong_bound" not in report.soundness()


def test_instance_b_fast(instance_b):
    report = classify_all(instance_b, CheckMode.fast)
    assert len(report.rows) == 128
    assert report.paths_agree is None
    assert report.forbidden_up_to >= 2
    assert report.qualified_from <= 5
    assert report.ok
    assert all(r.oracle is None for r in report.rows)


def test_instance_b_oracle_spot_check(instance_b):
    report = classify_all(instance_b, CheckMode.fast)
    sample = all_subsets(7)[::6][:20]
    assert len(sample) == 20
    for J in sample:
        fast_forbidden = report.klass(J) is F
        assert forbidden_oracle(instance_b, J, cap=16384) == fast_forbidden


def test_instance_b_strong_bound(instance_b):
    strong = strong_security_map(instance_b, CheckMode.fast)
    assert len(strong.rows) == 2 * 128
    assert strong.counterexamples == []
    assert strong.bound_holds
    assert strong.monotone


def test_instance_b_strong_oracle_spot_check(instance_b):
    strong = strong_security_map(instance_b, CheckMode.fast)
    sample = all_subsets(7)[::16]
    assert len(sample) == 8
    for I in [(), (0,)]:
        for J in sample:
            assert strong_security_oracle(instance_b, I, J, cap=16384) == strong.lookup(I, J)


def test_strong_map_fast_only(instance_rs):
    strong = strong_security_map(instance_rs, CheckMode.fast)
    assert all(r.oracle is None for r in strong.rows)
    assert strong.bound_holds
    assert strong.monotone


def test_too_many_shares():
    curve = CurveModel.rational(FieldSpec.default(2, 4))
    cp = build(SchemeParams.with_default_places(curve, 1, 13, 1))
    with pytest.raises(SchemeParamsError, match="n <= 12"):
        classify_all(cp, CheckMode.fast)
    with pytest.raises(SchemeParamsError):
        strong_security_map(cp, CheckMode.fast)


def test_threaded_sweep_matches(instance_a, monkeypatch):
    sequential = classify_all(instance_a, CheckMode.fast)
    monkeypatch.setenv("AGQSS_THREADS", "4")
    analyzer.get_settings.cache_clear()
    threaded = classify_all(instance_a, CheckMode.fast)
    assert [(r.J, r.klass) for r in threaded.rows] == [(r.J, r.klass) for r in sequential.rows]


def test_paths_disagreement(instance_rs, monkeypatch):
    monkeypatch.setattr(analyzer, "forbidden_oracle", lambda cp, J, cap=None: len(J) == 0)
    with pytest.raises(ConsistencyError, match="disagree"):
        classify_all(instance_rs, CheckMode.both)


def test_qualified_and_forbidden(instance_rs, monkeypatch):
    monkeypatch.setattr(analyzer, "forbidden_fast", lambda cp, J: True)
    with pytest.raises(ConsistencyError, match="both qualified and forbidden"):
        classify_all(instance_rs, CheckMode.fast)


def test_soundness_flags_catch_bad_classification(toy):
    rows = [
        SubsetClass((), F),
        SubsetClass((0,), Q),
        SubsetClass((1,), M),
        SubsetClass((0, 1), M),
    ]
    report = AccessReport(2, 1, thresholds(toy.params), CheckMode.fast, rows)
    flags = report.soundness()
    assert not flags["monotone"]
    assert not flags["qualified_bound"]
    assert flags["forbidden_bound"]
    assert report.qualified_bound_counterexamples == [(0, 1)]
    assert not report.ok
