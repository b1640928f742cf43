import json
from importlib import resources

import jsonschema
import pytest

from bmfeet import analysis
from bmfeet.analysis import SuiteError, run_suite, select_params, two_arc_partition
from bmfeet.fields import tower_for_q
from bmfeet.pedal import canonical_base, pedal_brute
from bmfeet.unital import Unital

from conftest import first_params


def schema(name):
    return json.loads(resources.files("bmfeet").joinpath(f"schemas/{name}.schema.json").read_text())


def test_suite_names():
    assert set(analysis.SUITES) == set(analysis.SUITE_FUNCS)
    with pytest.raises(SuiteError):
        run_suite("nope", 3)


@pytest.mark.parametrize("suite,q,kw", [
    ("unitals", 3, {}),
    ("closedform", 4, {}),
    ("theorem19", 3, {}),
    ("theorem24", 4, {"params": "sample:3", "bases": "sample:20", "seed": 2}),
    ("conicbm", 3, {}),
    ("lemma11", 5, {}),
    ("result3", 3, {}),
    ("lemma18", 5, {}),
    ("baer-conjecture", 3, {"params": "sample:2", "seed": 1}),
    ("bruckbose", 3, {"params": "sample:1", "bases": "sample:5", "seed": 4}),
])
def test_reports_validate(suite, q, kw):
    rep = run_suite(suite, q, **kw)
    d = json.loads(rep.to_json())
    jsonschema.validate(d, schema("report"))
    assert d["suite"] == suite and d["q"] == q
    assert d["scope"]["kind"] in ("exhaustive", "sampled")
    if "sample" in str(kw.get("params", "")) or "sample" in str(kw.get("bases", "")):
        assert d["scope"]["kind"] == "sampled"


def test_determinism_and_parallel():
    a = run_suite("theorem19", 5, params="sample:4", bases="sample:30", seed=9).to_json()
    b = run_suite("theorem19", 5, params="sample:4", bases="sample:30", seed=9).to_json()
    c = run_suite("theorem19", 5, params="sample:4", bases="sample:30", seed=9, jobs=2).to_json()
    assert a == b == c
    d = run_suite("theorem19", 5, params="sample:4", bases="sample:30", seed=10).to_json()
    assert d != a


def test_csv_mirrors_outcomes():
    rep = run_suite("closedform", 3)
    lines = rep.to_csv().strip().splitlines()
    assert len(lines) == len(rep.outcomes) + 1
    assert "alpha" in lines[0].split(",")


def test_baer_control_reaches_q_plus_1():
    rep = run_suite("baer-conjecture", 3, params="sample:1", seed=0)
    assert rep.summary["control"]["control_attains_q_plus_1"]


def test_failing_summary_gives_fail_verdict():
    # no valid pair at q = 3 has alpha a nonsquare and beta outside GF(3)
    rep = run_suite("lemma11", 3)
    assert rep.summary["implication_holds"]
    assert rep.summary["nonsquare_alpha_outside_subfield"] == 0
    assert rep.verdict == "fail" and not rep.passed


def test_parity_guards():
    with pytest.raises(SuiteError):
        run_suite("theorem19", 4)
    with pytest.raises(SuiteError):
        run_suite("theorem24", 5)
    with pytest.raises(SuiteError):
        run_suite("lemma11", 4)


def test_select_params():
    F = tower_for_q(3)
    allp, scope = select_params(F, "all-valid", False, 0)
    assert scope == {"params": "all-valid", "param_count": len(allp)}
    s1, sc = select_params(F, "sample:3", False, 5)
    s2, _ = select_params(F, "sample:3", False, 5)
    assert [p.key() for p in s1] == [p.key() for p in s2] and sc["seed"] == 5
    p = allp[0]
    ex, _ = select_params(F, (p.alpha, p.beta), False, 0)
    assert ex[0].key() == p.key()
    with pytest.raises(SuiteError):
        select_params(F, "every", False, 0)


def test_census_expectation():
    assert analysis.census_expectation(5, True) == [(1, 1)]
    assert analysis.census_expectation(9, True) == [(2, 1)]
    assert sorted(analysis.census_expectation(7, True)) == [(1, 2), (2, 0)]
    assert analysis.census_expectation(7, False) == [(0, 4)]


def test_batch_witness_shape():
    U = Unital(first_params(5, square=True))
    B = analysis.analyze_bases(U, [canonical_base(U, "R1")])
    w = analysis._batch_witness(B, 0, "demo")
    assert set(w) == {"reason", "base", "profile", "feet", "four_secants"}
    assert len(w["feet"]) == 6


def test_two_arc_partition():
    U = Unital(first_params(5, square=True))
    ps = pedal_brute(U, canonical_base(U, "R1"))
    col = two_arc_partition(U.plane, ps.feet)
    assert col is not None
    lines = analysis._lines_with_three(U.plane, list(ps.feet))
    for on in lines.values():
        assert len({col[i] for i in on}) == 2
