import pytest

from nervelab import cases, io
from nervelab.cat import FiniteFunctor, discrete_category
from nervelab.cases import Claim, Scenario


@pytest.mark.parametrize("name", sorted(cases.SCENARIOS))
def test_named_scenarios_pass(name):
    r = cases.SCENARIOS[name]().run()
    assert r.passed, [c.as_json() for c in r.claims if not c.passed]


def test_counterexample_witnesses():
    by_name = {c.name: c for c in cases.scenario_hc_counterexample().run().claims}
    first = by_name["first Kan fibration failure"]
    assert first.actual == (2, 0)
    assert first.witness["failures"][0] == (2, 0)
    horn = by_name["horn (w02, u01) has no lift"]
    assert horn.witness["horn"] == {1: "w02", 2: "u01"}
    assert by_name["nondegenerate simplices of hc(C)"].actual == (3, 4, 1)


def test_battery_sizes():
    assert len(cases.battery_groupoids()) == 6
    assert all(isinstance(q, FiniteFunctor) for _, q in cases.battery_quotients())


def test_json_output_is_stable():
    a = io.dumps(cases.scenario_standard_nerve_gap().run().as_json())
    b = io.dumps(cases.scenario_standard_nerve_gap().run().as_json())
    assert a == b


def test_failed_claim_reported():
    s = Scenario("toy", lambda: {"C": discrete_category([0])},
                 [Claim("one object", 2, lambda d: (len(d["C"].objects), None))])
    r = s.run()
    assert not r.passed
    assert r.as_json()["claims"][0] == {"claim": "one object", "expected": 2, "actual": 1,
                                        "passed": False, "witness": None}
