"""The bundled scenarios reproduce the worked valuations verbatim."""

import pytest

from saptabhangi.dynamics import Switch, assert_no_global_valuation, bundled_scenario, run
from saptabhangi.formula import parse
from saptabhangi.values import TruthValue

T = TruthValue

CORPUS = [
    ("double_slit", "c_wp", "P_A", T(1, 0, 0)),
    ("double_slit", "c_wp", "I", T(0, 1, 0)),
    ("double_slit", "c_wave", "I", T(1, 0, 0)),
    ("double_slit", "c_wave", "P_A", T(0, 0, 1)),
    ("spin_half", "c_z", "S_z", T(1, 0, 0)),
    ("spin_half", "c_z", "S_x", T(0, 0, 1)),
    ("spin_half", "c_x", "S_x", T(1, 0, 0)),
    ("spin_half", "c_x", "S_z", T(0, 0, 1)),
    ("cat_astinasti", "c_closed", "Alive", T(1, 1, 0)),
    ("cat_avaktavyam", "c_closed", "Alive", T(0, 0, 1)),
    ("wigner", "c_friend", "Outcome_o", T(1, 0, 0)),
    ("wigner", "c_Wigner", "Outcome_o", T(0, 0, 1)),
]


@pytest.mark.parametrize("name, context, atom, value", CORPUS)
def test_declared_valuation(name, context, atom, value):
    assert bundled_scenario(name).valuations[context][atom] == value


def test_spin_incompatibility_is_unsayability_not_contradiction():
    s = bundled_scenario("spin_half")
    for f in ("S_z", "S_x"):
        report = assert_no_global_valuation(s, parse(f))
        assert not report.globally_uniform
        assert all(v.t + v.f < 2 for v in report.values.values())


def test_measure_x_moves_to_x_context():
    trace = run(bundled_scenario("spin_half"), [Switch("measure_x")])
    assert trace.final.context == "c_x" and trace.final["S_x"] == T(1, 0, 0)
