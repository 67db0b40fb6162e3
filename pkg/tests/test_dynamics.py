import json

import pytest

from saptabhangi import dynamics
from saptabhangi.dynamics import (
    BUNDLED_SCENARIOS,
    EventKind,
    ProgramError,
    ScenarioError,
    Step,
    Switch,
    assert_no_global_valuation,
    bundled_scenario,
    load_scenario,
    parse_program,
    run,
    scenario_from_dict,
    step,
    switch,
)
from saptabhangi.formula import parse
from saptabhangi.valuation import Valuation
from saptabhangi.values import V1, V2, V3, V4


def toy(identity_default=True, transitions=None):
    return scenario_from_dict({
        "contexts": ["c", "d"],
        "atoms": ["A"],
        "valuations": {"c": {"A": [1, 0, 0]}, "d": {"A": [0, 0, 1]}},
        "steps": {"c": {"identity_default": identity_default,
                        "transitions": transitions or []}},
        "switches": [{"label": "go", "from": "c", "to": "d", "post": {"A": [1, 1, 0]}},
                     {"label": "stay", "from": "c", "to": "c"}],
        "initial": "c",
    })


def test_identity_step():
    s = toy()
    assert step(s, s.initial_state()) == s.initial_state()


def test_single_entry_table():
    s = toy(transitions=[{"from": {"A": [1, 0, 0]}, "to": {"A": [0, 1, 0]}}])
    after = step(s, Valuation("c", {"A": V1}))
    assert after == Valuation("c", {"A": V2})


def test_missing_transition_without_identity():
    s = toy(identity_default=False, transitions=[{"from": {"A": [0, 1, 0]}, "to": {"A": [1, 0, 0]}}])
    with pytest.raises(ScenarioError, match="no transition"):
        step(s, s.initial_state())


def test_switch_applies_overrides_after_target_valuation():
    s = toy()
    assert switch(s, s.initial_state(), "go") == Valuation("d", {"A": V3})


def test_self_switch_reloads_declared_valuation():
    s = toy(transitions=[{"from": {"A": [1, 0, 0]}, "to": {"A": [0, 1, 0]}}])
    moved = step(s, s.initial_state())
    assert moved["A"] == V2
    assert switch(s, moved, "stay") == s.valuations["c"]


def test_unknown_label_lists_available():
    s = toy()
    with pytest.raises(ScenarioError) as info:
        switch(s, s.initial_state(), "fly")
    assert "go" in str(info.value) and "stay" in str(info.value)


def test_empty_program():
    s = toy()
    trace = run(s, [])
    assert trace.events == () and trace.final == s.initial_state()


def test_run_reports_program_index():
    s = toy()
    with pytest.raises(ProgramError) as info:
        run(s, [Step(), Switch("go"), Switch("go")])
    assert info.value.index == 2


def test_context_changes_only_on_switch():
    s = toy(transitions=[{"from": {"A": [1, 0, 0]}, "to": {"A": [0, 1, 0]}},
                         {"from": {"A": [0, 1, 0]}, "to": {"A": [1, 0, 0]}}])
    trace = run(s, [Step(), Step(), Switch("stay"), Step(), Switch("go"), Step()])
    for e in trace.events:
        if e.kind is EventKind.STEP:
            assert e.before == e.after == e.valuation.context
    assert [e.label for e in trace.events if e.kind is EventKind.STEP] == [1, 2, 3, 4]
    assert trace.final.context == "d"


def test_run_is_deterministic():
    s = bundled_scenario("cat_astinasti")
    prog = [Step(), Switch("open_dead"), Step()]
    assert run(s, prog) == run(s, prog)


@pytest.mark.parametrize("name", BUNDLED_SCENARIOS)
def test_every_declared_switch_is_executable(name):
    s = bundled_scenario(name)
    for rule in s.switches:
        after = switch(s, s.valuations[rule.source], rule.label)
        assert after.context == rule.target


@pytest.mark.parametrize("name", BUNDLED_SCENARIOS)
def test_step_never_changes_context(name):
    s = bundled_scenario(name)
    for ctx in s.contexts:
        assert step(s, s.valuations[ctx]).context == ctx


def test_no_merge_operation_exposed():
    # the only cross-context reader is assert_no_global_valuation
    public = set(dynamics.__all__)
    assert not any(word in name.lower() for name in public for word in ("merge", "global_valuation_of", "combine"))


def test_cat_pre_observation_fixed_point():
    for name, value in (("cat_astinasti", V3), ("cat_avaktavyam", V4)):
        s = bundled_scenario(name)
        trace = run(s, [Step(), Step(), Step()])
        assert trace.final == s.initial_state()
        assert trace.final["Alive"] == value


@pytest.mark.parametrize("label, value", [("open_alive", V1), ("open_dead", V2)])
def test_cat_opening(label, value):
    for name in ("cat_astinasti", "cat_avaktavyam"):
        trace = run(bundled_scenario(name), [Switch(label)])
        assert trace.final.context == "c_open"
        assert trace.final["Alive"] == value


def test_wigner_reports_differ_without_error():
    s = bundled_scenario("wigner")
    report = assert_no_global_valuation(s, parse("Outcome_o"))
    assert dict(report.values) == {"c_friend": V1, "c_Wigner": V4}
    assert report.globally_uniform is False


def test_double_slit_p_a():
    report = assert_no_global_valuation(bundled_scenario("double_slit"), parse("P_A"))
    assert dict(report.values) == {"c_wp": V1, "c_wave": V4}
    assert not report.globally_uniform


def test_single_context_is_uniform():
    s = scenario_from_dict({"contexts": ["c"], "atoms": ["A"],
                            "valuations": {"c": {"A": [0, 1, 1]}}, "initial": "c"})
    assert assert_no_global_valuation(s, parse("A | !A")).globally_uniform


def test_global_report_rejects_foreign_atoms():
    with pytest.raises(ScenarioError):
        assert_no_global_valuation(bundled_scenario("wigner"), parse("Alive"))


def test_parse_program():
    assert parse_program("step, switch:open_alive") == [Step(), Switch("open_alive")]
    assert parse_program("") == []
    with pytest.raises(ProgramError):
        parse_program("jump")
    with pytest.raises(ProgramError):
        parse_program("step,,step")


def test_seeded_random_switch_is_reproducible():
    import random
    s = bundled_scenario("cat_astinasti")
    a = parse_program("switch:?", s, random.Random(7))
    b = parse_program("switch:?", s, random.Random(7))
    assert a == b and a[0].label in {"open_alive", "open_dead"}
    with pytest.raises(ProgramError):
        parse_program("switch:?")


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.update(initial="nowhere"), "initial"),
    (lambda d: d["valuations"]["c"].pop("A"), "missing"),
    (lambda d: d["switches"].append({"label": "x", "from": "c", "to": "zz"}), "undeclared"),
    (lambda d: d["switches"].append({"label": "go", "from": "c", "to": "d"}), "twice"),
    (lambda d: d["valuations"]["c"].update(B=[1, 0, 0]), "undeclared atoms"),
])
def test_validation(mutate, message):
    data = {
        "contexts": ["c", "d"], "atoms": ["A"],
        "valuations": {"c": {"A": [1, 0, 0]}, "d": {"A": [0, 1, 0]}},
        "switches": [{"label": "go", "from": "c", "to": "d"}],
        "initial": "c",
    }
    mutate(data)
    with pytest.raises(ScenarioError, match=message):
        scenario_from_dict(data)


def test_load_scenario_from_path(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"contexts": ["c"], "atoms": ["A"],
                                "valuations": {"c": {"A": [1, 0, 0]}}, "initial": "c"}))
    assert load_scenario(path).name == "s"
    path.write_text("{not json")
    with pytest.raises(ScenarioError):
        load_scenario(path)
