import itertools
import json
from pathlib import Path

import pytest

from saptabhangi.quantlogic import (
    Distinctness,
    FiniteModel,
    Form,
    MissingContextError,
    check_all_forms,
    check_form,
    find_joint_model,
    load_model,
    model_from_dict,
)

from oracles import first_joint_model, sentence, subsets_counter

GOLDEN = Path(__file__).parent / "golden"
S = frozenset


def test_form_i_minimal_model():
    m = FiniteModel(("pot1",), phi=S({"pot1"}), p=S({"pot1"}), q=S())
    assert check_form(m, Form.I).holds


def test_form_iv_disjoint():
    m = FiniteModel(("pot1", "pot2"), phi=S({"pot1"}), phi2=S({"pot2"}), p=S({"pot1"}), q=S())
    assert check_form(m, Form.IV, Distinctness.DISJOINT).holds


def test_form_i_witness():
    m = FiniteModel(("a",), phi=S({"a"}), p=S(), q=S())
    v = check_form(m, Form.I)
    assert not v.holds and v.witness == "a"


def test_vacuous_forms_and_notcoext_failure():
    D = ("a", "b")
    m = FiniteModel(D, phi=S(), phi2=S(), phi3=S(), p=S(), q=S(D))
    verdicts = {v.form: v for v in check_all_forms(m, Distinctness.NOT_COEXTENSIVE)}
    assert all(verdicts[f].holds for f in (Form.I, Form.II, Form.III))
    for f in (Form.IV, Form.V, Form.VI, Form.VII):
        assert not verdicts[f].holds
        assert verdicts[f].distinctness_failure == ("phi", "phi2")


def test_xor_with_identical_contexts_fails_every_distinct_form():
    D = ("a", "b")
    for phi in subsets_counter(D):
        m = FiniteModel(D, phi=phi, phi2=phi, phi3=S(D) - phi, p=S(), q=S())
        for f in (Form.IV, Form.V, Form.VI, Form.VII):
            assert not check_form(m, f, Distinctness.POINTWISE_XOR).holds


def test_missing_contexts():
    m = FiniteModel(("a",), phi=S({"a"}), p=S({"a"}), q=S())
    with pytest.raises(MissingContextError):
        check_form(m, Form.IV)
    with pytest.raises(MissingContextError):
        check_all_forms(m)
    assert check_form(m, Form.III).holds is False


def test_model_validation():
    with pytest.raises(ValueError):
        FiniteModel((), phi=S(), p=S(), q=S())
    with pytest.raises(ValueError):
        FiniteModel(("a",), phi=S({"b"}), p=S(), q=S())
    with pytest.raises(ValueError):
        model_from_dict({"domain": ["a"], "phi": []})


def all_models(n):
    D = tuple(f"e{i}" for i in range(n))
    subs = subsets_counter(D)
    for phi, phi2, phi3, p, q in itertools.product(subs, repeat=5):
        yield FiniteModel(D, phi=phi, phi2=phi2, phi3=phi3, p=p, q=q)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mode", list(Distinctness))
def test_check_form_agrees_with_sentence_oracle(n, mode):
    for m in all_models(n):
        for f in Form:
            expected = sentence(f.name, m.domain, m.phi, m.phi2, m.phi3, m.p, m.q, mode.value)
            assert check_form(m, f, mode).holds == expected


def test_check_form_agrees_with_sentence_oracle_size_3_sampled():
    # full 2^15 enumeration for one mode, all forms
    for m in all_models(3):
        for f in (Form.IV, Form.VII):
            expected = sentence(f.name, m.domain, m.phi, m.phi2, m.phi3, m.p, m.q, "disjoint")
            assert check_form(m, f).holds == expected


def test_per_context_exclusivity_exhaustive():
    for n in (1, 2, 3):
        D = tuple(f"e{i}" for i in range(n))
        for phi in subsets_counter(D)[1:]:
            for p in subsets_counter(D):
                m = FiniteModel(D, phi=phi, p=p, q=S())
                assert not (check_form(m, Form.I).holds and check_form(m, Form.II).holds)


def test_vacuity():
    for n in (1, 2, 3):
        D = tuple(f"e{i}" for i in range(n))
        for p in subsets_counter(D):
            for q in subsets_counter(D):
                m = FiniteModel(D, phi=S(), p=p, q=q)
                assert all(check_form(m, f).holds for f in (Form.I, Form.II, Form.III))


def test_disjoint_implies_not_coextensive():
    for n in (1, 2, 3):
        D = tuple(f"e{i}" for i in range(n))
        subs = subsets_counter(D)
        for phi, phi2, p in itertools.product(subs, repeat=3):
            m = FiniteModel(D, phi=phi, phi2=phi2, p=p, q=S())
            if (phi | phi2) and phi != phi2 and check_form(m, Form.IV, Distinctness.DISJOINT).holds:
                assert check_form(m, Form.IV, Distinctness.NOT_COEXTENSIVE).holds


def as_oracle_dict(m):
    if m is None:
        return None
    return {"domain": list(m.domain),
            **{k: sorted(getattr(m, k) or ()) for k in ("phi", "phi2", "phi3", "p", "q")}}


def test_find_joint_model_examples():
    # canonical first non-vacuous model for form I
    m = find_joint_model(1, [Form.I], nonvacuous=True)
    assert (m.domain, m.phi, m.p, m.q) == (("e0",), S({"e0"}), S({"e0"}), S())
    # forms I and II share phi and p: only the empty context satisfies both
    m = find_joint_model(1, [Form.I, Form.II])
    assert m.phi == S()
    assert find_joint_model(1, [Form.I, Form.II], nonvacuous=True) is None


FORM_SETS = [["I"], ["I", "II"], ["III"], ["IV"], ["V", "VI"], ["IV", "VII"],
             ["IV", "V", "VI", "VII"], ["I", "III", "VII"]]


@pytest.mark.parametrize("forms", FORM_SETS)
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("nonvacuous", [False, True])
@pytest.mark.parametrize("mode", list(Distinctness))
def test_find_joint_model_matches_plain_enumeration(forms, n, nonvacuous, mode):
    got = find_joint_model(n, [Form[f] for f in forms], mode, nonvacuous=nonvacuous)
    assert as_oracle_dict(got) == first_joint_model(n, forms, mode.value, nonvacuous)
    if got is not None:
        assert all(check_form(got, Form[f], mode).holds for f in forms)


@pytest.mark.parametrize("forms", [["IV"], ["VII"], ["IV", "V", "VI", "VII"], ["V", "VI"]])
def test_find_joint_model_matches_plain_enumeration_size_3(forms):
    for nonvacuous in (False, True):
        got = find_joint_model(3, [Form[f] for f in forms], nonvacuous=nonvacuous)
        assert as_oracle_dict(got) == first_joint_model(3, forms, "disjoint", nonvacuous)


def test_joint_iv_to_vii_golden():
    golden = json.loads((GOLDEN / "joint_model_iv_vii.json").read_text())
    forms = [Form[f] for f in golden["forms"]]
    for size, expected in golden["by_size"].items():
        got = find_joint_model(int(size), forms, Distinctness(golden["distinctness"]))
        assert as_oracle_dict(got) == expected["vacuous_allowed"]
        assert find_joint_model(int(size), forms, nonvacuous=True) is None
        assert expected["nonvacuous"] is None


def test_find_joint_model_bounds():
    with pytest.raises(ValueError):
        find_joint_model(0, [Form.I])
    with pytest.raises(ValueError):
        find_joint_model(7, [Form.I])
    assert find_joint_model(6, list(Form), nonvacuous=True) is None


def test_claypot_golden():
    from saptabhangi.cli import _resolve
    m = load_model(_resolve("claypot.json"))
    golden = json.loads((GOLDEN / "claypot_verdicts.json").read_text())
    for mode, verdicts in golden.items():
        got = {v.form.name: v.holds for v in check_all_forms(m, Distinctness(mode))}
        assert got == verdicts
    assert check_form(m, Form.IV).holds and check_form(m, Form.VII).holds
