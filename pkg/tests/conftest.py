import random

import pytest
from hypothesis import strategies as st

from saptabhangi.formula import And, Atom, Implies, Not, Or
from saptabhangi.values import ALL_VALUES

ATOM_NAMES = ["P", "Q", "R", "S_z", "P_A", "x1"]

values = st.sampled_from(ALL_VALUES)


def formulas(max_leaves=12, atoms=ATOM_NAMES):
    leaf = st.sampled_from(atoms).map(Atom)
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            kids.map(Not),
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
        ),
        max_leaves=max_leaves,
    )


def random_formula(rng: random.Random, depth: int, atoms=ATOM_NAMES):
    """Random formula of depth at most ``depth`` (an atom has depth 0)."""
    if depth == 0 or rng.random() < 0.2:
        return Atom(rng.choice(atoms))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, depth - 1, atoms))
    cls = (And, Or, Implies)[kind - 1]
    return cls(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms))


@pytest.fixture
def rng():
    return random.Random(20261017)


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, title, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {title}: {detail}")
