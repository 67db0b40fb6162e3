"""Seven-valued, context-indexed paraconsistent logic (saptabhangi).

Truth values are non-empty ``(t, f, u)`` triples read relative to a
context.  The package provides the connectives, a formula parser, a
sequent validity checker, a context-switch scenario engine and a
finite-domain checker for the quantified formulation.
"""

__version__ = "0.1.0"

from .values import (  # noqa: E402
    ALL_VALUES,
    TruthValue,
    ValueName,
    conj,
    disj,
    implies,
    is_designated,
    negate,
    truth_table,
)
from .formula import parse, to_text, atoms_of  # noqa: E402
from .valuation import Sequent, Valuation, check_sequent, evaluate  # noqa: E402

__all__ = [
    "ALL_VALUES", "TruthValue", "ValueName", "conj", "disj", "implies",
    "is_designated", "negate", "truth_table", "parse", "to_text", "atoms_of",
    "Sequent", "Valuation", "check_sequent", "evaluate",
]
