"""Toolkit for deciding order-theoretic properties of context-free languages.

A context-free grammar over a linearly ordered alphabet induces the
lexicographic ordering on its language.  This package decides whether that
ordering is scattered (embeds no dense ordering) and whether it is a
well-ordering (has no infinite strictly decreasing sequence), producing
machine-checkable certificates for every negative verdict.
"""

from lexorder.grammar import Grammar, OrderedAlphabet, Rule, parse_grammar
from lexorder.decide import Decision, Limits, decide, to_report_dict, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "Grammar",
    "OrderedAlphabet",
    "Rule",
    "parse_grammar",
    "Decision",
    "Limits",
    "decide",
    "to_report_dict",
    "verify_certificate",
    "__version__",
]
