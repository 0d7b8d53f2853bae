"""First-order interpretation workbench.

Formulas, structures, graphs and coding schemes travel as the same text
formats the ``foil`` CLI uses; see the project README for the grammars.
"""

from ._core import (
    FoilBudgetError,
    FoilDomainError,
    FormulaParseError,
    check_correctness,
    check_suite,
    classify,
    decode,
    encode_graph,
    eval,
    fv_decompose,
    fv_verify,
    parse,
    prenex,
    run_cli,
    suite_names,
    transfer_report,
    translate,
    vn_fragment,
)

__all__ = [
    "FoilBudgetError",
    "FoilDomainError",
    "FormulaParseError",
    "check_correctness",
    "check_suite",
    "classify",
    "decode",
    "encode_graph",
    "eval",
    "fv_decompose",
    "fv_verify",
    "parse",
    "prenex",
    "run_cli",
    "suite_names",
    "transfer_report",
    "translate",
    "vn_fragment",
]
