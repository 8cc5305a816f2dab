"""Exact twisted differential geometry on level-set submanifolds."""

from ._twistfold import (
    EvalError,
    ParseError,
    Report,
    Workspace,
    load_scenario,
    parse_scenario,
    print_expression,
    roundtrip,
    run_scenario,
)

__all__ = [
    "EvalError",
    "ParseError",
    "Report",
    "Workspace",
    "load_scenario",
    "parse_scenario",
    "print_expression",
    "roundtrip",
    "run_scenario",
]
