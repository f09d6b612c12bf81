"""Conformable fractional calculus: derivatives, integrals, Taylor expansions, linear IVPs
and integral inequalities. Expressions are strings in the variable ``t``; ``alpha`` may
appear in them and is bound to the order passed to each call."""

from ._core import (
    ConfracError,
    DomainError,
    HypothesisError,
    InvalidArgument,
    NumericError,
    ParseError,
    Report,
    binomial_identity_residual,
    cauchy_function,
    cauchy_kernel,
    check,
    derivative_text,
    evaluate,
    frac_deriv,
    frac_integral,
    parse,
    remainder_split_residual,
    solve,
    steffensen_ell,
    taylor_poly,
    taylor_remainder,
    theorems,
)

__version__ = "0.1.0"

__all__ = [
    "ConfracError",
    "DomainError",
    "HypothesisError",
    "InvalidArgument",
    "NumericError",
    "ParseError",
    "Report",
    "binomial_identity_residual",
    "cauchy_function",
    "cauchy_kernel",
    "check",
    "derivative_text",
    "evaluate",
    "frac_deriv",
    "frac_integral",
    "parse",
    "remainder_split_residual",
    "solve",
    "steffensen_ell",
    "taylor_poly",
    "taylor_remainder",
    "theorems",
]
