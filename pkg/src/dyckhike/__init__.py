"""Exact Dyck-path summation for powers and exponentials of boson operators."""

__version__ = "0.1.0"

from .boson import (
    BosonExpr,
    BosonFactor,
    FockState,
    FockVector,
    LadderPolynomial,
    LadderTable,
    Monomial,
    constant_ladder,
    lambda_mu_polynomial,
    lambda_mu_table,
)
from .dyck import DyckWord, PathSpec, count_paths, enumerate_words, highest_word, lowest_word
from .engine import MINUS, PLUS, DyckSumEngine, PowerResult, power_coefficients
from .evolution import build_series, evaluate_at, squeeze_reference
from .pade import PadeApproximant, build_pade, eval_pade
from .parser import format_expr, parse_expr, parse_vacuum
from .radical import RatRadical

__all__ = [
    "BosonExpr",
    "BosonFactor",
    "DyckSumEngine",
    "DyckWord",
    "FockState",
    "FockVector",
    "LadderPolynomial",
    "LadderTable",
    "MINUS",
    "Monomial",
    "PLUS",
    "PadeApproximant",
    "PathSpec",
    "PowerResult",
    "RatRadical",
    "build_pade",
    "build_series",
    "constant_ladder",
    "count_paths",
    "enumerate_words",
    "eval_pade",
    "evaluate_at",
    "format_expr",
    "highest_word",
    "lambda_mu_polynomial",
    "lambda_mu_table",
    "lowest_word",
    "parse_expr",
    "parse_vacuum",
    "power_coefficients",
    "squeeze_reference",
]
