"""Exact quantity calculus over the ISQ, with SI units and unit-system conversion."""

from .corpus import compare, parse_corpus, verify, verify_file, bundled_corpus
from .dimension import (
    BaseQuantity,
    DimVec,
    dv_base,
    dv_one,
    format_dim,
    normalise,
    parse_dimexpr,
    render_dimexpr,
)
from .errors import (
    CorpusError,
    DimensionMismatchError,
    DimensionOverflowError,
    NonMetrifiableError,
    ParseError,
    PiClosureError,
    QCalcError,
    SchemaError,
    SystemMismatchError,
    UnknownSystemError,
)
from .parser import evaluate, parse, render_ast
from .quantity import Quantity, bunit, dnorm, q_equiv, q_less_eq, scale_q
from .scalar import PI, ExactScalar, render, render_exact, scalar
from .si import constants, foundational_check, si_registry
from .systems import ConversionSchema, get_system, load_schemas, metrify, qconv, qmc, register_system

__version__ = "0.1.0"

__all__ = [
    "BaseQuantity", "DimVec", "dv_base", "dv_one", "format_dim", "normalise",
    "parse_dimexpr", "render_dimexpr",
    "ExactScalar", "PI", "scalar", "render", "render_exact",
    "Quantity", "bunit", "dnorm", "q_equiv", "q_less_eq", "scale_q",
    "si_registry", "constants", "foundational_check",
    "ConversionSchema", "qconv", "metrify", "qmc", "get_system", "register_system", "load_schemas",
    "parse", "evaluate", "render_ast",
    "compare", "parse_corpus", "verify", "verify_file", "bundled_corpus",
    "QCalcError", "DimensionMismatchError", "DimensionOverflowError", "SystemMismatchError",
    "UnknownSystemError", "NonMetrifiableError", "PiClosureError", "ParseError",
    "SchemaError", "CorpusError",
]
