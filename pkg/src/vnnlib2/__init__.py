"""Reference implementation of the VNN-LIB 2.0 query language: grammar,
type system and witness-evaluation semantics, parameterized over an
abstract network theory with two concrete instances (an IEEE
floating-point tensor-graph theory and an exact real-valued wrapper).
"""

from .core import (
    MathTensor,
    ModelType,
    Shape,
    TensorType,
    element_count,
    flat_index,
)
from .lexer import LexError, SourceError, lex
from .mini import (
    MINI_THEORY,
    AssignmentFormatError,
    FormatError,
    MiniModel,
    MiniTensor,
    MiniTheory,
    ModelFormatError,
    UnreachableNodeError,
    load_model,
    load_model_file,
)
from .parser import ArityError, ParseError, parse_query
from .printer import print_query
from .real import RealTensor, RealTheory, real_model, wrap_theory
from .semantics import (
    Verdict,
    build_environment,
    eval_arith,
    eval_bool,
    eval_query,
    search_witness,
)
from .syntax import Query, ast_to_json
from .theory import NetworkTheory
from .typecheck import (
    ErrorCode,
    TypeCheckError,
    TypingContext,
    build_context,
    check_assignment,
    check_equiv,
    check_models,
    type_arith,
    type_bool,
    type_query,
)

__version__ = "0.1.0"

__all__ = [
    "MathTensor",
    "ModelType",
    "Shape",
    "TensorType",
    "element_count",
    "flat_index",
    "LexError",
    "SourceError",
    "lex",
    "MINI_THEORY",
    "AssignmentFormatError",
    "FormatError",
    "MiniModel",
    "MiniTensor",
    "MiniTheory",
    "ModelFormatError",
    "UnreachableNodeError",
    "load_model",
    "load_model_file",
    "ArityError",
    "ParseError",
    "parse_query",
    "print_query",
    "RealTensor",
    "RealTheory",
    "real_model",
    "wrap_theory",
    "Verdict",
    "build_environment",
    "eval_arith",
    "eval_bool",
    "eval_query",
    "search_witness",
    "Query",
    "ast_to_json",
    "NetworkTheory",
    "ErrorCode",
    "TypeCheckError",
    "TypingContext",
    "build_context",
    "check_assignment",
    "check_equiv",
    "check_models",
    "type_arith",
    "type_bool",
    "type_query",
    "__version__",
]
