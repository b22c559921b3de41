"""Equivalence relations on N, their induced morphisms and finite-scope checks."""

from .category_ops import Morphism, Verdict
from .core_rel import Approximant, RelationSpec, approximant, related, stage_key
from .errors import EeqError, MorphismError, OverflowFault, ParseError, ScopeError, SurrogateError
from .funlang import FunExpr, compile_fun, evaluate, parse, to_text

__all__ = [
    "Approximant",
    "EeqError",
    "FunExpr",
    "Morphism",
    "MorphismError",
    "OverflowFault",
    "ParseError",
    "RelationSpec",
    "ScopeError",
    "SurrogateError",
    "Verdict",
    "approximant",
    "compile_fun",
    "evaluate",
    "parse",
    "related",
    "stage_key",
    "to_text",
]
