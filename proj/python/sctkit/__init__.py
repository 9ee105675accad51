"""Size-change termination analysis and ranking-function synthesis.

Thin re-export of the native module; instances and ranking documents are
plain strings in the grammars described in the repository README.
"""

from _sct import (
    ClassError,
    ParseError,
    ResourceError,
    ValidationError,
    decide,
    generate,
    info,
    rank,
    verify,
)

__all__ = [
    "ClassError",
    "ParseError",
    "ResourceError",
    "ValidationError",
    "decide",
    "generate",
    "info",
    "rank",
    "verify",
]
