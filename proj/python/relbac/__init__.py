"""Relationship-based access-control engine.

The native module carries the implementation; this package re-exports it.
"""

from ._relbac import (  # noqa: F401
    ConfigError,
    Engine,
    Error,
    EvalOutcome,
    NameCollisionError,
    ParseError,
    UnknownNodeError,
    WellFormednessError,
    __version__,
    generate_chinese_wall,
    generate_sod,
    parse_path,
    simplify_path,
)

__all__ = [
    "ConfigError",
    "Engine",
    "Error",
    "EvalOutcome",
    "NameCollisionError",
    "ParseError",
    "UnknownNodeError",
    "WellFormednessError",
    "__version__",
    "generate_chinese_wall",
    "generate_sod",
    "parse_path",
    "simplify_path",
]
