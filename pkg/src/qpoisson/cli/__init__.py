"""Command-line interface: expression parser, subcommands and verify suites."""

from .app import build_parser, main
from .parser import ParsedExpr, evaluate, parse

__all__ = ["ParsedExpr", "build_parser", "evaluate", "main", "parse"]
