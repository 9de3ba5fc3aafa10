"""Surface language: parsing, printing and session evaluation."""

from .session import HELP_TEXT, Outcome, Session, build, evaluate
from .syntax import (Help, Let, Load, Query, Save, command_text, expr_text, parse,
                     parse_expr)

__all__ = ["HELP_TEXT", "Outcome", "Session", "build", "evaluate", "Help", "Let", "Load",
           "Query", "Save", "command_text", "expr_text", "parse", "parse_expr"]
