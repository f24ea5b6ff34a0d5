"""Kernel DSL: parser, validated IR, evaluator, printer, and templates."""

from . import ast
from .ast import KernelSpec
from .evaluator import compile_block, compile_expr, eval_expr
from .parser import parse_kernel
from .printer import format_expr, pretty_print
from .templates import ALGORITHMS, template

__all__ = [
    "ALGORITHMS",
    "KernelSpec",
    "ast",
    "compile_block",
    "compile_expr",
    "eval_expr",
    "format_expr",
    "parse_kernel",
    "pretty_print",
    "template",
]
