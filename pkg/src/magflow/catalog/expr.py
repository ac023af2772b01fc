"""Tiny exact evaluator for the parameter expressions stored in catalog JSON.

Supports rational literals, parameter names, + - * / ** (integer exponents),
comparisons and boolean and/or/not. Nothing else is reachable.
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

_BIN = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_CMP = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


class ExprError(ValueError):
    pass


@lru_cache(maxsize=None)
def _parse(src: str) -> ast.Expression:
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {src!r}: {exc.msg}") from None
    return tree


def names(src: str) -> set[str]:
    return {n.id for n in ast.walk(_parse(src)) if isinstance(n, ast.Name)}


def evaluate(src: str | int, env: Mapping[str, Fraction]):
    """Evaluate ``src`` with Fractions bound from ``env``."""
    if isinstance(src, int):
        return Fraction(src)
    return _eval(_parse(src).body, env, src)


def _eval(node, env, src):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool):
            return node.value
        if isinstance(node.value, int):
            return Fraction(node.value)
        raise ExprError(f"only integer literals are allowed in {src!r}")
    if isinstance(node, ast.Name):
        if node.id == "true":
            return True
        if node.id not in env:
            raise ExprError(f"unknown parameter {node.id!r} in {src!r}")
        return env[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env, src)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        if isinstance(node.op, ast.Not):
            return not v
    if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
        left, right = _eval(node.left, env, src), _eval(node.right, env, src)
        if isinstance(node.op, ast.Pow) and Fraction(right).denominator != 1:
            raise ExprError(f"non-integer exponent in {src!r}")
        try:
            return _BIN[type(node.op)](left, right)
        except ZeroDivisionError:
            raise ExprError(f"division by zero evaluating {src!r} at {dict(env)}") from None
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, env, src) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env, src)
        for op, comp in zip(node.ops, node.comparators):
            if type(op) not in _CMP:
                break
            right = _eval(comp, env, src)
            if not _CMP[type(op)](left, right):
                return False
            left = right
        else:
            return True
    raise ExprError(f"unsupported syntax in {src!r}")
