"""Safe arithmetic expressions for coordinate maps.

Syntax: numbers, chart variables, ``+ - * / **``, unary minus and the functions
``exp, log, sin, cos, sqrt, pow``; ``pi`` is predefined.  A map is written as a
parenthesised tuple, e.g. ``"(exp(y), exp(y)/x)"``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

FUNCTIONS: dict[str, Callable] = {
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "pow": np.power,
}
CONSTANTS = {"pi": np.pi}

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_UNARY = (ast.UAdd, ast.USub)


class ExpressionError(ValueError):
    pass


def _validate(node: ast.AST, names: set[str]):
    if isinstance(node, ast.Expression):
        return _validate(node.body, names)
    if isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)) or isinstance(node.value, bool):
            raise ExpressionError(f"unsupported literal {node.value!r}")
        return
    if isinstance(node, ast.Name):
        if node.id not in names and node.id not in CONSTANTS:
            raise ExpressionError(f"unknown name {node.id!r}")
        return
    if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
        _validate(node.left, names)
        _validate(node.right, names)
        return
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, _UNARY):
        _validate(node.operand, names)
        return
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
            raise ExpressionError("only exp, log, sin, cos, sqrt, pow may be called")
        if node.keywords:
            raise ExpressionError("keyword arguments are not allowed")
        for a in node.args:
            _validate(a, names)
        return
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_components(text: str) -> list[str]:
    """Split "(f1, f2, ...)" into component source strings."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    body = tree.body
    elts = body.elts if isinstance(body, ast.Tuple) else [body]
    return [ast.unparse(e) for e in elts]


@dataclass(frozen=True)
class Expression:
    source: str
    variables: tuple[str, ...]
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        try:
            tree = ast.parse(self.source.strip(), mode="eval")
        except SyntaxError as exc:
            raise ExpressionError(f"cannot parse {self.source!r}: {exc.msg}") from None
        _validate(tree, set(self.variables) | set(self.params))
        object.__setattr__(self, "_code", compile(tree, "<expr>", "eval"))

    def __call__(self, *args):
        env = dict(FUNCTIONS)
        env.update(CONSTANTS)
        env.update({k: float(v) for k, v in self.params.items()})
        env.update(dict(zip(self.variables, args)))
        return eval(self._code, {"__builtins__": {}}, env)  # noqa: S307 - validated AST


@dataclass(frozen=True)
class CoordinateMap:
    """Smooth map between charts given componentwise by expressions."""

    components: tuple[Expression, ...]
    variables: tuple[str, ...]
    domain: Callable[[np.ndarray], bool] | None = None
    label: str = ""

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] = ("x", "y"), params: Mapping | None = None,
              domain=None, label: str = "") -> "CoordinateMap":
        variables = tuple(variables)
        params = dict(params or {})
        comps = tuple(Expression(src, variables, params) for src in parse_components(text))
        return cls(comps, variables, domain, label or text)

    @property
    def dim_out(self) -> int:
        return len(self.components)

    def __call__(self, point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        args = [point[..., i] for i in range(len(self.variables))]
        out = [np.broadcast_to(np.asarray(c(*args), dtype=float), point.shape[:-1]) for c in self.components]
        return np.stack(out, axis=-1)

    def compose(self, inner: "CoordinateMap") -> "ComposedMap":
        return ComposedMap(self, inner)


@dataclass(frozen=True)
class ComposedMap:
    outer: object
    inner: object

    @property
    def variables(self):
        return self.inner.variables

    def __call__(self, point):
        return self.outer(self.inner(point))

    @property
    def label(self):
        return f"({getattr(self.outer, 'label', '?')}) o ({getattr(self.inner, 'label', '?')})"


def numeric_jacobian(f: Callable, x, rel_step: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian with step rel_step * max(1, |x_j|)."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float)
    J = np.empty(f0.shape + (x.shape[-1],))
    for j in range(x.shape[-1]):
        h = rel_step * max(1.0, abs(x[j]))
        xp, xm = x.copy(), x.copy()
        xp[j] += h
        xm[j] -= h
        J[..., j] = (np.asarray(f(xp)) - np.asarray(f(xm))) / (2 * h)
    return J
