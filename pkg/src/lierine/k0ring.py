"""A syntactic model of the Grothendieck ring K0(g).

Symbols ``[W, nabla]`` are connection labels in a :class:`ConnectionRegistry`.
The direct-sum relation is applied by rewriting every label that was
registered as a direct sum into its summands; tensor products of registered
connections are registered on demand.  Deciding abstract isomorphism of
connections is not attempted, so this under-approximates K0(g); it is
exactly what is needed to evaluate the Chern character.
"""
from __future__ import annotations

import ast
import threading
from typing import Mapping

from .chern import ChernForm, chern_character
from .connections import Connection, direct_sum, tensor
from .errors import StructuralError
from .lie_rinehart import LieRinehartData


class ConnectionRegistry:
    def __init__(self, algebra: LieRinehartData):
        self.algebra = algebra
        self._connections: dict[str, Connection] = {}
        self._chern: dict[str, ChernForm] = {}
        self._lock = threading.Lock()

    def register(self, c: Connection) -> Connection:
        if c.algebra != self.algebra:
            raise StructuralError(f"{c.label} lives on a different algebra")
        with self._lock:
            old = self._connections.get(c.label)
            if old is not None:
                if not old.same_data(c):
                    raise StructuralError(f"label {c.label!r} already registered")
                return old
            self._connections[c.label] = c
        return c

    def __getitem__(self, label: str) -> Connection:
        try:
            return self._connections[label]
        except KeyError:
            raise StructuralError(f"unknown connection label {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self._connections

    def labels(self) -> list[str]:
        return list(self._connections)

    def direct_sum(self, a: str, b: str) -> Connection:
        return self.register(direct_sum(self[a], self[b]))

    def tensor(self, a: str, b: str) -> Connection:
        return self.register(tensor(self[a], self[b]))

    def chern(self, label: str) -> ChernForm:
        ch = self._chern.get(label)
        if ch is None:
            ch = self._chern[label] = chern_character(self[label])
        return ch

    def element(self, coefficients: Mapping[str, int] | str) -> K0Element:
        if isinstance(coefficients, str):
            coefficients = {coefficients: 1}
        return K0Element(self, coefficients)


class K0Element:
    """Integer combination of registered labels, normalised modulo direct sums."""

    __slots__ = ("registry", "coefficients")

    def __init__(self, registry: ConnectionRegistry, coefficients: Mapping[str, int]):
        self.registry = registry
        acc: dict[str, int] = {}
        stack = [(label, int(n)) for label, n in coefficients.items()]
        while stack:
            label, n = stack.pop()
            c = registry[label]
            if c.origin and c.origin[0] == "sum":
                stack.extend([(c.origin[1], n), (c.origin[2], n)])
                continue
            acc[label] = acc.get(label, 0) + n
        self.coefficients = {k: v for k, v in sorted(acc.items()) if v}

    def _check(self, other: K0Element):
        if other.registry is not self.registry:
            raise StructuralError("K0 elements from different registries")

    def __add__(self, other: K0Element) -> K0Element:
        return k0_combine(self, other, 1)

    def __sub__(self, other: K0Element) -> K0Element:
        return k0_combine(self, other, -1)

    def __neg__(self) -> K0Element:
        return K0Element(self.registry, {k: -v for k, v in self.coefficients.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return K0Element(self.registry, {k: v * other for k, v in self.coefficients.items()})
        return k0_product(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, K0Element):
            return NotImplemented
        return self.registry is other.registry and self.coefficients == other.coefficients

    def is_zero(self) -> bool:
        return not self.coefficients

    def to_dict(self) -> dict[str, int]:
        return dict(self.coefficients)

    def __repr__(self):
        return f"K0Element({self.coefficients})"


def k0_combine(a: K0Element, b: K0Element, sign: int = 1) -> K0Element:
    a._check(b)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    acc = dict(a.coefficients)
    for k, v in b.coefficients.items():
        acc[k] = acc.get(k, 0) + sign * v
    return K0Element(a.registry, acc)


def k0_product(a: K0Element, b: K0Element) -> K0Element:
    """Bilinear extension of ``[c] * [c'] = [c (x) c']``."""
    a._check(b)
    reg = a.registry
    acc: dict[str, int] = {}
    for la, na in a.coefficients.items():
        for lb, nb in b.coefficients.items():
            label = reg.tensor(la, lb).label
            acc[label] = acc.get(label, 0) + na * nb
    return K0Element(reg, acc)


def chern_on_k0(a: K0Element) -> ChernForm:
    reg = a.registry
    total = ChernForm.zero(reg.algebra)
    for label, n in a.coefficients.items():
        total = total + reg.chern(label).scaled(n)
    return total


def parse_k0_expression(text: str, registry: ConnectionRegistry) -> K0Element:
    """Evaluate an expression such as ``(A+B)*C - 2*A`` over registered labels."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise StructuralError(f"cannot parse K0 expression {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Name):
            return registry.element(node.id)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(left, int) or isinstance(right, int):
                raise StructuralError("cannot add an integer to a K0 element; use a label")
            return left + right if isinstance(node.op, ast.Add) else left - right
        raise StructuralError(f"unsupported syntax in K0 expression {text!r}")

    out = ev(tree)
    if isinstance(out, int):
        raise StructuralError("K0 expression must mention at least one label")
    return out
