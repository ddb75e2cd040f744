"""Built-in test functions and the ``expr:`` mini-expression parser.

The four named functions carry analytic derivatives of every order.
``expr:`` functions are value-only (no analytic derivatives), so pipelines
that need derivative data must use divided differences with them.
"""

from __future__ import annotations

import math

import numpy as np

from .extension import RealFunction


def _sawtooth() -> RealFunction:
    return RealFunction(
        fn=lambda t: np.asarray(t, dtype=float) - math.pi,
        label="sawtooth",
        deriv_fn=lambda j: (lambda t: np.ones_like(np.asarray(t, dtype=float)))
        if j == 1
        else (lambda t: np.zeros_like(np.asarray(t, dtype=float))),
    )


def _linear() -> RealFunction:
    return RealFunction(
        fn=lambda t: np.asarray(t, dtype=float) + 1.0,
        label="linear",
        deriv_fn=lambda j: (lambda t: np.ones_like(np.asarray(t, dtype=float)))
        if j == 1
        else (lambda t: np.zeros_like(np.asarray(t, dtype=float))),
    )


def _sin075() -> RealFunction:
    def deriv_fn(j):
        return lambda t: 0.75 ** j * np.sin(0.75 * np.asarray(t, dtype=float) + j * math.pi / 2.0)

    return RealFunction(fn=lambda t: np.sin(0.75 * np.asarray(t, dtype=float)), label="sin075", deriv_fn=deriv_fn)


def _exp002() -> RealFunction:
    def deriv_fn(j):
        return lambda t: 0.02 * np.exp(np.asarray(t, dtype=float))

    return RealFunction(fn=lambda t: 0.02 * np.exp(np.asarray(t, dtype=float)), label="exp002", deriv_fn=deriv_fn)


REGISTRY = {
    "sawtooth": _sawtooth,
    "linear": _linear,
    "sin075": _sin075,
    "exp002": _exp002,
}


class _ExprParser:
    """Recursive-descent parser for + - * / ^, sin/cos/exp, pi, and t."""

    _FUNCS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self):
        node = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ValueError(f"unexpected input at position {self.pos}: {self.text[self.pos:]!r}")
        return node

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self):
        node = self._term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._term()
            node = (lambda t, a=node, b=rhs: a(t) + b(t)) if op == "+" else (lambda t, a=node, b=rhs: a(t) - b(t))
        return node

    def _term(self):
        node = self._unary()
        while self._peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._unary()
            node = (lambda t, a=node, b=rhs: a(t) * b(t)) if op == "*" else (lambda t, a=node, b=rhs: a(t) / b(t))
        return node

    def _unary(self):
        # exponentiation binds tighter than unary minus: -t^2 == -(t^2)
        sign = 1.0
        while self._peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        node = self._power()
        if sign < 0:
            return lambda t, a=node: -a(t)
        return node

    def _power(self):
        base = self._primary()
        if self._peek() == "^":
            self.pos += 1
            exponent = self._unary()  # right-associative; allows 2^-1
            return lambda t, a=base, b=exponent: np.power(a(t), b(t))
        return base

    def _primary(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            node = self._expr()
            if self._peek() != ")":
                raise ValueError("unbalanced parentheses")
            self.pos += 1
            return node
        if ch.isdigit() or ch == ".":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] in ".eE"):
                if self.text[self.pos] in "eE" and self.pos + 1 < len(self.text) and self.text[self.pos + 1] in "+-":
                    self.pos += 1
                self.pos += 1
            value = float(self.text[start:self.pos])
            return lambda t, v=value: v * np.ones_like(np.asarray(t, dtype=float))
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isalpha():
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "t":
                return lambda t: np.asarray(t, dtype=float)
            if name == "pi":
                return lambda t: math.pi * np.ones_like(np.asarray(t, dtype=float))
            if name in self._FUNCS:
                if self._peek() != "(":
                    raise ValueError(f"function {name!r} needs parentheses")
                self.pos += 1
                arg = self._expr()
                if self._peek() != ")":
                    raise ValueError("unbalanced parentheses")
                self.pos += 1
                return lambda t, fn=self._FUNCS[name], a=arg: fn(a(t))
            raise ValueError(f"unknown name {name!r}")
        raise ValueError(f"cannot parse expression at position {self.pos}")


def parse_expression(formula: str) -> RealFunction:
    """Compile an ``expr:`` formula into a value-only function."""
    node = _ExprParser(formula).parse()
    probe = node(np.array([0.1, 1.0]))  # fail fast on malformed formulas
    if not np.all(np.isfinite(np.asarray(probe, dtype=float))):
        raise ValueError(f"expression {formula!r} is non-finite on [0, 2*pi]")
    return RealFunction(fn=node, label=f"expr:{formula}", deriv_fn=None)


def make_function(spec: str) -> RealFunction:
    """Resolve a function name or an ``expr:<formula>`` specification."""
    if spec in REGISTRY:
        return REGISTRY[spec]()
    if spec.startswith("expr:"):
        return parse_expression(spec[len("expr:"):])
    raise ValueError(f"unknown function {spec!r} (try one of {', '.join(REGISTRY)} or expr:<formula>)")
