r"""Scalar symbols with derivative oracles and divided differences.

The divided difference follows the recursion with the first arguments held
fixed,

.. math::

    f^{[k]}(\lambda_0,\dots,\lambda_k) =
    \frac{f^{[k-1]}(\lambda_0,\dots,\lambda_{k-1})
          - f^{[k-1]}(\lambda_0,\dots,\lambda_{k-2},\lambda_k)}
         {\lambda_{k-1}-\lambda_k},

and, when :math:`\lambda_{k-1}=\lambda_k`, the partial derivative of
:math:`f^{[k-1]}` in its last slot. Derivatives of lower-order divided
differences in the last slot are propagated analytically, so only the
derivative oracles of `f` itself are ever evaluated.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .errors import PreconditionError

NODE_SNAP_RTOL = 1e-12

__all__ = [
    "SymbolFunction",
    "abs_pow_symbol",
    "polynomial_symbol",
    "divided_difference",
    "snap_nodes",
]


@dataclass(frozen=True)
class SymbolFunction:
    """A real function together with its first `max_order` derivatives.

    ``derivatives[k]`` evaluates the k-th derivative; ``derivatives[0]`` is
    the function itself. Instances are callable.
    """

    derivatives: Sequence[Callable[[float], float]]
    name: str = "f"
    params: dict = field(default_factory=dict, compare=False)

    @property
    def max_order(self):
        return len(self.derivatives) - 1

    def __call__(self, x):
        return self.derivatives[0](x)

    def derivative(self, x, order):
        if order > self.max_order:
            raise PreconditionError(
                f"{self.name} exposes derivatives up to order {self.max_order}, "
                f"order {order} requested"
            )
        return self.derivatives[order](x)


def abs_pow_symbol(p):
    """The symbol ``f(x) = |x|**p`` for finite ``p > 0``.

    Derivatives are exposed up to order 2 for ``p >= 2``, order 1 for
    ``1 < p < 2`` and none otherwise. At the origin ``f'(0) = 0`` and
    ``f''(0)`` is 2 for ``p == 2`` and 0 for ``p > 2``.
    """
    p = float(p)
    if not p > 0 or math.isinf(p):
        raise PreconditionError(f"abs_pow_symbol needs finite p > 0, got {p}")

    def f0(x):
        return abs(x) ** p

    def f1(x):
        if x == 0.0:
            return 0.0
        return p * abs(x) ** (p - 1) * math.copysign(1.0, x)

    def f2(x):
        if p == 2.0:
            return 2.0
        if x == 0.0:
            return 0.0
        return p * (p - 1) * abs(x) ** (p - 2)

    if p >= 2:
        derivs = (f0, f1, f2)
    elif p > 1:
        derivs = (f0, f1)
    else:
        derivs = (f0,)
    return SymbolFunction(derivs, name=f"|x|^{p:g}", params={"kind": "abs_pow", "p": p})


def polynomial_symbol(coeffs):
    """Polynomial ``sum_k coeffs[k] * x**k`` with exact derivatives.

    Derivatives are exposed up to order ``degree + 1`` (the last one is
    identically zero).
    """
    coeffs = [float(c) for c in coeffs] or [0.0]
    poly = Polynomial(coeffs)
    degree = len(coeffs) - 1
    derivs = tuple(_poly_eval(poly.deriv(k)) for k in range(degree + 2))
    return SymbolFunction(
        derivs, name=f"poly{tuple(coeffs)}", params={"kind": "poly", "coeffs": coeffs}
    )


def _poly_eval(poly):
    def ev(x):
        return float(poly(x))

    return ev


def snap_nodes(nodes, rtol=NODE_SNAP_RTOL):
    """Replace nodes that agree within ``rtol * (1 + max|node|)`` by their mean.

    Order is preserved; only values change.
    """
    x = np.asarray(nodes, dtype=float)
    if x.size < 2:
        return [float(v) for v in x]
    tol = rtol * (1.0 + np.max(np.abs(x)))
    order = np.argsort(x, kind="stable")
    out = x.copy()
    start = 0
    for k in range(1, len(order) + 1):
        if k == len(order) or x[order[k]] - x[order[k - 1]] > tol:
            group = order[start:k]
            if len(group) > 1:
                out[group] = x[group].mean()
            start = k
    return [float(v) for v in out]


def _last_slot_derivative(f, nodes, r):
    """r-th derivative of f^{[len(nodes)-1]} in its last argument."""
    if len(nodes) == 1:
        return f.derivative(nodes[0], r)
    prefix = nodes[:-2]
    a, x = nodes[-2], nodes[-1]

    def g(y, j):
        return _last_slot_derivative(f, prefix + [y], j)

    if a == x:
        # Taylor expansion of (g(a) - g(x))/(a - x) about x = a
        return g(a, r + 1) / (r + 1)
    h = (g(a, 0) - g(x, 0)) / (a - x)
    # differentiate h(x) (a - x) = g(a) - g(x) repeatedly
    for j in range(1, r + 1):
        h = (j * h - g(x, j)) / (a - x)
    return h


def divided_difference(f, nodes):
    """Divided difference ``f^{[k]}`` at ``k + 1`` nodes, repeats allowed.

    Nodes that coincide to within 1e-12 relative are first made exactly
    equal. A node repeated ``r`` times consumes derivatives of `f` up to
    order ``r - 1``.

    Parameters
    ----------
    f : SymbolFunction
    nodes : sequence of float

    Returns
    -------
    float

    Raises
    ------
    PreconditionError
        If `nodes` is empty or the repeats need derivatives that `f`
        does not expose.
    """
    nodes = snap_nodes(nodes)
    if not nodes:
        raise PreconditionError("divided_difference needs at least one node")
    if not all(math.isfinite(v) for v in nodes):
        raise PreconditionError("nodes must be finite")
    return float(_last_slot_derivative(f, nodes, 0))
