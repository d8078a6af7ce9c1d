r"""Discrete multilinear operator integrals and the second derivative of
:math:`t \mapsto \|A+tB\|_p^p`.

For Hermitian anchors :math:`A_0,\dots,A_n` with spectral projectors
:math:`P^{(j)}_i` the operator integral is

.. math::

    T(B_1,\dots,B_n) = \sum_{i_0,\dots,i_n}
        f^{[n]}(\lambda^{(0)}_{i_0},\dots,\lambda^{(n)}_{i_n})\,
        P^{(0)}_{i_0} B_1 P^{(1)}_{i_1} \cdots B_n P^{(n)}_{i_n}.

It is evaluated by direct summation over index tuples, which is fine for
the matrix sizes this package targets (up to about 16).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .divdiff import SymbolFunction, abs_pow_symbol, divided_difference
from .errors import NumericalError, PreconditionError
from .matcore import DEFAULT_GROUP_TOL, as_matrix, check_hermitian, hermitian_eig
from .schatten import parse_exponent, schatten_norm

TRACE_IMAG_RTOL = 1e-9

__all__ = [
    "MoiProblem",
    "moi_apply",
    "second_derivative_schatten",
    "fd_second_derivative",
]


@dataclass(frozen=True)
class MoiProblem:
    """Input of a discrete multilinear operator integral of order ``n``.

    Parameters
    ----------
    anchors : sequence of ndarray
        ``n + 1`` Hermitian matrices ``A_0, ..., A_n``.
    perturbations : sequence of ndarray
        ``n`` matrices ``B_1, ..., B_n``.
    symbol : SymbolFunction
        Must expose derivatives up to order ``n``.
    """

    anchors: tuple
    perturbations: tuple
    symbol: SymbolFunction

    def __post_init__(self):
        anchors = tuple(check_hermitian(A) for A in self.anchors)
        perturbations = tuple(as_matrix(B) for B in self.perturbations)
        n = len(perturbations)
        if n < 1:
            raise PreconditionError("order must be at least 1")
        if len(anchors) != n + 1:
            raise PreconditionError(
                f"order {n} needs {n + 1} anchors, got {len(anchors)}"
            )
        shapes = {M.shape for M in anchors + perturbations}
        if len(shapes) != 1:
            raise PreconditionError(f"dimension mismatch: {sorted(shapes)}")
        if self.symbol.max_order < n:
            raise PreconditionError(
                f"symbol {self.symbol.name} has derivatives up to order "
                f"{self.symbol.max_order}, order {n} required"
            )
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "perturbations", perturbations)

    @property
    def order(self):
        return len(self.perturbations)


def moi_apply(problem, group_tol=DEFAULT_GROUP_TOL):
    """Evaluate the discrete multilinear operator integral of `problem`.

    Spectral data come from :func:`~schatten_embed.matcore.hermitian_eig`
    with `group_tol`, so divided differences only ever see exactly equal or
    well separated nodes.
    """
    specs = [hermitian_eig(A, group_tol) for A in problem.anchors]
    f = problem.symbol
    dim = problem.anchors[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for idx in itertools.product(*(range(len(s.eigenvalues)) for s in specs)):
        nodes = [float(s.eigenvalues[i]) for s, i in zip(specs, idx)]
        coef = divided_difference(f, nodes)
        if coef == 0.0:
            continue
        term = specs[0].projectors[idx[0]]
        for B, s, i in zip(problem.perturbations, specs[1:], idx[1:]):
            term = term @ B @ s.projectors[i]
        out += coef * term
    return out


def _finite_p(p, minimum=None):
    p = parse_exponent(p)
    if math.isinf(p):
        raise PreconditionError("a finite exponent is required")
    if minimum is not None and p < minimum:
        raise PreconditionError(f"exponent must be >= {minimum}, got {p}")
    return p


def second_derivative_schatten(A, B, p, group_tol=DEFAULT_GROUP_TOL):
    """Second derivative of ``t -> ||A + tB||_p^p`` at ``t = 0`` via the trace formula.

    Computes ``2 * Re Tr T(B, B)`` where ``T`` is the order-2 operator
    integral with anchors ``(A, A, A)`` and symbol ``|x|**p``. Requires
    Hermitian `A`, `B` and ``2 <= p < inf``.

    Raises
    ------
    PreconditionError
        For ``p < 2``, infinite ``p`` or non-Hermitian input.
    NumericalError
        If the trace has an imaginary part above ``1e-9 * (1 + |trace|)``.
    """
    p = _finite_p(p, minimum=2.0)
    A = check_hermitian(A)
    B = check_hermitian(B)
    problem = MoiProblem((A, A, A), (B, B), abs_pow_symbol(p))
    tr = np.trace(moi_apply(problem, group_tol))
    if abs(tr.imag) > TRACE_IMAG_RTOL * (1.0 + abs(tr)):
        raise NumericalError(f"trace has imaginary residue {tr.imag:.3e}")
    return 2.0 * float(tr.real)


def default_fd_step(A, B):
    """``1e-3 * (1 + ||A||) / (1 + ||B||)`` with operator norms."""
    return 1e-3 * (1.0 + schatten_norm(A, math.inf)) / (1.0 + schatten_norm(B, math.inf))


def fd_second_derivative(A, B, p, h=None):
    """Central second difference of ``g(t) = ||A + tB||_p^p`` at 0.

    Independent of the operator-integral machinery; used as its oracle.
    """
    p = _finite_p(p)
    A = as_matrix(A)
    B = as_matrix(B)
    if h is None:
        h = default_fd_step(A, B)
    if not h > 0:
        raise PreconditionError("step h must be positive")

    def g(t):
        return schatten_norm(A + t * B, p) ** p

    return (g(h) - 2.0 * g(0.0) + g(-h)) / h**2
