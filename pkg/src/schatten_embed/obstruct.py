r"""Numerical checks that a candidate map :math:`T:\ell_q^2 \to S_p^n` is not an isometry.

The candidate is doubled into a Hermitian pair

.. math::

    A = 2^{-1/p}\begin{bmatrix}0 & T e_1\\ (T e_1)^* & 0\end{bmatrix},\qquad
    B = 2^{-1/p}\begin{bmatrix}0 & T e_2\\ (T e_2)^* & 0\end{bmatrix},

for which an isometric `T` forces :math:`(1+|t|^q)^{p/q} = \|A+tB\|_p^p`
for all real `t`. Two tests are run against that identity: a direct
comparison on a grid of `t` values, and a comparison of second derivatives
at ``t = 0`` (the left side has none when ``1 < q < 2``, vanishes for
``q > 2`` and equals ``p`` for ``q = 2``).
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .embed import EmbeddingMap, Kind
from .errors import NumericalError, PreconditionError
from .matcore import check_hermitian
from .moi import second_derivative_schatten
from .schatten import parse_exponent, schatten_norm

DEFAULT_T_GRID = tuple(
    sorted({0.0} | {s * t for t in (1e-4, 1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0) for s in (-1, 1)})
)
DEFAULT_TOL = 1e-6
# weight of the extrapolation tie-break in trajectory matching
_TIE_BREAK_WEIGHT = 1e-9
_FORBIDDEN = 1e300

__all__ = [
    "DEFAULT_T_GRID",
    "Verdict",
    "CandidatePair",
    "ResidualRow",
    "D2Comparison",
    "ObstructionReport",
    "double_map",
    "scalar_identity_residual",
    "eigenvalue_curves",
    "second_derivative_obstruction",
    "check_candidate",
]


class Verdict(str, enum.Enum):
    CONSISTENT = "CONSISTENT"
    FAILS_SCALAR_IDENTITY = "FAILS_SCALAR_IDENTITY"
    FAILS_D2_DIVERGENCE = "FAILS_D2_DIVERGENCE"
    FAILS_D2_NONZERO = "FAILS_D2_NONZERO"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class CandidatePair:
    """Hermitian pair ``(A, B)`` with the exponents ``q`` (domain) and ``p`` (codomain)."""

    A: np.ndarray
    B: np.ndarray
    q: float
    p: float

    def __post_init__(self):
        A = check_hermitian(self.A)
        B = check_hermitian(self.B)
        if A.shape != B.shape:
            raise PreconditionError(f"A and B differ in shape: {A.shape} vs {B.shape}")
        q = parse_exponent(self.q)
        if math.isinf(q):
            raise PreconditionError("q must be finite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", parse_exponent(self.p))


@dataclass(frozen=True)
class ResidualRow:
    t: float
    target: float
    actual: float
    residual: float


@dataclass(frozen=True)
class D2Comparison:
    """Second-derivative comparison at ``t = 0``; ``target`` is ``inf`` when it diverges."""

    target: float
    actual: float
    consistent: bool

    @property
    def diverges(self):
        return math.isinf(self.target)


@dataclass(frozen=True)
class ObstructionReport:
    q: float
    p: float
    residual_profile: list
    max_residual: float
    d2_actual: float | None
    d2_target: float | None
    verdict: Verdict
    tol: float
    notes: list = field(default_factory=list)


def double_map(T):
    """Hermitian pair ``(A, B) = (J(e_1), J(e_2))`` of a map ``l_q^2 -> S_p^n``."""
    if not isinstance(T, EmbeddingMap):
        raise PreconditionError("double_map expects an EmbeddingMap")
    if T.domain.kind is not Kind.VECTOR or T.domain.dim != 2:
        raise PreconditionError("candidate domain must be the 2-dimensional sequence space")
    if T.codomain.kind is not Kind.MATRIX:
        raise PreconditionError("candidate codomain must be a Schatten class")
    p = T.codomain.exponent
    if math.isinf(p):
        raise PreconditionError("the doubling construction is undefined for p = inf")
    n = T.codomain.dim
    scale = 2.0 ** (-1.0 / p)

    def J(M):
        out = np.zeros((2 * n, 2 * n), dtype=complex)
        out[:n, n:] = M
        out[n:, :n] = M.conj().T
        return scale * out

    return CandidatePair(J(T.basis_images[0]), J(T.basis_images[1]), T.domain.exponent, p)


def _target(q, p, t):
    base = 1.0 + abs(t) ** q
    return base ** (1.0 / q) if math.isinf(p) else base ** (p / q)


def scalar_identity_residual(pair, t_grid=DEFAULT_T_GRID):
    """Compare ``(1+|t|^q)^(p/q)`` with ``||A + tB||_p^p`` on `t_grid`.

    For ``p = inf`` the norm form ``(1+|t|^q)^(1/q)`` vs ``||A + tB||`` is used.
    Rows come back sorted by ``t``; ``residual = |target - actual| / (1 + |target|)``.
    """
    rows = []
    for t in sorted(float(t) for t in t_grid):
        target = _target(pair.q, pair.p, t)
        norm = schatten_norm(pair.A + t * pair.B, pair.p)
        actual = norm if math.isinf(pair.p) else norm**pair.p
        rows.append(ResidualRow(t, target, actual, abs(target - actual) / (1.0 + abs(target))))
    return rows


def eigenvalue_curves(pair, t_grid):
    """Eigenvalue trajectories of ``A + tB`` over an increasing grid.

    Returns an array of shape ``(len(t_grid), 2n)``; column ``i`` is one
    trajectory. Eigenvalues at consecutive grid points are matched by the
    assignment with least total absolute displacement among those moving no
    eigenvalue by more than ``||B|| * dt``. Ties, which are common for this
    cost (e.g. at crossings), go to the assignment closest to a linear
    extrapolation of the previous two points.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise PreconditionError("t_grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t) <= 0):
        raise PreconditionError("t_grid must be strictly increasing")
    b_norm = np.linalg.norm(pair.B, 2)
    curves = np.empty((t.size, pair.A.shape[0]))
    curves[0] = np.linalg.eigvalsh(pair.A + t[0] * pair.B)
    for k in range(1, t.size):
        new = np.linalg.eigvalsh(pair.A + t[k] * pair.B)
        prev = curves[k - 1]
        if k >= 2:
            slope = (curves[k - 1] - curves[k - 2]) / (t[k - 1] - t[k - 2])
            predicted = prev + slope * (t[k] - t[k - 1])
        else:
            predicted = prev
        disp = np.abs(prev[:, None] - new[None, :])
        miss = np.abs(predicted[:, None] - new[None, :])
        cost = disp + _TIE_BREAK_WEIGHT * miss
        # Weyl: no eigenvalue moves further than ||B|| dt; the sorted matching always
        # respects this and is displacement-optimal, so the constraint loses nothing
        reach = b_norm * (t[k] - t[k - 1]) * (1 + 1e-12) + 1e-12 * (1.0 + np.abs(prev).max())
        cost[disp > reach] = _FORBIDDEN
        rows, cols = linear_sum_assignment(cost)
        curves[k, rows] = new[cols]
    return curves


def second_derivative_obstruction(pair, tol=DEFAULT_TOL):
    """Second derivatives at ``t = 0`` of both sides of the scalar identity.

    The target is ``inf`` (divergent) for ``q < 2``, ``p`` for ``q == 2``
    and ``0`` for ``q > 2``; the actual value comes from the trace formula.
    """
    p = pair.p
    if math.isinf(p) or p < 2:
        raise PreconditionError(f"the derivative test needs finite p >= 2, got {p}")
    q = pair.q
    actual = second_derivative_schatten(pair.A, pair.B, p)
    if q < 2:
        return D2Comparison(math.inf, actual, False)
    target = float(p) if q == 2 else 0.0
    return D2Comparison(target, actual, abs(actual - target) <= tol * (1.0 + abs(target)))


def check_candidate(T, t_grid=DEFAULT_T_GRID, tol=DEFAULT_TOL):
    """Run the doubling, grid and derivative tests on a candidate isometry.

    Verdict order: ``FAILS_D2_DIVERGENCE`` (depends only on the exponents,
    ``1 < q < 2 <= p < inf``), then ``FAILS_SCALAR_IDENTITY``, then
    ``FAILS_D2_NONZERO``. ``INCONCLUSIVE`` is returned when the derivative
    computation itself fails numerically.
    """
    pair = double_map(T)
    q, p = pair.q, pair.p
    rows = scalar_identity_residual(pair, t_grid)
    max_residual = max(r.residual for r in rows)
    notes = []

    d2 = None
    d2_failed = False
    if not math.isinf(p) and p >= 2 and q > 1:
        try:
            d2 = second_derivative_obstruction(pair, tol)
        except NumericalError as exc:
            d2_failed = True
            notes.append(f"second derivative unavailable: {exc}")
    else:
        notes.append("derivative test not applicable for these exponents")

    if d2 is not None and d2.diverges:
        verdict = Verdict.FAILS_D2_DIVERGENCE
    elif max_residual > tol:
        verdict = Verdict.FAILS_SCALAR_IDENTITY
    elif d2_failed:
        verdict = Verdict.INCONCLUSIVE
    elif d2 is not None and not d2.consistent:
        verdict = Verdict.FAILS_D2_NONZERO
    else:
        verdict = Verdict.CONSISTENT
    return ObstructionReport(
        q=q,
        p=p,
        residual_profile=rows,
        max_residual=max_residual,
        d2_actual=None if d2 is None else d2.actual,
        d2_target=None if d2 is None else d2.target,
        verdict=verdict,
        tol=tol,
        notes=notes,
    )
