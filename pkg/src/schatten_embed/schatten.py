r"""Schatten p-norms of matrices and :math:`\ell_p` norms of vectors.

For ``0 < p < 1`` both functions return the quasi-norm
:math:`(\sum |a_k|^p)^{1/p}`; the names are kept uniform across all ``p``.
``p = math.inf`` selects the max / operator norm.
"""

import math

import numpy as np

from .errors import PreconditionError
from .matcore import singular_values

# singular values below this fraction of s_1 are treated as exact zeros
ZERO_SV_RTOL = 1e-14

__all__ = ["parse_exponent", "format_exponent", "schatten_norm", "vector_pnorm"]


def parse_exponent(p):
    """Validate an exponent: a positive real or infinity.

    Accepts numbers, numeric strings and the strings ``"inf"``/``"infinity"``.
    Returns a float, possibly ``math.inf``.
    """
    if isinstance(p, str):
        token = p.strip().lower()
        if token in ("inf", "infinity", "+inf"):
            return math.inf
        try:
            p = float(token)
        except ValueError:
            raise PreconditionError(f"not an exponent: {p!r}") from None
    if isinstance(p, bool):
        raise PreconditionError(f"not an exponent: {p!r}")
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise PreconditionError(f"not an exponent: {p!r}") from None
    if math.isnan(p) or p <= 0:
        raise PreconditionError(f"exponent must be positive, got {p}")
    return p


def format_exponent(p):
    """Inverse of :func:`parse_exponent` for JSON output."""
    return "inf" if math.isinf(p) else p


def _power_sum_norm(a, p):
    a = np.abs(np.asarray(a, dtype=complex).ravel())
    if a.size == 0:
        return 0.0
    top = a.max()
    if top == 0.0:
        return 0.0
    if math.isinf(p):
        return float(top)
    # factor out the max to avoid overflow for large p
    r = a / top
    return float(top * np.sum(r**p) ** (1.0 / p))


def schatten_norm(T, p):
    """Schatten p-norm ``(sum_k s_k(T)^p)^(1/p)``; largest singular value for p=inf.

    Parameters
    ----------
    T : array_like
        Any finite 2-D matrix.
    p : float or str
        Exponent in ``(0, inf]``.
    """
    p = parse_exponent(p)
    s = singular_values(T)
    if s[0] == 0.0:
        return 0.0
    s = np.where(s < ZERO_SV_RTOL * s[0], 0.0, s)
    return _power_sum_norm(s, p)


def vector_pnorm(v, p):
    """The :math:`\\ell_p` (quasi-)norm of a real or complex sequence."""
    p = parse_exponent(p)
    return _power_sum_norm(v, p)
