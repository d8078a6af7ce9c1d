r"""Dense complex matrices: Hermitian spectral decomposition, singular values,
functional calculus and random unitaries.

Matrices are plain :class:`numpy.ndarray` objects of complex dtype. Every
function here is pure; nothing is cached between calls.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PreconditionError

DEFAULT_GROUP_TOL = 1e-8
HERMITIAN_TOL = 1e-12

__all__ = [
    "DEFAULT_GROUP_TOL",
    "SpectralDecomposition",
    "as_matrix",
    "check_hermitian",
    "hermitian_eig",
    "singular_values",
    "function_calculus",
    "random_unitary",
    "random_hermitian",
]


def as_matrix(T):
    """Return `T` as a finite 2-D complex array.

    Raises
    ------
    PreconditionError
        If `T` is not two-dimensional, is empty, or holds NaN/Inf.
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] < 1 or T.shape[1] < 1:
        raise PreconditionError(f"expected a non-empty 2-D matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise PreconditionError("matrix has non-finite entries")
    return T


def check_hermitian(A, tol=HERMITIAN_TOL):
    """Validate that `A` is square and Hermitian; return it symmetrized.

    The check is ``||A - A*||_F <= tol * (1 + ||A||_F)``.
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise PreconditionError(f"matrix must be square, got shape {A.shape}")
    scale = 1.0 + np.linalg.norm(A)
    if np.linalg.norm(A - A.conj().T) > tol * scale:
        raise PreconditionError("matrix is not Hermitian within tolerance")
    return 0.5 * (A + A.conj().T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues of a Hermitian matrix with their spectral projectors.

    Attributes
    ----------
    eigenvalues : ndarray
        Distinct eigenvalues, strictly descending.
    projectors : tuple of ndarray
        ``projectors[i]`` is the orthogonal projector onto the eigenspace
        of ``eigenvalues[i]``.
    multiplicities : tuple of int
        Rank of each projector.
    """

    eigenvalues: np.ndarray
    projectors: tuple
    multiplicities: tuple

    @property
    def dim(self):
        return int(sum(self.multiplicities))

    def reconstruct(self):
        """Return ``sum_i lambda_i P_i``."""
        return sum(lam * P for lam, P in zip(self.eigenvalues, self.projectors))


def hermitian_eig(A, group_tol=DEFAULT_GROUP_TOL):
    r"""Spectral decomposition of a Hermitian matrix with eigenvalue grouping.

    Raw eigenvalues are sorted in descending order and any two neighbours
    closer than ``group_tol * (1 + ||A||_F)`` are put in the same cluster
    (single linkage). Each cluster is represented by its mean and by the sum
    of the rank-one projectors of its eigenvectors.

    Parameters
    ----------
    A : array_like
        Square Hermitian matrix.
    group_tol : float, optional
        Relative clustering tolerance, default 1e-8.

    Returns
    -------
    SpectralDecomposition
    """
    if group_tol < 0:
        raise PreconditionError("group_tol must be nonnegative")
    A = check_hermitian(A)
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    # eigh returns ascending order
    w = w[::-1]
    V = V[:, ::-1]
    threshold = group_tol * (1.0 + np.linalg.norm(A))

    clusters = [[0]]
    for k in range(1, len(w)):
        if w[clusters[-1][-1]] - w[k] <= threshold:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    eigenvalues = np.array([w[c].mean() for c in clusters])
    projectors = []
    for c in clusters:
        Vc = V[:, c]
        projectors.append(Vc @ Vc.conj().T)
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        projectors=tuple(projectors),
        multiplicities=tuple(len(c) for c in clusters),
    )


def singular_values(T):
    """Singular values of `T` in descending order, ``min(rows, cols)`` of them."""
    T = as_matrix(T)
    try:
        return np.linalg.svd(T, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc


def function_calculus(A, f, group_tol=DEFAULT_GROUP_TOL):
    """Evaluate ``f(A) = sum_i f(lambda_i) P_i`` for Hermitian `A`.

    `f` is any scalar callable; a :class:`~schatten_embed.divdiff.SymbolFunction`
    works directly.
    """
    spec = hermitian_eig(A, group_tol)
    out = np.zeros((spec.dim, spec.dim), dtype=complex)
    for lam, P in zip(spec.eigenvalues, spec.projectors):
        out += f(float(lam)) * P
    return out


def random_unitary(dim, seed):
    """Haar-distributed unitary of size `dim`, deterministic in `seed`.

    QR of a complex Ginibre matrix with the phases of ``diag(R)`` divided out.
    """
    if dim < 1:
        raise PreconditionError("dim must be positive")
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hermitian(dim, rng, scale=1.0):
    """Random Hermitian matrix (GUE-like) drawn from a numpy Generator."""
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * 0.5 * (Z + Z.conj().T)
