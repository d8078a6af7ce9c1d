r"""Explicit isometric embeddings between :math:`\ell_p^n` and Schatten classes.

A map is stored through the images of the domain basis vectors. Matrix
domains are indexed row-major, so basis vector ``k`` of an ``m x m`` domain
is the matrix unit :math:`E_{ij}` with ``k = i*m + j``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PreconditionError
from .schatten import parse_exponent, schatten_norm, vector_pnorm

__all__ = [
    "Kind",
    "Field",
    "SpaceSpec",
    "EmbeddingMap",
    "IsometryVerdict",
    "element_norm",
    "apply",
    "compose",
    "diag_embedding",
    "corner_embedding",
    "sum_diff_embedding",
    "first_row_embedding",
    "vec_embedding",
    "s2_to_sp_embedding",
    "cubature_embedding_2_4_3",
    "verify_isometry",
    "lambda_bound",
]


class Kind(str, enum.Enum):
    VECTOR = "VECTOR"
    MATRIX = "MATRIX"


class Field(str, enum.Enum):
    REAL = "REAL"
    COMPLEX = "COMPLEX"
    QUATERNION = "QUATERNION"

    @classmethod
    def parse(cls, token):
        if isinstance(token, cls):
            return token
        aliases = {"R": cls.REAL, "C": cls.COMPLEX, "H": cls.QUATERNION}
        key = str(token).strip().upper()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise PreconditionError(f"unknown field {token!r}") from None


@dataclass(frozen=True)
class SpaceSpec:
    """A finite-dimensional (quasi-)normed space.

    ``VECTOR`` is :math:`\\ell_p^{dim}` over `field`; ``MATRIX`` is the
    Schatten class :math:`S_p^{dim}` of complex ``dim x dim`` matrices.
    """

    kind: Kind
    dim: int
    exponent: float
    field: Field = Field.COMPLEX

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "field", Field.parse(self.field))
        object.__setattr__(self, "exponent", parse_exponent(self.exponent))
        if int(self.dim) != self.dim or self.dim < 1:
            raise PreconditionError(f"dim must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.field is Field.QUATERNION:
            raise PreconditionError("quaternionic spaces are not supported")
        if self.kind is Kind.MATRIX and self.field is not Field.COMPLEX:
            raise PreconditionError("matrix spaces are complex")

    @property
    def shape(self):
        return (self.dim,) if self.kind is Kind.VECTOR else (self.dim, self.dim)

    @property
    def basis_size(self):
        return self.dim if self.kind is Kind.VECTOR else self.dim**2

    @property
    def dtype(self):
        return float if self.field is Field.REAL else complex


def vector_space(dim, p, field=Field.COMPLEX):
    return SpaceSpec(Kind.VECTOR, dim, p, field)


def matrix_space(dim, p):
    return SpaceSpec(Kind.MATRIX, dim, p, Field.COMPLEX)


def element_norm(space, x):
    """Norm of `x` in `space`: vector p-norm or Schatten p-norm."""
    if space.kind is Kind.VECTOR:
        return vector_pnorm(x, space.exponent)
    return schatten_norm(x, space.exponent)


@dataclass(frozen=True)
class EmbeddingMap:
    """Linear map given by the images of the domain basis.

    ``basis_images`` has shape ``(domain.basis_size, *codomain.shape)``.
    """

    domain: SpaceSpec
    codomain: SpaceSpec
    basis_images: np.ndarray
    name: str = ""

    def __post_init__(self):
        images = np.asarray(self.basis_images, dtype=self.codomain.dtype)
        expected = (self.domain.basis_size,) + self.codomain.shape
        if images.shape != expected:
            raise PreconditionError(
                f"basis_images has shape {images.shape}, expected {expected}"
            )
        if not np.all(np.isfinite(images)):
            raise PreconditionError("basis images must be finite")
        images.setflags(write=False)
        object.__setattr__(self, "basis_images", images)

    def __call__(self, x):
        return apply(self, x)


def apply(emb, x):
    """Image of `x` under `emb`: ``sum_k x_k * basis_images[k]``."""
    x = np.asarray(x)
    if x.shape != emb.domain.shape:
        raise PreconditionError(
            f"element has shape {x.shape}, domain expects {emb.domain.shape}"
        )
    if emb.domain.field is Field.REAL:
        if np.iscomplexobj(x) and np.any(x.imag != 0):
            raise PreconditionError("complex element given for a real domain")
        x = x.real
    coeffs = x.reshape(-1)
    return np.tensordot(coeffs, emb.basis_images, axes=1)


def compose(outer, inner, name=""):
    """The map ``outer o inner``; the inner codomain must match the outer domain shape."""
    if (inner.codomain.kind, inner.codomain.dim) != (outer.domain.kind, outer.domain.dim):
        raise PreconditionError("codomain of inner map does not match domain of outer map")
    images = np.stack([apply(outer, img) for img in inner.basis_images])
    return EmbeddingMap(inner.domain, outer.codomain, images, name=name)


def _matrix_units(n, positions):
    images = np.zeros((len(positions), n, n), dtype=complex)
    for k, (i, j) in enumerate(positions):
        images[k, i, j] = 1.0
    return images


def diag_embedding(m, p, domain_exponent=None):
    """``l_p^m(C) -> S_p^m``, ``e_k -> E_kk``.

    `domain_exponent` overrides the exponent of the domain; this builds the
    same linear map between spaces where it is not isometric, which is
    useful as a negative control.
    """
    q = p if domain_exponent is None else domain_exponent
    images = _matrix_units(m, [(k, k) for k in range(m)])
    return EmbeddingMap(vector_space(m, q), matrix_space(m, p), images, name="diag")


def corner_embedding(m, n, p):
    """``S_p^m -> S_p^n`` placing the matrix in the top-left block."""
    if m < 1 or m > n:
        raise PreconditionError(f"corner embedding needs 1 <= m <= n, got m={m}, n={n}")
    positions = [(i, j) for i in range(m) for j in range(m)]
    images = _matrix_units(n, positions)
    return EmbeddingMap(matrix_space(m, p), matrix_space(n, p), images, name="corner")


def sum_diff_embedding(n):
    """``l_1^2(R) -> l_inf^n(R)``, ``(x, y) -> (x - y, x + y, 0, ..., 0)``."""
    if n < 2:
        raise PreconditionError(f"sum_diff_embedding needs n >= 2, got {n}")
    images = np.zeros((2, n))
    images[0, :2] = (1.0, 1.0)
    images[1, :2] = (-1.0, 1.0)
    return EmbeddingMap(
        vector_space(2, 1.0, Field.REAL),
        vector_space(n, math.inf, Field.REAL),
        images,
        name="sumdiff",
    )


def first_row_embedding(m, p):
    """``l_2^{m^2}(C) -> S_p^{m^2}``, placing the vector in the first row.

    The image is rank one with single singular value ``||a||_2``, so the map
    is isometric for every ``p``.
    """
    if m < 1:
        raise PreconditionError("m must be positive")
    n = m * m
    images = _matrix_units(n, [(0, k) for k in range(n)])
    return EmbeddingMap(vector_space(n, 2.0), matrix_space(n, p), images, name="firstrow")


def vec_embedding(m):
    """``S_2^m -> l_2^{m^2}(C)``, row-major flattening."""
    if m < 1:
        raise PreconditionError("m must be positive")
    images = np.eye(m * m, dtype=complex)
    return EmbeddingMap(matrix_space(m, 2.0), vector_space(m * m, 2.0), images, name="vec")


def s2_to_sp_embedding(m, p):
    """``S_2^m -> S_p^{m^2}``: flatten, then place in the first row."""
    return compose(first_row_embedding(m, p), vec_embedding(m), name="s2sp")


CUBATURE_2_4_3_SCALE = (8.0 / 9.0) ** 0.25


def cubature_embedding_2_4_3():
    """``l_2^2(R) -> l_4^3(R)`` through three directions at 60 degrees.

    ``u -> c * (<u, v_0>, <u, v_1>, <u, v_2>)`` with
    ``v_k = (cos(k pi/3), sin(k pi/3))`` and ``c = (8/9)**(1/4)``; isometric
    because ``sum_k cos(theta - k pi/3)**4 = 9/8`` for all ``theta``.
    """
    angles = np.arange(3) * np.pi / 3
    directions = np.stack([np.cos(angles), np.sin(angles)])  # row i: i-th coordinate of each v_k
    images = CUBATURE_2_4_3_SCALE * directions
    return EmbeddingMap(
        vector_space(2, 2.0, Field.REAL),
        vector_space(3, 4.0, Field.REAL),
        images,
        name="cubature243",
    )


@dataclass(frozen=True)
class IsometryVerdict:
    max_relative_residual: float
    passed: bool
    sample_count: int
    seed: int


def _sample(space, rng):
    shape = space.shape
    x = rng.standard_normal(shape)
    if space.field is Field.COMPLEX:
        x = x + 1j * rng.standard_normal(shape)
    return x


def verify_isometry(emb, sample_count=200, seed=0, tol=1e-9):
    """Compare domain and codomain norms on seeded random elements.

    The first probe is the all-ones element, the rest are Gaussian. The
    residual of a probe ``x`` is ``| ||T x|| - ||x|| | / ||x||``.
    """
    if sample_count < 1:
        raise PreconditionError("sample_count must be at least 1")
    rng = np.random.default_rng(seed)
    probes = [np.ones(emb.domain.shape, dtype=emb.domain.dtype)]
    probes += [_sample(emb.domain, rng) for _ in range(sample_count - 1)]
    worst = 0.0
    for x in probes:
        nx = element_norm(emb.domain, x)
        ny = element_norm(emb.codomain, apply(emb, x))
        worst = max(worst, abs(ny - nx) / nx)
    return IsometryVerdict(worst, bool(worst <= tol), sample_count, seed)


def lambda_bound(m, p, field):
    """Exact dimension bound ``Lambda(m, p)`` for ``l_2^m -> l_p^n`` embeddings.

    Integer arithmetic only. `field` is ``REAL``, ``COMPLEX`` or
    ``QUATERNION`` (aliases ``R``, ``C``, ``H``).

    Raises
    ------
    PreconditionError
        If ``m < 2`` or ``p`` is not a positive even integer.
    NumericalError
        If the quaternionic formula does not come out integral.
    """
    field = Field.parse(field)
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise PreconditionError(f"m must be an integer >= 2, got {m}")
    if isinstance(p, bool) or int(p) != p or p <= 0 or int(p) % 2:
        raise PreconditionError(f"p must be a positive even integer, got {p}")
    m, p = int(m), int(p)
    half = p // 2
    if field is Field.REAL:
        return math.comb(m + p - 1, m - 1)
    if field is Field.COMPLEX:
        return math.comb(m + half - 1, m - 1) ** 2
    num = math.comb(2 * m + half - 2, 2 * m - 2) * math.comb(2 * m + half - 1, 2 * m - 2)
    value, rem = divmod(num, 2 * m - 1)
    if rem:
        raise NumericalError(f"quaternionic bound {num}/{2 * m - 1} is not an integer")
    return value
