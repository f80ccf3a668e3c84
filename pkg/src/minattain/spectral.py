"""Dense spectral kernels.

Operator norm, minimum modulus, Hermitian eigendecomposition, positive
square root, polar decomposition and numerical-range computation for dense
matrices, plus exact interval numerical ranges for positive diagonal
families.

Every routine is a pure function of its inputs; attaining vectors are
phase-normalized and ties resolve to the decomposition's lowest index, so
results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonHermitianError,
    NotPositiveError,
    UnsupportedVariantError,
    ValidationError,
)
from .operators import (
    DenseOperator,
    Diagonal,
    UnitVector,
    as_matrix,
    phase_normalize,
)

#: Relative Frobenius tolerance for treating an input as self-adjoint.
HERMITIAN_RTOL = 1e-9

#: Relative threshold separating round-off negatives from indefiniteness.
SQRT_CLAMP_RTOL = 1e-6

#: Default angular resolution for sampled numerical-range boundaries.
DEFAULT_GRID = 360

#: Dense dimension cap enforced by the command-line front end.
DEFAULT_DIMENSION_CAP = 2048


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Singular value decomposition products, with eigendata for Hermitian input.

    ``singular_values`` are nonnegative and descending; columns of
    ``left_vectors`` / ``right_vectors`` are the matched singular vectors.
    ``eigenvalues`` (ascending, with ``eigenvectors``) are filled only when
    the decomposition came from a Hermitian matrix.
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    eigenvalues: np.ndarray | None = None
    eigenvectors: np.ndarray | None = None

    def __post_init__(self):
        s = np.asarray(self.singular_values, dtype=np.float64)
        if s.ndim != 1 or np.any(s < 0):
            raise ValidationError("singular values must be a 1-d nonnegative array")
        if np.any(np.diff(s) > 1e-12 * max(1.0, float(s[0]) if s.size else 1.0)):
            raise ValidationError("singular values must be sorted descending")
        object.__setattr__(self, "singular_values", _freeze(s))
        object.__setattr__(self, "left_vectors", _freeze(np.asarray(self.left_vectors)))
        object.__setattr__(self, "right_vectors", _freeze(np.asarray(self.right_vectors)))
        if self.eigenvalues is not None:
            w = np.asarray(self.eigenvalues, dtype=np.float64)
            if np.any(np.diff(w) < -1e-12 * max(1.0, float(np.max(np.abs(w))))):
                raise ValidationError("eigenvalues must be sorted ascending")
            object.__setattr__(self, "eigenvalues", _freeze(w))
            object.__setattr__(self, "eigenvectors", _freeze(np.asarray(self.eigenvectors)))


def _phase_align(u: np.ndarray, vh: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Rotate each singular pair so the right vector is phase-normalized;
    # applying the same rotation to the left column preserves U S V*.
    u = u.copy()
    vh = vh.copy()
    for i in range(vh.shape[0]):
        v = vh[i].conj()
        idx = np.flatnonzero(np.abs(v) > 1e-10)
        if idx.size == 0:
            continue
        pivot = v[idx[0]]
        scale = np.conj(pivot) / abs(pivot)
        vh[i] = (v * scale).conj()
        u[:, i] = u[:, i] * np.conj(scale)
    return u, vh


def svd_data(op) -> SpectralData:
    """Thin singular value decomposition with deterministic phases."""
    a = as_matrix(op)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    u, vh = _phase_align(u, vh)
    return SpectralData(s, u, vh.conj().T)


def operator_norm(op) -> tuple[float, UnitVector]:
    """Largest singular value and a unit vector attaining it."""
    a = as_matrix(op)
    _, s, vh = np.linalg.svd(a, full_matrices=False)
    idx = int(np.argmax(s))
    return float(s[idx]), UnitVector(vh[idx].conj())


def min_modulus(op) -> tuple[float, UnitVector]:
    """Infimum of ||T x|| over unit x, with an attaining unit vector.

    Equals the square root of the smallest eigenvalue of T*T; in finite
    dimension the infimum is always attained. Among equal minimal singular
    values the decomposition's lowest-index vector is returned.
    """
    a = as_matrix(op)
    m, n = a.shape
    _, s, vh = np.linalg.svd(a, full_matrices=n > m)
    padded = np.concatenate([s, np.zeros(n - s.size)])
    idx = int(np.argmin(padded))
    return float(padded[idx]), UnitVector(vh[idx].conj())


def is_hermitian(op, rtol: float = HERMITIAN_RTOL) -> bool:
    a = as_matrix(op)
    if a.shape[0] != a.shape[1]:
        return False
    scale = max(1.0, float(np.linalg.norm(a)))
    return float(np.linalg.norm(a - a.conj().T)) <= rtol * scale


def hermitian_eig(op) -> SpectralData:
    """Eigendecomposition of a (numerically) self-adjoint matrix.

    Eigenvalues come back ascending with orthonormal, phase-normalized
    eigenvectors; the singular data fields hold |eigenvalue| descending with
    matched left/right vectors.
    """
    a = as_matrix(op)
    if not is_hermitian(a):
        raise NonHermitianError("input is not self-adjoint to tolerance")
    h = (a + a.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    v = np.column_stack([phase_normalize(v[:, i]) for i in range(v.shape[1])])
    order = np.argsort(-np.abs(w), kind="stable")
    s = np.abs(w)[order]
    right = v[:, order]
    signs = np.where(w[order] < 0, -1.0, 1.0)
    left = right * signs
    return SpectralData(s, left, right, eigenvalues=w, eigenvectors=v)


def positive_sqrt(op, mode: str = "auto") -> DenseOperator:
    """Positive square root associated with ``op``.

    mode="gram" returns (T*T)^(1/2), defined for every matrix and
    satisfying ||T x|| = ||(T*T)^(1/2) x|| for all x. mode="direct" treats
    the input itself as a positive operator and returns its root; round-off
    eigenvalues down to -SQRT_CLAMP_RTOL (relative) are clamped to zero and
    anything lower raises. mode="auto" picks "direct" exactly when the
    input is Hermitian positive semidefinite to that threshold.
    """
    a = as_matrix(op)
    if mode not in ("auto", "gram", "direct"):
        raise ValidationError(f"unknown mode {mode!r}")
    if mode != "gram":
        hermitian = a.shape[0] == a.shape[1] and is_hermitian(a)
        if mode == "direct" and not hermitian:
            raise NonHermitianError("direct square root needs a self-adjoint input")
        if hermitian:
            h = (a + a.conj().T) / 2.0
            w, v = np.linalg.eigh(h)
            scale = max(1.0, float(np.max(np.abs(w))))
            if w[0] >= -SQRT_CLAMP_RTOL * scale:
                w = np.clip(w, 0.0, None)
                root = (v * np.sqrt(w)) @ v.conj().T
                return DenseOperator((root + root.conj().T) / 2.0)
            if mode == "direct":
                raise NotPositiveError(
                    f"eigenvalue {w[0]:.3e} is below the positivity threshold"
                )
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    v = vh.conj().T
    p = (v * s) @ vh
    return DenseOperator((p + p.conj().T) / 2.0)


def polar_decomposition(op) -> tuple[DenseOperator, DenseOperator]:
    """T = U P with U unitary and P the positive square root of T*T.

    A finite square matrix always admits a unitary factor: kernel
    directions of P are completed through the matched singular-vector
    pairs, which is the only place the factorization is not unique.
    """
    a = as_matrix(op)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("polar decomposition needs a square operator")
    u, s, vh = np.linalg.svd(a)
    unitary = u @ vh
    p = (vh.conj().T * s) @ vh
    return DenseOperator(unitary), DenseOperator((p + p.conj().T) / 2.0)


@dataclass(frozen=True)
class RangeDescriptor:
    """Numerical range as a sampled boundary or an exact real interval."""

    kind: str
    lo: float | None = None
    hi: float | None = None
    lo_open: bool = False
    hi_open: bool = False
    points: tuple[tuple[float, complex], ...] = ()

    def __post_init__(self):
        if self.kind not in ("interval", "boundary"):
            raise ValidationError(f"unknown range descriptor kind {self.kind!r}")
        if self.kind == "interval":
            if self.lo is None or self.hi is None or self.lo > self.hi:
                raise ValidationError("interval needs lo <= hi")

    @classmethod
    def interval(cls, lo: float, hi: float, lo_open: bool, hi_open: bool) -> "RangeDescriptor":
        return cls("interval", lo=float(lo), hi=float(hi), lo_open=lo_open, hi_open=hi_open)

    @classmethod
    def boundary(cls, points) -> "RangeDescriptor":
        return cls("boundary", points=tuple((float(t), complex(p)) for t, p in points))

    def to_dict(self) -> dict:
        if self.kind == "interval":
            return {"lo": self.lo, "hi": self.hi, "lo_open": self.lo_open, "hi_open": self.hi_open}
        return {
            "kind": "boundary",
            "points": [[t, p.real, p.imag] for t, p in self.points],
        }

    def csv_rows(self) -> list[tuple[float, float, float]]:
        if self.kind != "boundary":
            raise ValidationError("only sampled boundaries export to CSV")
        return [(t, p.real, p.imag) for t, p in self.points]


def numerical_range_boundary(op, grid: int = DEFAULT_GRID) -> RangeDescriptor:
    """Support points of the numerical range from a uniform angle grid.

    For each angle the top eigenvector v of the Hermitian part of
    exp(i*theta)*T contributes the point <T v, v>. The numerical range is
    convex, so the samples trace its boundary.
    """
    a = as_matrix(op)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("numerical range needs a square operator")
    if grid < 8:
        raise ValidationError("grid must be at least 8")
    points = []
    for k in range(grid):
        theta = 2.0 * np.pi * k / grid
        rotated = np.exp(1j * theta) * a
        h = (rotated + rotated.conj().T) / 2.0
        _, v = np.linalg.eigh(h)
        top = v[:, -1]
        points.append((theta, complex(top.conj() @ a @ top)))
    return RangeDescriptor.boundary(points)


def hermitian_interval(op) -> RangeDescriptor:
    """Exact closed numerical range [min eig, max eig] of a Hermitian matrix."""
    data = hermitian_eig(op)
    w = data.eigenvalues
    return RangeDescriptor.interval(float(w[0]), float(w[-1]), False, False)


def structured_range(op) -> RangeDescriptor:
    """Exact interval numerical range of a positive diagonal family.

    Endpoint openness records whether the infimum / supremum of the weight
    sequence is attained by some weight.
    """
    if not isinstance(op, Diagonal):
        raise UnsupportedVariantError("exact ranges are available for diagonal variants only")
    lo, lo_att, _ = op.weights.infimum()
    hi, hi_att, _ = op.weights.supremum()
    if lo < 0:
        raise NotPositiveError("structured ranges need nonnegative weights")
    return RangeDescriptor.interval(lo, hi, not lo_att, not hi_att)
