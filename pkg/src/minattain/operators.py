"""Operator and subspace representations.

Dense complex matrices acting between coordinate Hilbert spaces, symbolic
descriptions of structured l2 operator families with exact truncation to
finite sections, orthonormal frames for closed subspaces, and the basic
algebra (adjoint, composition, restriction).

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    RankDeficiencyError,
    TruncationError,
    UnsupportedVariantError,
    ValidationError,
)

#: Absolute tolerance for orthonormality checks on unit-scale data.
ORTHO_TOL = 1e-10

#: Entries smaller than this are skipped when picking the phase anchor.
PHASE_TOL = 1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _as_array(values, *, ndim: int) -> np.ndarray:
    """Coerce to a float64 or complex128 array, preserving realness."""
    a = np.asarray(values)
    if a.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-dimensional array, got shape {a.shape}")
    if a.size == 0:
        raise ValidationError("empty arrays are not valid operators or vectors")
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    a = np.array(a, dtype=dtype, order="C")
    if not np.all(np.isfinite(a)):
        raise ValidationError("entries must be finite")
    return a


def phase_normalize(v: np.ndarray, tol: float = PHASE_TOL) -> np.ndarray:
    """Rotate ``v`` so its first entry of modulus > tol is real and positive."""
    v = np.asarray(v)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v.copy()
    pivot = v[idx[0]]
    scale = np.conj(pivot) / abs(pivot)
    out = v * scale
    if np.iscomplexobj(out) and np.max(np.abs(out.imag)) == 0.0:
        out = out.real
    return out


# ---------------------------------------------------------------------------
# Dense operators and vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A finite matrix acting between coordinate Hilbert spaces.

    Entries are stored row-major as float64 (purely real input) or
    complex128. The array is made read-only at construction.
    """

    matrix: np.ndarray

    def __post_init__(self):
        a = _as_array(self.matrix, ndim=2)
        object.__setattr__(self, "matrix", _freeze(a))

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(x)

    def to_dict(self) -> dict:
        flat = self.matrix.reshape(-1)
        entries = [[float(np.real(z)), float(np.imag(z))] for z in flat]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_dict(cls, data: dict) -> "DenseOperator":
        rows = int(data["rows"])
        cols = int(data["cols"])
        entries = data["entries"]
        if len(entries) != rows * cols:
            raise ValidationError(
                f"expected {rows * cols} entries for a {rows}x{cols} operator, got {len(entries)}"
            )
        re_part = np.array([e[0] for e in entries], dtype=np.float64)
        im_part = np.array([e[1] for e in entries], dtype=np.float64)
        if np.any(im_part != 0.0):
            flat = re_part + 1j * im_part
        else:
            flat = re_part
        return cls(flat.reshape(rows, cols))


def as_matrix(op) -> np.ndarray:
    """Return the underlying 2-d array of a DenseOperator or array-like."""
    if isinstance(op, DenseOperator):
        return op.matrix
    return _as_array(op, ndim=2)


def identity(n: int) -> DenseOperator:
    if n < 1:
        raise ValidationError("identity needs n >= 1")
    return DenseOperator(np.eye(n))


def adjoint(op) -> DenseOperator:
    """Conjugate transpose."""
    return DenseOperator(as_matrix(op).conj().T)


def compose(a, b) -> DenseOperator:
    """Matrix product a @ b; inner dimensions must match."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape[1] != bm.shape[0]:
        raise DimensionMismatchError(
            f"cannot compose {am.shape} with {bm.shape}: inner dimensions differ"
        )
    return DenseOperator(am @ bm)


def matrix_power(op, k: int) -> DenseOperator:
    """k-th power by repeated composition (k = 0 gives the identity)."""
    a = as_matrix(op)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("powers need a square operator")
    if k < 0:
        raise ValidationError("power must be a nonnegative integer")
    out = np.eye(a.shape[0], dtype=a.dtype)
    for _ in range(k):
        out = out @ a
    return DenseOperator(out)


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A norm-one vector, phase-normalized for reproducibility."""

    coords: np.ndarray

    def __post_init__(self):
        v = _as_array(self.coords, ndim=1)
        nrm = float(np.linalg.norm(v))
        if nrm < 1e-12:
            raise ValidationError("cannot normalize a (numerically) zero vector")
        v = phase_normalize(v / nrm)
        object.__setattr__(self, "coords", _freeze(v))

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def to_pairs(self) -> list:
        return [[float(np.real(z)), float(np.imag(z))] for z in self.coords]

    @classmethod
    def from_pairs(cls, pairs) -> "UnitVector":
        re_part = np.array([p[0] for p in pairs], dtype=np.float64)
        im_part = np.array([p[1] for p in pairs], dtype=np.float64)
        v = re_part + 1j * im_part if np.any(im_part != 0.0) else re_part
        return cls(v)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A closed subspace given by an orthonormal frame.

    The frame columns form an isometric embedding E of the subspace
    coordinates into the ambient space, with E*E = I to ORTHO_TOL.
    """

    frame: np.ndarray

    def __post_init__(self):
        f = _as_array(self.frame, ndim=2)
        ambient, dim = f.shape
        if dim < 1:
            raise ValidationError("a subspace needs at least one frame vector")
        if ambient < dim:
            raise ValidationError("frame cannot have more vectors than ambient dimensions")
        gram = f.conj().T @ f
        if np.max(np.abs(gram - np.eye(dim))) > ORTHO_TOL:
            raise ValidationError("frame is not orthonormal to tolerance")
        object.__setattr__(self, "frame", _freeze(f))

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def pad(self, ambient: int) -> "Subspace":
        """Embed into a larger ambient space by appending zero coordinates."""
        if ambient < self.ambient_dim:
            raise ValidationError("pad target must not shrink the ambient dimension")
        if ambient == self.ambient_dim:
            return self
        extra = np.zeros((ambient - self.ambient_dim, self.dim), dtype=self.frame.dtype)
        return Subspace(np.vstack([self.frame, extra]))

    def to_dict(self) -> dict:
        vectors = [
            [[float(np.real(z)), float(np.imag(z))] for z in self.frame[:, j]]
            for j in range(self.dim)
        ]
        return {"ambient": self.ambient_dim, "frame": vectors}

    @classmethod
    def from_dict(cls, data: dict) -> "Subspace":
        ambient = int(data["ambient"])
        cols = []
        for pairs in data["frame"]:
            re_part = np.array([p[0] for p in pairs], dtype=np.float64)
            im_part = np.array([p[1] for p in pairs], dtype=np.float64)
            v = re_part + 1j * im_part if np.any(im_part != 0.0) else re_part
            if v.shape[0] != ambient:
                raise ValidationError("frame vector length disagrees with ambient dimension")
            cols.append(v)
        return cls(np.column_stack(cols))


def orthonormalize(vectors, tol: float = 1e-10) -> Subspace:
    """Orthonormal frame spanning the same space, in input order.

    Stabilized sequential orthogonalization: each vector is projected
    against the accepted frame twice before normalization, and the result
    is phase-normalized, so the output is deterministic.
    """
    cols = [np.asarray(v) for v in vectors]
    if not cols:
        raise ValidationError("need at least one vector")
    ambient = cols[0].shape[0]
    complex_input = any(np.iscomplexobj(c) for c in cols)
    dtype = np.complex128 if complex_input else np.float64
    basis: list[np.ndarray] = []
    for v in cols:
        u = _as_array(v, ndim=1).astype(dtype)
        if u.shape[0] != ambient:
            raise DimensionMismatchError("vectors have inconsistent lengths")
        original = float(np.linalg.norm(u))
        for _ in range(2):
            for q in basis:
                u = u - (q.conj() @ u) * q
        nrm = float(np.linalg.norm(u))
        if original == 0.0 or nrm <= tol * original:
            raise RankDeficiencyError("vectors are linearly dependent to tolerance")
        basis.append(phase_normalize(u / nrm).astype(dtype))
    return Subspace(np.column_stack(basis))


def repeat_pattern_frame(blocks: int) -> Subspace:
    """Frame for the subspace of vectors (a, a, b, b, b, c, c, c, ...).

    The first coordinate is repeated twice and every later one three times;
    ``blocks`` counts the repeated groups, so the ambient dimension is
    2 + 3*(blocks - 1).
    """
    if blocks < 1:
        raise ValidationError("need at least one block")
    ambient = 2 + 3 * (blocks - 1)
    f = np.zeros((ambient, blocks))
    f[0:2, 0] = 1.0 / math.sqrt(2.0)
    for i in range(1, blocks):
        r = 2 + 3 * (i - 1)
        f[r : r + 3, i] = 1.0 / math.sqrt(3.0)
    return Subspace(f)


# ---------------------------------------------------------------------------
# Structured operator families
# ---------------------------------------------------------------------------

RULE_KINDS = ("constant", "decreasing_to", "increasing_to", "decreasing_to_zero")
RULE_FORMS = ("harmonic", "geometric")


@dataclass(frozen=True)
class TailRule:
    """Closed-form generator for diagonal weights beyond an explicit prefix.

    Harmonic form: limit +/- coefficient / j.
    Geometric form: limit +/- coefficient * ratio**j.
    Values are indexed by the global coordinate j (1-based) and raised to
    ``exponent``, which keeps entrywise powers inside the family.
    """

    kind: str
    limit: float = 0.0
    coefficient: float = 1.0
    form: str = "harmonic"
    ratio: float = 0.5
    exponent: int = 1

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValidationError(f"unknown tail rule kind {self.kind!r}")
        if self.form not in RULE_FORMS:
            raise ValidationError(f"unknown tail rule form {self.form!r}")
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValidationError("exponent must be a positive integer")
        for name in ("limit", "coefficient", "ratio"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.kind == "decreasing_to_zero":
            object.__setattr__(self, "limit", 0.0)
        if self.kind == "constant":
            if self.limit < 0:
                raise ValidationError("constant weights must be nonnegative")
            return
        if self.coefficient <= 0:
            raise ValidationError("rule coefficient must be positive")
        if self.form == "geometric" and not 0.0 < self.ratio < 1.0:
            raise ValidationError("geometric ratio must lie in (0, 1)")
        if self.kind == "decreasing_to" and self.limit <= 0:
            raise ValidationError("decreasing_to needs a positive limit; use decreasing_to_zero")
        if self.kind == "increasing_to":
            if self.limit <= 0:
                raise ValidationError("increasing_to needs a positive limit")
            if self.base(1) < 0:
                raise ValidationError("increasing tail would start below zero")

    def base(self, j: int) -> float:
        if self.kind == "constant":
            return self.limit
        step = self.coefficient * self.ratio**j if self.form == "geometric" else self.coefficient / j
        if self.kind == "increasing_to":
            return self.limit - step
        return self.limit + step

    def value(self, j: int) -> float:
        """Weight at global coordinate j (1-based)."""
        if j < 1:
            raise ValidationError("weight indices are 1-based")
        return self.base(j) ** self.exponent

    def limit_value(self) -> float:
        return self.limit**self.exponent

    def power(self, k: int) -> "TailRule":
        if not isinstance(k, int) or k < 1:
            raise ValidationError("power must be a positive integer")
        return TailRule(self.kind, self.limit, self.coefficient, self.form, self.ratio, self.exponent * k)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "limit": self.limit,
            "coefficient": self.coefficient,
            "form": self.form,
            "ratio": self.ratio,
            "exponent": self.exponent,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TailRule":
        return cls(
            kind=data["kind"],
            limit=float(data.get("limit", 0.0)),
            coefficient=float(data.get("coefficient", 1.0)),
            form=data.get("form", "harmonic"),
            ratio=float(data.get("ratio", 0.5)),
            exponent=int(data.get("exponent", 1)),
        )


_RULE_TEXT = re.compile(
    r"""^\s*
    (?:(?P<limit>[0-9.eE+-]+)\s*(?P<sign>[+-])\s*)?
    (?P<coef>[0-9.eE]+)\s*
    (?:/\s*j|\*\s*(?P<ratio>[0-9.eE]+)\s*\^\s*j)
    \s*$""",
    re.VERBOSE,
)


def parse_rule(text: str) -> TailRule:
    """Parse tail rules like ``1+1/j``, ``2-0.5/j``, ``1/j``, ``0.5*0.5^j`` or ``3``."""
    stripped = text.strip()
    try:
        return TailRule("constant", float(stripped))
    except ValueError:
        pass
    m = _RULE_TEXT.match(stripped)
    if not m:
        raise ValidationError(f"cannot parse tail rule {text!r}")
    coef = float(m.group("coef"))
    form = "geometric" if m.group("ratio") else "harmonic"
    ratio = float(m.group("ratio")) if m.group("ratio") else 0.5
    if m.group("limit") is None:
        return TailRule("decreasing_to_zero", coefficient=coef, form=form, ratio=ratio)
    limit = float(m.group("limit"))
    kind = "increasing_to" if m.group("sign") == "-" else "decreasing_to"
    if kind == "decreasing_to" and limit == 0.0:
        return TailRule("decreasing_to_zero", coefficient=coef, form=form, ratio=ratio)
    return TailRule(kind, limit, coefficient=coef, form=form, ratio=ratio)


@dataclass(frozen=True)
class WeightSequence:
    """Explicit prefix weights followed by a closed-form tail rule."""

    prefix: tuple[float, ...]
    tail: TailRule

    def __post_init__(self):
        prefix = tuple(float(w) for w in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        for w in prefix:
            if not math.isfinite(w) or w < 0:
                raise ValidationError("prefix weights must be finite and nonnegative")
        limit = self.tail.limit_value()
        if self.tail.kind == "decreasing_to" and any(w <= limit for w in prefix):
            raise ValidationError("decreasing_to requires every prefix weight above the limit")
        if self.tail.kind == "increasing_to" and any(w >= limit for w in prefix):
            raise ValidationError("increasing_to requires every prefix weight below the limit")

    @property
    def start(self) -> int:
        """Global index of the first tail-generated weight (1-based)."""
        return len(self.prefix) + 1

    def value(self, j: int) -> float:
        if j < 1:
            raise ValidationError("weight indices are 1-based")
        if j <= len(self.prefix):
            return self.prefix[j - 1] ** self.tail.exponent
        return self.tail.value(j)

    def values(self, n: int) -> np.ndarray:
        return np.array([self.value(j) for j in range(1, n + 1)])

    def _tail_extremes(self):
        t = self.tail
        first = t.value(self.start)
        lim = t.limit_value()
        if t.kind == "constant":
            return (lim, True), (lim, True)
        if t.kind == "increasing_to":
            return (first, True), (lim, False)
        return (lim, False), (first, True)

    def _pick(self, candidates, better):
        # candidates: (value, attained, index or None); prefer better value,
        # then attained, then the smallest index.
        def key(c):
            return (better * c[0], 0 if c[1] else 1, c[2] if c[2] is not None else 1 << 60)

        return min(candidates, key=key)

    def infimum(self) -> tuple[float, bool, int | None]:
        """(value, attained, attaining 1-based index or None)."""
        (tail_inf, att), _ = self._tail_extremes()
        cands = [(self.value(i + 1), True, i + 1) for i in range(len(self.prefix))]
        cands.append((tail_inf, att, self.start if att else None))
        return self._pick(cands, better=+1)

    def supremum(self) -> tuple[float, bool, int | None]:
        _, (tail_sup, att) = self._tail_extremes()
        cands = [(self.value(i + 1), True, i + 1) for i in range(len(self.prefix))]
        cands.append((tail_sup, att, self.start if att else None))
        return self._pick(cands, better=-1)

    def power(self, k: int) -> "WeightSequence":
        return WeightSequence(self.prefix, self.tail.power(k))

    def to_dict(self) -> dict:
        return {"prefix": list(self.prefix), "tail": self.tail.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightSequence":
        return cls(tuple(data.get("prefix", ())), TailRule.from_dict(data["tail"]))


@dataclass(frozen=True)
class Diagonal:
    """Diagonal operator on l2 with weight sequence prefix + tail rule."""

    weights: WeightSequence

    variant = "diagonal"
    min_truncation = 1

    @classmethod
    def decreasing_to(cls, limit: float, coefficient: float = 1.0, prefix=()) -> "Diagonal":
        return cls(WeightSequence(tuple(prefix), TailRule("decreasing_to", limit, coefficient)))

    @classmethod
    def decreasing_to_zero(cls, coefficient: float = 1.0, prefix=()) -> "Diagonal":
        return cls(WeightSequence(tuple(prefix), TailRule("decreasing_to_zero", coefficient=coefficient)))

    @classmethod
    def increasing_to(cls, limit: float, coefficient: float | None = None, prefix=()) -> "Diagonal":
        coeff = limit / 2.0 if coefficient is None else coefficient
        return cls(WeightSequence(tuple(prefix), TailRule("increasing_to", limit, coeff)))

    @classmethod
    def constant(cls, value: float, prefix=()) -> "Diagonal":
        return cls(WeightSequence(tuple(prefix), TailRule("constant", value)))

    def power(self, k: int) -> "Diagonal":
        """Entrywise k-th power (weights raised to k)."""
        return Diagonal(self.weights.power(k))

    def to_dict(self) -> dict:
        return {"variant": self.variant, **self.weights.to_dict()}


@dataclass(frozen=True)
class ShiftVariant:
    """Weighted shift-like map (x1, x2, x3, ...) -> (lead*x2, 0, w1*x3, w2*x4, ...)."""

    lead: float
    weights: WeightSequence

    variant = "shift"
    min_truncation = 3

    def __post_init__(self):
        if not math.isfinite(self.lead) or self.lead <= 0:
            raise ValidationError("lead weight must be positive")

    @classmethod
    def with_increasing_tail(cls, lead: float, coefficient: float | None = None) -> "ShiftVariant":
        coeff = lead / 2.0 if coefficient is None else coefficient
        return cls(lead, WeightSequence((), TailRule("increasing_to", lead, coeff)))

    @classmethod
    def with_decreasing_tail(cls, lead: float, coefficient: float = 1.0) -> "ShiftVariant":
        return cls(lead, WeightSequence((), TailRule("decreasing_to", lead, coefficient)))

    def to_dict(self) -> dict:
        return {"variant": self.variant, "lead": self.lead, **self.weights.to_dict()}


@dataclass(frozen=True)
class TripledProjection:
    """Projection fixing coordinate 3m+1 and averaging each pair (3m+2, 3m+3).

    Its range is the set of vectors of the form (a, b, b, c, d, d, ...); both
    the range and the kernel are infinite-dimensional.
    """

    variant = "tripled_projection"
    min_truncation = 3

    def to_dict(self) -> dict:
        return {"variant": self.variant}


@dataclass(frozen=True, eq=False)
class IdentityPlusFiniteRank:
    """I + sum_j weights[j] <x, e_j> e_j for an orthonormal frame (e_j)."""

    weights: tuple[float, ...]
    frame: Subspace

    variant = "identity_plus_finite_rank"

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.frame.dim:
            raise ValidationError("one weight per frame vector is required")
        for w in weights:
            if not math.isfinite(w) or w < 0:
                raise ValidationError("rank-update weights must be nonnegative")

    @property
    def min_truncation(self) -> int:
        return self.frame.ambient_dim

    def to_dict(self) -> dict:
        return {"variant": self.variant, "weights": list(self.weights), "frame": self.frame.to_dict()}


@dataclass(frozen=True)
class ScaledIdentityMinusCompact:
    """eta*I - K for a positive compact diagonal K with eta > ||K||/2."""

    eta: float
    compact: Diagonal

    variant = "scaled_identity_minus_compact"
    min_truncation = 1

    def __post_init__(self):
        if not math.isfinite(self.eta) or self.eta <= 0:
            raise ValidationError("eta must be positive")
        if self.compact.weights.tail.limit_value() != 0.0:
            raise ValidationError("the compact part must have weights decreasing to zero")
        sup, _, _ = self.compact.weights.supremum()
        if not self.eta > sup / 2.0:
            raise ValidationError("eta must exceed half the norm of the compact part")

    def to_dict(self) -> dict:
        return {"variant": self.variant, "eta": self.eta, "compact": self.compact.to_dict()}


@dataclass(frozen=True)
class Projection:
    """Orthogonal projection described by rank / corank counts.

    ``None`` means infinite. On l2 at most one of the two can be finite; the
    canonical diagonal representative puts a finite rank first, a finite
    corank (kernel) first, or alternates 1, 0, 1, 0, ... when both are
    infinite, so truncations nest.
    """

    rank: int | None
    corank: int | None

    variant = "projection"
    min_truncation = 1

    def __post_init__(self):
        for name, value in (("rank", self.rank), ("corank", self.corank)):
            if value is not None and (not isinstance(value, int) or value < 0):
                raise ValidationError(f"{name} must be a nonnegative integer or None (infinite)")
        if self.rank is not None and self.corank is not None:
            raise ValidationError("rank and corank cannot both be finite on l2")

    def diagonal_pattern(self, n: int) -> np.ndarray:
        if self.rank is not None:
            pattern = np.zeros(n)
            pattern[: min(self.rank, n)] = 1.0
        elif self.corank is not None:
            pattern = np.ones(n)
            pattern[: min(self.corank, n)] = 0.0
        else:
            pattern = np.zeros(n)
            pattern[0::2] = 1.0
        return pattern

    def to_dict(self) -> dict:
        def enc(v):
            return "infinite" if v is None else v

        return {"variant": self.variant, "rank": enc(self.rank), "corank": enc(self.corank)}


StructuredOperator = (
    Diagonal
    | ShiftVariant
    | TripledProjection
    | IdentityPlusFiniteRank
    | ScaledIdentityMinusCompact
    | Projection
)


def truncate(op: StructuredOperator, n: int) -> DenseOperator:
    """Finite section of a structured operator on span(e_1 .. e_n).

    Truncations nest: the size-n matrix is the leading principal submatrix
    of every larger one.
    """
    if not isinstance(n, int) or n < 1:
        raise TruncationError("truncation size must be a positive integer")
    if isinstance(op, Diagonal):
        return DenseOperator(np.diag(op.weights.values(n)))
    if isinstance(op, ShiftVariant):
        if n < op.min_truncation:
            raise TruncationError(f"shift variant needs size >= {op.min_truncation}")
        m = np.zeros((n, n))
        m[0, 1] = op.lead
        for i in range(2, n):
            m[i, i] = op.weights.value(i - 1)
        return DenseOperator(m)
    if isinstance(op, TripledProjection):
        if n < 3 or n % 3 != 0:
            raise TruncationError("tripled projection needs a positive multiple of 3")
        m = np.zeros((n, n))
        for b in range(n // 3):
            i = 3 * b
            m[i, i] = 1.0
            m[i + 1 : i + 3, i + 1 : i + 3] = 0.5
        return DenseOperator(m)
    if isinstance(op, IdentityPlusFiniteRank):
        if n < op.min_truncation:
            raise TruncationError(f"need size >= ambient frame dimension {op.min_truncation}")
        e = op.frame.pad(n).frame
        w = np.array(op.weights)
        return DenseOperator(np.eye(n, dtype=e.dtype) + (e * w) @ e.conj().T)
    if isinstance(op, ScaledIdentityMinusCompact):
        k = truncate(op.compact, n).matrix
        return DenseOperator(op.eta * np.eye(n) - k)
    if isinstance(op, Projection):
        return DenseOperator(np.diag(op.diagonal_pattern(n)))
    raise UnsupportedVariantError(f"cannot truncate {type(op).__name__}")


def restrict(op, subspace: Subspace) -> DenseOperator:
    """Restriction T|_M realized as T @ E with E the isometric frame embedding.

    The result maps subspace coordinates into the codomain; its minimum
    modulus is the infimum of ||T x|| over unit x in M.
    """
    a = as_matrix(op)
    if a.shape[1] != subspace.ambient_dim:
        raise DimensionMismatchError(
            f"operator expects dimension {a.shape[1]}, subspace lives in {subspace.ambient_dim}"
        )
    return DenseOperator(a @ subspace.frame)


def tripled_projection_restriction(blocks: int) -> DenseOperator:
    """The tripled projection restricted to the repeat-pattern subspace.

    Uses ``blocks`` pattern blocks; frame and projection are aligned on the
    common ambient dimension 3*blocks.
    """
    n = 3 * blocks
    frame = repeat_pattern_frame(blocks).pad(n)
    return restrict(truncate(TripledProjection(), n), frame)


_VARIANTS = {
    "diagonal": Diagonal,
    "shift": ShiftVariant,
    "tripled_projection": TripledProjection,
    "identity_plus_finite_rank": IdentityPlusFiniteRank,
    "scaled_identity_minus_compact": ScaledIdentityMinusCompact,
    "projection": Projection,
}


def structured_from_dict(data: dict) -> StructuredOperator:
    variant = data.get("variant")
    if variant not in _VARIANTS:
        raise ValidationError(f"unknown structured variant {variant!r}")
    if variant == "diagonal":
        return Diagonal(WeightSequence.from_dict(data))
    if variant == "shift":
        return ShiftVariant(float(data["lead"]), WeightSequence.from_dict(data))
    if variant == "tripled_projection":
        return TripledProjection()
    if variant == "identity_plus_finite_rank":
        return IdentityPlusFiniteRank(tuple(data["weights"]), Subspace.from_dict(data["frame"]))
    if variant == "scaled_identity_minus_compact":
        compact = structured_from_dict(data["compact"])
        if not isinstance(compact, Diagonal):
            raise ValidationError("the compact part must be a diagonal variant")
        return ScaledIdentityMinusCompact(float(data["eta"]), compact)
    def dec(v):
        return None if v in ("infinite", "inf", None) else int(v)

    return Projection(dec(data.get("rank")), dec(data.get("corank")))


def operator_from_dict(data: dict):
    """Decode either a dense or a structured operator from its JSON form."""
    if "variant" in data:
        return structured_from_dict(data)
    if "rows" in data:
        return DenseOperator.from_dict(data)
    raise ValidationError("operator JSON needs either a 'variant' or a 'rows' key")
