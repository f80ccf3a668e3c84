"""Attainment decisions.

Answers whether the minimum of ||T x|| over the unit sphere is attained
(property "N*"), and whether every restriction to a nonzero closed
subspace attains its minimum (property "AN*"). Dense operators are decided
numerically, the structured catalog exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    UnsupportedPropertyError,
    ValidationError,
)
from .operators import (
    DenseOperator,
    Diagonal,
    IdentityPlusFiniteRank,
    Projection,
    ScaledIdentityMinusCompact,
    ShiftVariant,
    Subspace,
    TripledProjection,
    UnitVector,
    as_matrix,
    compose,
    restrict,
    truncate,
)
from .sampling import random_subspace, trial_rng
from .spectral import is_hermitian, min_modulus

PROPERTY_NSTAR = "N*"
PROPERTY_ANSTAR = "AN*"

HOLDS = "holds"
FAILS = "fails"

#: Relative singular-value threshold below which a direction counts as kernel.
KERNEL_TOL = 1e-10

#: Residual allowed between a dense witness and the reported minimum.
WITNESS_TOL = 1e-8

MIN_TRIPLED_RESTRICTION = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class RestrictionSample:
    """One random-restriction trial: dimension, minimum, witness residual."""

    subspace_dim: int
    min_value: float
    residual: float

    def to_dict(self) -> dict:
        return {
            "subspace_dim": self.subspace_dim,
            "min_value": self.min_value,
            "residual": self.residual,
        }


@dataclass(frozen=True, eq=False)
class AttainmentVerdict:
    """Outcome of an attainment decision.

    ``witness`` carries an attaining unit vector for dense verdicts;
    structured decisions justify themselves through ``certificate`` text.
    ``samples`` is present only for sampled subspace reports.
    """

    property: str
    verdict: str
    min_value: float
    injective: bool
    witness: UnitVector | None = None
    certificate: str | None = None
    samples: tuple[RestrictionSample, ...] | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        out = {
            "property": self.property,
            "verdict": self.verdict,
            "min_value": self.min_value,
            "witness": self.witness.to_pairs() if self.witness is not None else None,
            "certificate": self.certificate,
            "injective": self.injective,
        }
        if self.samples is not None:
            out["trials"] = [s.to_dict() for s in self.samples]
        return out


def injectivity_check(op, tol: float = KERNEL_TOL) -> tuple[bool, int]:
    """(injective?, kernel dimension) from the singular spectrum.

    Kernel dimension counts singular values at or below tol * sigma_max,
    including the implicit zeros when the domain is wider than the range.
    """
    a = as_matrix(op)
    s = np.linalg.svd(a, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    padded = np.concatenate([s, np.zeros(a.shape[1] - s.size)])
    kdim = int(np.sum(padded <= tol * smax))
    return kdim == 0, kdim


def nstar_check_dense(op) -> AttainmentVerdict:
    """Dense minimum-attainment check; always holds in finite dimension.

    For positive semidefinite input the witness is additionally certified
    as an eigenvector for the minimum eigenvalue, and a scalar certificate
    is attached when the minimum equals the norm.
    """
    a = as_matrix(op)
    value, witness = min_modulus(a)
    injective, kdim = injectivity_check(a)
    notes = []
    if kdim:
        notes.append(f"kernel dimension {kdim}")
    if a.shape[0] == a.shape[1] and is_hermitian(a):
        w = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
        scale = max(1.0, float(np.max(np.abs(w))))
        if w[0] >= -1e-9 * scale:
            residual = float(np.linalg.norm(a @ witness.coords - value * witness.coords))
            notes.append(f"minimum {value:.12g} is an eigenvalue (residual {residual:.3e})")
            top = float(w[-1])
            if abs(value - top) <= 1e-9 * max(1.0, top):
                notes.append("minimum equals the norm: scalar multiple of the identity")
    return AttainmentVerdict(
        property=PROPERTY_NSTAR,
        verdict=HOLDS,
        min_value=value,
        injective=injective,
        witness=witness,
        certificate="; ".join(notes) if notes else None,
    )


def _decide_diagonal(op: Diagonal) -> AttainmentVerdict:
    inf, attained, idx = op.weights.infimum()
    if attained:
        injective = inf > 0.0
        cert = f"minimum weight {inf:.12g} attained at coordinate {idx}"
        if not injective:
            cert += "; zero weight, so the kernel is nontrivial"
        return AttainmentVerdict(PROPERTY_NSTAR, HOLDS, float(inf), injective, certificate=cert)
    if inf > 0.0:
        cert = (
            f"weights decrease strictly to {inf:.12g} without attaining it; "
            "the numerical range is open at its lower endpoint, so the minimum "
            "is not an extreme point"
        )
    else:
        cert = (
            "weights decrease strictly to zero, so the minimum modulus is 0 "
            "while the kernel is trivial; no unit vector attains it"
        )
    return AttainmentVerdict(PROPERTY_NSTAR, FAILS, float(inf), True, certificate=cert)


def _shift_discrepancy_note(op: ShiftVariant) -> str:
    return (
        f"the first basis vector is annihilated, so the minimum modulus is 0 and "
        f"attained; a stated minimum equal to the lead weight {op.lead:.12g} would "
        f"describe the image norm of the second basis vector and contradicts the "
        f"kernel vector. Discrepancy flagged, not silently altered."
    )


def _decide_shift(op: ShiftVariant) -> AttainmentVerdict:
    return AttainmentVerdict(
        PROPERTY_NSTAR,
        HOLDS,
        0.0,
        injective=False,
        certificate=_shift_discrepancy_note(op),
    )


def _decide_tripled(op: TripledProjection) -> AttainmentVerdict:
    return AttainmentVerdict(
        PROPERTY_NSTAR,
        FAILS,
        MIN_TRIPLED_RESTRICTION,
        injective=True,
        certificate=(
            "restriction of the pair-averaging projection to the repeat-pattern "
            "subspace: every unit vector gives a value strictly above the "
            "infimum 3**-0.5, so the minimum is not attained"
        ),
    )


def _decide_identity_plus_finite_rank(op: IdentityPlusFiniteRank) -> AttainmentVerdict:
    k = op.frame.dim
    return AttainmentVerdict(
        PROPERTY_NSTAR,
        HOLDS,
        1.0,
        injective=True,
        certificate=f"any unit vector orthogonal to the rank-{k} frame attains the minimum 1",
    )


def _scaled_identity_minimum(op: ScaledIdentityMinusCompact) -> tuple[float, int]:
    """Exact minimum of |eta - weight| over the diagonal weights."""
    eta = op.eta
    seq = op.compact.weights
    candidates: list[tuple[float, int]] = []
    for i in range(len(seq.prefix)):
        candidates.append((abs(eta - seq.value(i + 1)), i + 1))
    tail = seq.tail
    j = seq.start
    if tail.kind == "constant":
        candidates.append((abs(eta - tail.limit_value()), j))
    else:
        # weights decrease to zero, so |eta - w| grows once w drops below eta
        for _ in range(10**6):
            w = tail.value(j)
            candidates.append((abs(eta - w), j))
            if w <= eta:
                break
            j += 1
        else:
            raise ValidationError("tail scan did not terminate")
    return min(candidates)


def _decide_scaled_identity(op: ScaledIdentityMinusCompact) -> AttainmentVerdict:
    value, idx = _scaled_identity_minimum(op)
    return AttainmentVerdict(
        PROPERTY_NSTAR,
        HOLDS,
        float(value),
        injective=value > 0.0,
        certificate=(
            f"diagonal gap |eta - weight| is smallest at coordinate {idx} "
            f"with value {value:.12g}, attained by that basis vector"
        ),
    )


def _decide_projection_nstar(op: Projection) -> AttainmentVerdict:
    if op.corank == 0:
        return AttainmentVerdict(
            PROPERTY_NSTAR, HOLDS, 1.0, injective=True,
            certificate="trivial kernel: the projection is the identity and attains 1 everywhere",
        )
    if op.rank is not None:
        kernel_coord = op.rank + 1
    elif op.corank is not None:
        kernel_coord = 1
    else:
        kernel_coord = 2
    return AttainmentVerdict(
        PROPERTY_NSTAR, HOLDS, 0.0, injective=False,
        certificate=f"kernel basis vector at coordinate {kernel_coord} attains 0",
    )


def nstar_decide_structured(op) -> AttainmentVerdict:
    """Exact minimum-attainment decision for a catalog operator.

    The pair-averaging projection is decided through its restriction to the
    repeat-pattern subspace (the catalog pairs the two); every other
    variant is decided as an operator on the whole space.
    """
    if isinstance(op, Diagonal):
        return _decide_diagonal(op)
    if isinstance(op, ShiftVariant):
        return _decide_shift(op)
    if isinstance(op, TripledProjection):
        return _decide_tripled(op)
    if isinstance(op, IdentityPlusFiniteRank):
        return _decide_identity_plus_finite_rank(op)
    if isinstance(op, ScaledIdentityMinusCompact):
        return _decide_scaled_identity(op)
    if isinstance(op, Projection):
        return _decide_projection_nstar(op)
    raise UnsupportedPropertyError(f"no exact decision for {type(op).__name__}")


def anstar_decide_projection(op: Projection) -> AttainmentVerdict:
    """Every-restriction attainment for a projection: holds iff the rank or
    the kernel dimension is finite."""
    if not isinstance(op, Projection):
        raise UnsupportedPropertyError("expected a projection variant")
    base = _decide_projection_nstar(op)
    if op.rank is not None:
        cert = f"rank {op.rank} is finite"
        verdict = HOLDS
    elif op.corank is not None:
        cert = f"kernel dimension {op.corank} is finite"
        verdict = HOLDS
    else:
        cert = (
            "rank and kernel are both infinite-dimensional; a paired-subspace "
            "restriction leaves the minimum unattained"
        )
        verdict = FAILS
    return AttainmentVerdict(
        PROPERTY_ANSTAR, verdict, base.min_value, base.injective, certificate=cert
    )


def anstar_decide_structured(op) -> AttainmentVerdict:
    """Exact every-restriction decision where the catalog settles it."""
    if isinstance(op, Projection):
        return anstar_decide_projection(op)
    if isinstance(op, TripledProjection):
        return AttainmentVerdict(
            PROPERTY_ANSTAR,
            FAILS,
            0.0,
            injective=False,
            certificate=(
                "projection with infinite rank and infinite kernel; restriction to "
                f"the repeat-pattern subspace has unattained infimum {MIN_TRIPLED_RESTRICTION:.6f}"
            ),
        )
    if isinstance(op, IdentityPlusFiniteRank):
        return AttainmentVerdict(
            PROPERTY_ANSTAR,
            HOLDS,
            1.0,
            injective=True,
            certificate="identity plus a positive finite-rank update: every restriction attains",
        )
    if isinstance(op, ScaledIdentityMinusCompact):
        base = _decide_scaled_identity(op)
        return AttainmentVerdict(
            PROPERTY_ANSTAR,
            HOLDS,
            base.min_value,
            base.injective,
            certificate=(
                "restricted minima satisfy sqrt(eta**2 - ||root of (2*eta*K - K**2) "
                "restricted||**2) and are attained on every subspace"
            ),
        )
    raise UnsupportedPropertyError(
        f"no exact every-restriction decision for {type(op).__name__}"
    )


def anstar_sample(op, trials: int = 100, seed: int = 42) -> AttainmentVerdict:
    """Sampled every-restriction check for a dense operator.

    Draws ``trials`` random subspaces with dimension uniform in 1..cols
    (seed-deterministic per trial) and records the restricted minimum and
    witness residual of each. Finite-dimensional restrictions always
    attain, so the verdict holds; the value of the report is the recorded
    per-trial data.
    """
    if trials < 1:
        raise ValidationError("need at least one trial")
    a = as_matrix(op)
    n = a.shape[1]
    samples = []
    worst_value = math.inf
    worst_witness = None
    for t in range(trials):
        rng = trial_rng(seed, t)
        dim = int(rng.integers(1, n + 1))
        subspace = random_subspace(rng, n, dim)
        value, witness = min_modulus(restrict(a, subspace))
        ambient_witness = UnitVector(subspace.frame @ witness.coords)
        residual = abs(float(np.linalg.norm(a @ ambient_witness.coords)) - value)
        samples.append(RestrictionSample(dim, value, residual))
        if value < worst_value:
            worst_value = value
            worst_witness = ambient_witness
    injective, _ = injectivity_check(a)
    return AttainmentVerdict(
        property=PROPERTY_ANSTAR,
        verdict=HOLDS,
        min_value=worst_value,
        injective=injective,
        witness=worst_witness,
        certificate=f"{trials} random subspace restrictions, every minimum attained",
        samples=tuple(samples),
    )


@dataclass(frozen=True)
class IsometryCheckReport:
    """Sampled verification that composing with an isometry preserves
    restricted minima."""

    trials: int
    failures: int
    max_violation: float
    tolerance: float
    sides: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "sides": list(self.sides),
        }


def isometry_compose_check(op, iso, trials: int = 20, seed: int = 42,
                           tolerance: float = 1e-8) -> IsometryCheckReport:
    """Check [R T restricted to M] = [T restricted to M] and
    [T R restricted to M] = [T restricted to R(M)] on random subspaces.

    ``iso`` must satisfy R*R = I to 1e-9. Each side is exercised whenever
    the dimensions compose.
    """
    t = as_matrix(op)
    r = as_matrix(iso)
    gram = r.conj().T @ r
    if float(np.linalg.norm(gram - np.eye(r.shape[1]))) > 1e-9 * max(1.0, float(np.linalg.norm(gram))):
        raise ValidationError("second argument is not an isometry (R*R != I to tolerance)")
    left_ok = t.shape[0] == r.shape[1]   # R (T x) is defined
    right_ok = t.shape[1] == r.shape[0]  # T (R x) is defined
    if not (left_ok or right_ok):
        raise DimensionMismatchError("isometry does not compose with the operator on either side")
    sides = tuple(s for s, ok in (("left", left_ok), ("right", right_ok)) if ok)
    max_violation = 0.0
    failures = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        worst = 0.0
        if left_ok:
            dim = int(rng.integers(1, t.shape[1] + 1))
            m = random_subspace(rng, t.shape[1], dim)
            composed, _ = min_modulus(restrict(compose(r, t), m))
            plain, _ = min_modulus(restrict(t, m))
            worst = max(worst, abs(composed - plain))
        if right_ok:
            dim = int(rng.integers(1, r.shape[1] + 1))
            m = random_subspace(rng, r.shape[1], dim)
            composed, _ = min_modulus(restrict(compose(t, r), m))
            image = Subspace(r @ m.frame)
            plain, _ = min_modulus(restrict(t, image))
            worst = max(worst, abs(composed - plain))
        max_violation = max(max_violation, worst)
        if worst > tolerance:
            failures += 1
    return IsometryCheckReport(trials, failures, max_violation, tolerance, sides)


def truncated_min_modulus(op, n: int) -> float:
    """Minimum modulus of the size-n finite section, using exact weight
    arithmetic for diagonal-like variants."""
    if isinstance(op, Diagonal):
        return float(np.min(op.weights.values(n)))
    if isinstance(op, ShiftVariant):
        return 0.0
    if isinstance(op, Projection):
        return float(np.min(op.diagonal_pattern(n)))
    if isinstance(op, ScaledIdentityMinusCompact):
        return float(np.min(np.abs(op.eta - op.compact.weights.values(n))))
    value, _ = min_modulus(truncate(op, n))
    return value
