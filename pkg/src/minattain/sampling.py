"""Seeded random instance generators for sampling checks and suites.

Each helper takes an explicit numpy Generator so callers can derive one
deterministic stream per trial index.
"""

from __future__ import annotations

import zlib

import numpy as np

from .operators import Subspace, orthonormalize


def trial_rng(seed: int, *indices: int) -> np.random.Generator:
    """Deterministic generator keyed by a base seed plus trial indices."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, *(int(i) & 0xFFFFFFFF for i in indices)])


def suite_salt(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    shape = (rows,) if cols is None else (rows, cols)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_vector(rng: np.random.Generator, dim: int, real: bool = False) -> np.ndarray:
    v = rng.standard_normal(dim) if real else complex_gaussian(rng, dim)
    return v / np.linalg.norm(v)


def random_unit_batch(rng: np.random.Generator, dim: int, count: int, real: bool = False) -> np.ndarray:
    """Columns are independent uniformly random unit vectors."""
    x = rng.standard_normal((dim, count)) if real else complex_gaussian(rng, dim, count)
    return x / np.linalg.norm(x, axis=0)


def random_subspace(rng: np.random.Generator, ambient: int, dim: int) -> Subspace:
    vectors = [complex_gaussian(rng, ambient) for _ in range(dim)]
    return orthonormalize(vectors)


def random_psd(rng: np.random.Generator, dim: int, eps_low: float = 1e-3, eps_high: float = 1.0) -> np.ndarray:
    """G*G + eps*I with eps log-uniform in [eps_low, eps_high]."""
    g = complex_gaussian(rng, dim, dim)
    eps = 10.0 ** rng.uniform(np.log10(eps_low), np.log10(eps_high))
    p = g.conj().T @ g + eps * np.eye(dim)
    return (p + p.conj().T) / 2.0


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = complex_gaussian(rng, dim, dim)
    return (a + a.conj().T) / 2.0


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR."""
    q, r = np.linalg.qr(complex_gaussian(rng, dim, dim))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_projection(rng: np.random.Generator, ambient: int, rank: int) -> np.ndarray:
    e = random_subspace(rng, ambient, rank).frame
    p = e @ e.conj().T
    return (p + p.conj().T) / 2.0
