"""Seeded random states, unitaries, and channels for randomized checks."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .errors import ArgumentError
from .tensor import DensityState, KrausChannel, tensor_product


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def haar_state(dims: Sequence[int], rng: np.random.Generator) -> DensityState:
    """Haar-random pure state."""
    dim = math.prod(dims)
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return DensityState.from_amplitudes(z / np.linalg.norm(z), dims, validate=False)


def random_density(dims: Sequence[int], rng: np.random.Generator, *,
                   rank: Optional[int] = None) -> DensityState:
    """Random mixed state ``G G^t / tr`` with a complex Gaussian ``G``."""
    dim = math.prod(dims)
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ArgumentError(f"rank {rank} out of range 1..{dim}")
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityState.from_matrix(m / np.trace(m).real, dims, validate=False)


def random_classical(dims: Sequence[int], rng: np.random.Generator) -> DensityState:
    """Classical state with a uniformly random probability vector."""
    dim = math.prod(dims)
    p = rng.exponential(size=dim)
    p /= p.sum()
    keys = np.indices(dims).reshape(len(dims), -1).T
    table = {tuple(int(x) for x in key): float(v) for key, v in zip(keys, p)}
    return DensityState.from_probabilities(table, dims, validate=False)


def random_channel(dim: int, n_kraus: int, rng: np.random.Generator,
                   targets: Sequence[int] = (0,)) -> KrausChannel:
    """Random channel: Kraus blocks of an isometry drawn from a Haar
    unitary on the dilated space."""
    if n_kraus < 1:
        raise ArgumentError(f"need at least one Kraus operator, got {n_kraus}")
    u = haar_unitary(dim * n_kraus, rng)
    ops = [u[i * dim:(i + 1) * dim, :dim] for i in range(n_kraus)]
    return KrausChannel(ops, targets)


def random_product_state(block_sizes: Sequence[int], rng: np.random.Generator,
                         d: int = 2, *, pure: bool = False) -> DensityState:
    """Product of independent random states on consecutive blocks."""
    if not block_sizes or any(b < 1 for b in block_sizes):
        raise ArgumentError(f"block sizes must be positive, got {block_sizes}")
    parts = []
    for b in block_sizes:
        dims = (d,) * b
        parts.append(haar_state(dims, rng) if pure else random_density(dims, rng))
    out = parts[0]
    for p in parts[1:]:
        out = tensor_product(out, p)
    return out
