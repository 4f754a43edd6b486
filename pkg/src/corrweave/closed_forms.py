"""Closed-form correlation profiles for the named state families.

All families here are permutation invariant (or products of identical
pairs), so dist(k) reduces to the block-structure of the compact
partition: ``floor(N/k)`` blocks of ``k`` plus a remainder block.  For
each family the block entropies have elementary forms, giving profiles
whose cost is polynomial in N -- usable to N in the thousands, far beyond
the matrix pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .correlations import WeightScheme
from .errors import ArgumentError

CF_FAMILIES = ("ghz", "classical", "bell-product", "classical-pair-product",
               "dicke-1", "dicke-half", "qudit-classical", "qudit-bell-product",
               "a-family")

#: Genuine-order differences this far below zero are treated as rounding.
CF_CLAMP = 1e-12


@dataclass(frozen=True)
class ClosedFormFamily:
    """A state family instance whose correlation profile has a closed form."""

    family: str
    n: int
    d: int = 2
    a: Optional[float] = None

    def __post_init__(self):
        if self.family not in CF_FAMILIES:
            raise ArgumentError(
                f"unknown closed-form family {self.family!r}; "
                f"choose from {', '.join(CF_FAMILIES)}")
        if self.n < 1:
            raise ArgumentError(f"need n >= 1, got {self.n}")
        if self.d < 2:
            raise ArgumentError(f"need d >= 2, got {self.d}")
        if self.family in ("bell-product", "qudit-bell-product",
                           "classical-pair-product", "dicke-half") and self.n % 2:
            raise ArgumentError(f"family {self.family} needs even n, got {self.n}")
        if self.family == "a-family":
            if self.a is None or not 0.0 <= self.a <= 1.0:
                raise ArgumentError(f"a-family needs an amplitude in [0, 1], got {self.a}")
        elif self.a is not None:
            raise ArgumentError(f"family {self.family} takes no amplitude")


def binary_entropy(p: float) -> float:
    """Entropy in bits of a {p, 1-p} distribution."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"need a probability, got {p}")
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def hypergeometric_spectrum(n: int, m: int, k: int) -> np.ndarray:
    """Eigenvalues of the k-site marginal of the N-qubit Dicke state with
    ``m`` excitations: ``C(k, i) C(n-k, m-i) / C(n, m)``.

    Anchored at the distribution mode (computed in C by scipy to a few
    ulps) and unrolled by the term-ratio recurrence, so the spectrum sums
    to 1 within ~1e-13 even for n in the thousands, where a log-gamma
    evaluation would drift at the 1e-11 level.
    """
    if not 0 <= m <= n or not 1 <= k <= n:
        raise ArgumentError(f"need 0 <= m <= n and 1 <= k <= n, got n={n}, m={m}, k={k}")
    lo = max(0, m - (n - k))
    hi = min(k, m)
    i0 = min(hi, max(lo, (k + 1) * (m + 1) // (n + 2)))
    anchor = float(stats.hypergeom.pmf(i0, n, m, k))
    out = np.empty(hi - lo + 1)
    j0 = i0 - lo
    out[j0] = anchor
    if i0 < hi:
        i = np.arange(i0, hi, dtype=float)
        up = (k - i) * (m - i) / ((i + 1) * (n - k - m + i + 1))
        out[j0 + 1:] = anchor * np.cumprod(up)
    if i0 > lo:
        i = np.arange(i0, lo, -1, dtype=float)
        down = i * (n - k - m + i) / ((k - i + 1) * (m - i + 1))
        out[j0 - 1::-1] = anchor * np.cumprod(down)
    return out


def dicke_marginal_entropy(n: int, m: int, k: int) -> float:
    """Entropy in bits of the k-site Dicke marginal (0 when k = n)."""
    p = hypergeometric_spectrum(n, m, k)
    p = p[p > 0]
    return float(max(-(p * np.log2(p)).sum(), 0.0))


def _compact_dist(n: int, k: int, block_entropy) -> float:
    """dist(k) for a permutation-invariant pure state with marginal
    entropies ``block_entropy(size)``: floor(n/k) full blocks plus the
    remainder, minus the (zero) total entropy."""
    q, r = divmod(n, k)
    value = q * block_entropy(k)
    if r:
        value += block_entropy(r)
    return value


def cf_dist(fam: ClosedFormFamily, k: int) -> float:
    """Closed-form dist(k) in bits for the family instance."""
    n, d = fam.n, fam.d
    if not 1 <= k <= n:
        raise ArgumentError(f"order k={k} out of range 1..{n}")
    name = fam.family
    if name in ("classical", "qudit-classical"):
        # every marginal of every size has entropy log2(d)
        return (math.ceil(n / k) - 1) * math.log2(d)
    if name in ("bell-product", "qudit-bell-product"):
        # blocks of size >= 2 can cover whole pairs; only k = 1 cuts them
        return n * math.log2(d) if k == 1 else 0.0
    if name == "classical-pair-product":
        # cutting a correlated bit pair costs 1 bit; n/2 pairs
        return n / 2 if k == 1 else 0.0
    if name == "ghz":
        return float(math.ceil(n / k)) if k < n else 0.0
    if name == "a-family":
        scale = binary_entropy(fam.a * fam.a)
        return math.ceil(n / k) * scale if k < n else 0.0
    m = 1 if name == "dicke-1" else n // 2
    if k == n:
        return 0.0
    return _compact_dist(n, k, lambda size: dicke_marginal_entropy(n, m, size))


def cf_genuine(fam: ClosedFormFamily, k: int) -> float:
    """Closed-form genuine correlations of order ``k``: the difference of
    consecutive dist values, clamped at 0 within 1e-12."""
    if not 2 <= k <= fam.n:
        raise ArgumentError(f"order k={k} out of range 2..{fam.n}")
    diff = cf_dist(fam, k - 1) - cf_dist(fam, k)
    if diff < -CF_CLAMP:
        raise ArgumentError(f"genuine({k}) came out negative: {diff}")
    return max(diff, 0.0)


def cf_weaving(fam: ClosedFormFamily, weights: WeightScheme) -> float:
    """Closed-form weaving index ``sum_i big_omega_i * dist(i)``."""
    if weights.n != fam.n:
        raise ArgumentError(
            f"weight scheme is for n={weights.n}, family has n={fam.n}")
    if fam.n == 1:
        return 0.0
    return float(sum(w * cf_dist(fam, i)
                     for i, w in enumerate(weights.big_omega, start=1)))


@dataclass(frozen=True)
class SweepPoint:
    """One N of a scaling sweep: weaving value and normalized coefficient."""

    n: int
    weaving: float
    normalization: str
    coefficient: float


def _named_scheme(name: str, n: int) -> WeightScheme:
    if name == "k-1":
        return WeightScheme.order_weighted(n)
    if name == "uniform":
        return WeightScheme.uniform(n)
    if name.startswith("delta:"):
        return WeightScheme.delta(n, int(name.split(":", 1)[1]))
    raise ArgumentError(f"unknown weight scheme {name!r}; "
                        "use k-1, uniform, or delta:K")


def _sweep_normalization(family: str) -> str:
    if family in ("ghz", "classical", "qudit-classical"):
        return "n*log2(n)"
    if family == "dicke-half":
        return "n^2"
    return "n"


def cf_scaling_sweep(family: str, n_values: Sequence[int], *, d: int = 2,
                     a: Optional[float] = None,
                     weights: str = "k-1") -> list[SweepPoint]:
    """Weaving index of one family across system sizes, with the
    family's natural normalization (n, n*log2(n), or n^2) divided out.

    ``weights`` names a scheme constructed per N: ``k-1`` (default),
    ``uniform``, or ``delta:K``.
    """
    points = []
    for n in n_values:
        n = int(n)
        fam = ClosedFormFamily(family, n, d=d,
                               a=a if family == "a-family" else None)
        w = cf_weaving(fam, _named_scheme(weights, n)) if n > 1 else 0.0
        norm_name = _sweep_normalization(family)
        if norm_name == "n*log2(n)":
            norm = n * math.log2(n) if n > 1 else 1.0
        elif norm_name == "n^2":
            norm = float(n * n)
        else:
            norm = float(n)
        points.append(SweepPoint(n, w, norm_name, w / norm))
    return points
