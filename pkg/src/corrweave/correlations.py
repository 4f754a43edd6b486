"""Correlation orders, weaving index, and neural complexity.

The distance of a state to the set of products over partitions with blocks
of at most ``k`` parties is, for the relative-entropy choice of distance,

    dist(k) = min over partitions P (max block <= k) of
              [ sum_blocks S(rho_block) - S(rho) ]        (bits),

because the closest product over a fixed partition is the product of the
marginals.  Genuine correlations of order ``k`` are consecutive
differences ``genuine(k) = dist(k-1) - dist(k)``, and the weaving index is
their weighted sum.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, ConsistencyError
from .partitions import (DEFAULT_ENUM_CAP, SetPartition, compact_partition,
                         enumerate_partitions)
from .tensor import (DensityState, is_permutation_invariant, marginal_entropy,
                     partial_trace, permute_subsystems, tensor_product)

#: dist/genuine values may dip this far below zero (or above the previous
#: order) before a consistency error is raised instead of clamping.
CLAMP_TOL = 1e-9
#: Agreement required between the two weaving summation forms.
DUAL_FORM_TOL = 1e-9
#: Agreement required between sum of genuine orders and total correlations.
PROFILE_SUM_TOL = 1e-8

MODE_BRUTE = "brute"
MODE_FAST = "symmetric-fast"
MODE_AUTO = "auto"
_MODE_ALIASES = {"fast": MODE_FAST, MODE_FAST: MODE_FAST,
                 MODE_BRUTE: MODE_BRUTE, MODE_AUTO: MODE_AUTO}


class SubsetEntropyCache:
    """Memoized marginal entropies of one state, keyed by subset bitmask.

    Fill policy is lazy by default: entropies are computed on first use.
    :meth:`fill_all` switches to the eager policy, computing every
    nonempty subset up front, optionally across a thread pool (results are
    independent per subset, so the outcome does not depend on scheduling).
    """

    def __init__(self, state: DensityState):
        self.state = state
        self.table: dict[int, float] = {}
        self.policy = "lazy"

    def entropy(self, subset: Iterable[int]) -> float:
        mask = 0
        for i in subset:
            mask |= 1 << i
        return self._entropy_mask(mask)

    def entropy_full(self) -> float:
        return self._entropy_mask((1 << self.state.n_parties) - 1)

    def _entropy_mask(self, mask: int) -> float:
        value = self.table.get(mask)
        if value is None:
            keep = [i for i in range(self.state.n_parties) if mask >> i & 1]
            value = marginal_entropy(self.state, keep)
            self.table[mask] = value
        return value

    def fill_all(self, workers: Optional[int] = None) -> None:
        """Compute every nonempty-subset entropy now (eager policy)."""
        n = self.state.n_parties
        masks = [m for m in range(1, 1 << n) if m not in self.table]
        if workers and workers > 1 and len(masks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for mask, value in zip(masks, pool.map(self._compute_mask, masks)):
                    self.table[mask] = value
        else:
            for mask in masks:
                self._entropy_mask(mask)
        self.policy = "eager-all-subsets"

    def _compute_mask(self, mask: int) -> float:
        keep = [i for i in range(self.state.n_parties) if mask >> i & 1]
        return marginal_entropy(self.state, keep)


class PartitionMinimum(NamedTuple):
    """Minimizing value (bits) and an achieving partition."""

    value: float
    argmin: SetPartition


@dataclass(frozen=True)
class CorrelationProfile:
    """Distances and genuine correlations of every order for one state.

    ``dist[k-1]`` holds dist(k) for k = 1..N (non-increasing, ending at 0);
    ``genuine[k-2]`` holds genuine(k) for k = 2..N; ``total`` equals
    dist(1), the total correlations.  ``argmin`` carries one minimizing
    partition per order when available.
    """

    n: int
    dist: tuple[float, ...]
    genuine: tuple[float, ...]
    total: float
    argmin: Optional[tuple[SetPartition, ...]] = None
    mode: str = MODE_BRUTE

    def dist_at(self, k: int) -> float:
        if not 1 <= k <= self.n:
            raise ArgumentError(f"order k={k} out of range 1..{self.n}")
        return self.dist[k - 1]

    def genuine_at(self, k: int) -> float:
        if not 2 <= k <= self.n:
            raise ArgumentError(f"order k={k} out of range 2..{self.n}")
        return self.genuine[k - 2]


@dataclass(frozen=True)
class WeightScheme:
    """Order weights for the weaving index, stored in both dual forms.

    ``omega[k-2]`` weighs genuine correlations of order k = 2..N;
    ``big_omega[i-1]`` weighs dist(i) for i = 1..N-1.  The forms are
    related by ``omega_k = sum_{i<k} big_omega_i``; construction keeps that
    identity exact by canonicalizing ``omega`` as the running sum of
    ``big_omega`` (entries provided in the other form may therefore be
    re-rounded by one ulp).  Only the form given by the caller is required
    to be nonnegative.
    """

    n: int
    omega: tuple[float, ...]
    big_omega: tuple[float, ...]
    name: str = "custom"

    @classmethod
    def from_big_omega(cls, big_omega: Sequence[float],
                       name: str = "custom") -> "WeightScheme":
        big = tuple(float(x) for x in big_omega)
        n = len(big) + 1
        if any(x < 0 for x in big):
            raise ArgumentError("big-omega weights must be nonnegative")
        return cls(n, _running_sum(big), big, name)

    @classmethod
    def from_omega(cls, omega: Sequence[float], name: str = "custom") -> "WeightScheme":
        om = tuple(float(x) for x in omega)
        n = len(om) + 1
        if any(x < 0 for x in om):
            raise ArgumentError("omega weights must be nonnegative")
        big = (om[0],) + tuple(om[k + 1] - om[k] for k in range(len(om) - 1))
        return cls(n, _running_sum(big), big, name)

    @classmethod
    def order_weighted(cls, n: int) -> "WeightScheme":
        """The default scheme ``omega_k = k - 1`` (``big_omega_i = 1``)."""
        _check_scheme_n(n)
        return cls.from_big_omega((1.0,) * (n - 1), name="k-1")

    @classmethod
    def uniform(cls, n: int) -> "WeightScheme":
        """``omega_k = 1`` for every order (``big_omega = (1, 0, .., 0)``)."""
        _check_scheme_n(n)
        return cls.from_omega((1.0,) * (n - 1), name="uniform")

    @classmethod
    def delta(cls, n: int, k: int) -> "WeightScheme":
        """Weight only genuine correlations of order ``k``."""
        _check_scheme_n(n)
        if not 2 <= k <= n:
            raise ArgumentError(f"delta order k={k} out of range 2..{n}")
        om = tuple(1.0 if j == k else 0.0 for j in range(2, n + 1))
        return cls.from_omega(om, name=f"delta:{k}")


def _check_scheme_n(n: int) -> None:
    if n < 2:
        raise ArgumentError(f"weight schemes need n >= 2, got {n}")


def _running_sum(big: Sequence[float]) -> tuple[float, ...]:
    out = []
    acc = 0.0
    for x in big:
        acc += x
        out.append(acc)
    return tuple(out)


def _resolve_mode(state: DensityState, mode: str) -> str:
    try:
        mode = _MODE_ALIASES[mode]
    except KeyError:
        raise ArgumentError(f"mode must be auto, brute, or fast, got {mode!r}") from None
    if mode == MODE_AUTO:
        return MODE_FAST if is_permutation_invariant(state) else MODE_BRUTE
    return mode


def dist_to_pk(state: DensityState, k: int, cache: Optional[SubsetEntropyCache] = None,
               mode: str = MODE_AUTO, *, enum_cap: int = DEFAULT_ENUM_CAP) -> PartitionMinimum:
    """Distance (bits) from ``state`` to products over partitions with
    blocks of at most ``k`` parties, with an achieving partition.

    ``brute`` minimizes over the full enumeration; ``symmetric-fast``
    evaluates only the compact partition (blocks of k plus a remainder),
    which achieves the minimum for permutation-invariant states; ``auto``
    picks fast exactly when the state is permutation invariant.  Ties in
    brute mode resolve to the earliest partition in canonical order.
    """
    n = state.n_parties
    if not 1 <= k <= n:
        raise ArgumentError(f"order k={k} out of range 1..{n}")
    if cache is None:
        cache = SubsetEntropyCache(state)
    mode = _resolve_mode(state, mode)
    s_full = cache.entropy_full()
    if mode == MODE_FAST:
        best_part = compact_partition(n, k)
        best = sum(cache.entropy(b) for b in best_part.blocks) - s_full
    else:
        best, best_part = math.inf, None
        for part in enumerate_partitions(n, k, max_n=enum_cap):
            value = sum(cache.entropy(b) for b in part.blocks) - s_full
            if value < best - 1e-15:
                best, best_part = value, part
    if best < -CLAMP_TOL:
        raise ConsistencyError(
            f"dist({k}) evaluated to {best}, below the -1e-9 clamp window")
    return PartitionMinimum(max(best, 0.0), best_part)


def profile(state: DensityState, mode: str = MODE_AUTO, *,
            cache: Optional[SubsetEntropyCache] = None,
            workers: Optional[int] = None,
            enum_cap: int = DEFAULT_ENUM_CAP) -> CorrelationProfile:
    """Full correlation profile: dist(k) for every order, genuine
    correlations as consecutive differences, and the total.

    Checks that dist is non-increasing and ends at 0, clamps dips below 0
    or above the previous order within 1e-9 (larger violations raise a
    consistency error), and verifies that the genuine orders sum back to
    the total within 1e-8.
    """
    n = state.n_parties
    if cache is None:
        cache = SubsetEntropyCache(state)
    resolved = _resolve_mode(state, mode)
    if resolved == MODE_BRUTE and n <= 10:
        cache.fill_all(workers)
    dist: list[float] = []
    argmin: list[SetPartition] = []
    for k in range(1, n + 1):
        value, part = dist_to_pk(state, k, cache, resolved, enum_cap=enum_cap)
        if dist and value > dist[-1] + CLAMP_TOL:
            raise ConsistencyError(
                f"dist({k}) = {value} exceeds dist({k - 1}) = {dist[-1]} beyond 1e-9")
        dist.append(value)
        argmin.append(part)
    if dist[-1] > CLAMP_TOL:
        raise ConsistencyError(f"dist({n}) = {dist[-1]} but the trivial partition gives 0")
    genuine = tuple(max(dist[k - 2] - dist[k - 1], 0.0) for k in range(2, n + 1))
    total = dist[0]
    if abs(sum(genuine) + dist[-1] - total) > PROFILE_SUM_TOL:
        raise ConsistencyError("genuine orders do not sum back to the total within 1e-8")
    return CorrelationProfile(n, tuple(dist), genuine, total,
                              argmin=tuple(argmin), mode=resolved)


def weaving(prof: CorrelationProfile, weights: WeightScheme) -> float:
    """Weaving index: ``sum_k omega_k * genuine(k)`` (bits).

    Evaluates both dual summation forms (the other being
    ``sum_i big_omega_i * dist(i)``) and requires them to agree within
    1e-9; returns the omega form.
    """
    if weights.n != prof.n:
        raise ArgumentError(
            f"weight scheme is for n={weights.n}, profile has n={prof.n}")
    if prof.n == 1:
        return 0.0
    omega_form = float(sum(w * g for w, g in zip(weights.omega, prof.genuine)))
    big_form = float(sum(w * s for w, s in zip(weights.big_omega, prof.dist[:-1])))
    scale = max(abs(omega_form), abs(big_form), 1.0)
    if abs(omega_form - big_form) > DUAL_FORM_TOL * scale:
        raise ConsistencyError(
            f"weaving dual forms disagree: {omega_form} vs {big_form}")
    return omega_form


def closest_product(state: DensityState, partition: SetPartition) -> DensityState:
    """Product of the state's block marginals over ``partition`` -- the
    closest product state for that fixed partition, with subsystems
    permuted back into the original order."""
    if partition.n != state.n_parties:
        raise ArgumentError(
            f"partition covers {partition.n} parties, state has {state.n_parties}")
    out = None
    for block in partition.blocks:
        marg = partial_trace(state, block)
        out = marg if out is None else tensor_product(out, marg)
    flat = [i for block in partition.blocks for i in block]
    perm = [flat.index(j) for j in range(state.n_parties)]
    return permute_subsystems(out, perm)


def multi_information(state: DensityState, cluster: Optional[Iterable[int]] = None,
                      cache: Optional[SubsetEntropyCache] = None) -> float:
    """Total correlations (bits) inside ``cluster`` (default: all parties):
    sum of single-site entropies minus the joint entropy."""
    if cache is None:
        cache = SubsetEntropyCache(state)
    sites = sorted(cluster) if cluster is not None else range(state.n_parties)
    sites = list(sites)
    if not sites:
        raise ArgumentError("cluster must be nonempty")
    value = sum(cache.entropy([i]) for i in sites) - cache.entropy(sites)
    if value < -CLAMP_TOL:
        raise ConsistencyError(f"multi-information evaluated to {value}")
    return max(value, 0.0)


def neural_complexity(state: DensityState,
                      cache: Optional[SubsetEntropyCache] = None, *,
                      workers: Optional[int] = None,
                      enum_cap: int = DEFAULT_ENUM_CAP) -> float:
    """Cluster-size-resolved integration measure (bits).

    ``C = sum_{k=1}^{N-1} [ (k/N) * total - <multi-information of size-k
    clusters> ]`` with the average over all size-k clusters.  Needs every
    subset entropy, so ``N`` is capped like partition enumeration.
    """
    n = state.n_parties
    if n > enum_cap:
        raise CapacityError(f"neural complexity needs all 2^{n} subsets; cap is {enum_cap}")
    if cache is None:
        cache = SubsetEntropyCache(state)
    if n <= 10:
        cache.fill_all(workers)
    singles = [cache.entropy([i]) for i in range(n)]
    total = sum(singles) - cache.entropy_full()
    by_size: dict[int, list[float]] = {k: [] for k in range(1, n)}
    for mask in range(1, (1 << n) - 1):
        sites = [i for i in range(n) if mask >> i & 1]
        k = len(sites)
        mi = sum(singles[i] for i in sites) - cache._entropy_mask(mask)
        by_size[k].append(mi)
    value = 0.0
    for k in range(1, n):
        value += k / n * total - float(np.mean(by_size[k]))
    return value
