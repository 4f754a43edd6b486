"""Constructors for the named state families and the CLI's state vocabulary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import ArgumentError
from .tensor import DensityState, tensor_product


def make_ghz(n: int, d: int = 2, *, max_dim: Optional[int] = None) -> DensityState:
    """N-party GHZ state ``(|0..0> + |1..1>)/sqrt(2)``.

    Only levels 0 and 1 are superposed for every local dimension ``d``; the
    state lives in a two-level subspace of each qudit.
    """
    if n < 1 or d < 2:
        raise ArgumentError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    dim = d ** n
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1 / math.sqrt(2)
    amps[_repdigit_index(1, n, d)] = 1 / math.sqrt(2)
    return DensityState.from_amplitudes(amps, (d,) * n, validate=False,
                                        permutation_invariant=True, max_dim=max_dim)


def make_classical(n: int, d: int = 2) -> DensityState:
    """Uniform mixture of the ``d`` repeated digit strings ``|ii...i>``.

    Fully correlated classical state; stored as a sparse probability table,
    so ``n`` far beyond the dense capacity is fine.
    """
    if n < 1 or d < 2:
        raise ArgumentError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    table = {(i,) * n: 1.0 / d for i in range(d)}
    return DensityState.from_probabilities(table, (d,) * n, validate=False,
                                           permutation_invariant=True)


def make_dicke(n: int, m: int, *, max_dim: Optional[int] = None) -> DensityState:
    """N-qubit Dicke state: equal superposition of all strings with ``m`` ones."""
    if n < 1 or not 0 <= m <= n:
        raise ArgumentError(f"need 0 <= m <= n with n >= 1, got n={n}, m={m}")
    amps = np.zeros(2 ** n, dtype=complex)
    coef = 1 / math.sqrt(math.comb(n, m))
    for ones in combinations(range(n), m):
        idx = sum(1 << (n - 1 - i) for i in ones)
        amps[idx] = coef
    return DensityState.from_amplitudes(amps, (2,) * n, validate=False,
                                        permutation_invariant=True, max_dim=max_dim)


def make_bell_product(n: int, d: int = 2, *, max_dim: Optional[int] = None) -> DensityState:
    """Product of ``n/2`` maximally entangled pairs on adjacent subsystems.

    Each pair is ``sum_i |ii> / sqrt(d)``; ``n`` must be even.
    """
    if n < 2 or n % 2 or d < 2:
        raise ArgumentError(f"need even n >= 2 and d >= 2, got n={n}, d={d}")
    pair = np.zeros(d * d, dtype=complex)
    for i in range(d):
        pair[i * d + i] = 1 / math.sqrt(d)
    amps = pair
    for _ in range(n // 2 - 1):
        amps = np.kron(amps, pair)
    return DensityState.from_amplitudes(amps, (d,) * n, validate=False,
                                        permutation_invariant=(n == 2), max_dim=max_dim)


def make_classical_pair_product(n: int) -> DensityState:
    """Product of ``n/2`` perfectly correlated classical bit pairs."""
    if n < 2 or n % 2:
        raise ArgumentError(f"need even n >= 2, got n={n}")
    pairs = n // 2
    table = {}
    for bits in range(2 ** pairs):
        key = []
        for j in range(pairs):
            b = (bits >> (pairs - 1 - j)) & 1
            key += [b, b]
        table[tuple(key)] = 0.5 ** pairs
    return DensityState.from_probabilities(table, (2,) * n, validate=False,
                                           permutation_invariant=(n == 2))


def make_a_family(k: int, a: float, *, max_dim: Optional[int] = None) -> DensityState:
    """K-qubit state ``a|0..0> + sqrt(1-a^2)|1..1>``.

    Interpolates between product states (``a`` in {0, 1}) and the GHZ
    state (``a = 1/sqrt(2)``); its correlations of every order scale with
    the binary entropy of ``a^2``.
    """
    if k < 1:
        raise ArgumentError(f"need k >= 1, got {k}")
    if not 0.0 <= a <= 1.0:
        raise ArgumentError(f"need 0 <= a <= 1, got {a}")
    amps = np.zeros(2 ** k, dtype=complex)
    amps[0] = a
    amps[-1] = math.sqrt(max(1.0 - a * a, 0.0))
    return DensityState.from_amplitudes(amps, (2,) * k, validate=False,
                                        permutation_invariant=True, max_dim=max_dim)


def _repdigit_index(digit: int, n: int, d: int) -> int:
    i = 0
    for _ in range(n):
        i = i * d + digit
    return i


# -- CLI vocabulary ------------------------------------------------------

_FAMILY_ALIASES = {
    "classical-correlated": "classical",
    "qudit-classical": "classical",
    "qudit-bell-product": "bell-product",
}

_FAMILIES = ("ghz", "classical", "dicke", "bell-product",
             "classical-pair-product", "a-family")


@dataclass(frozen=True)
class StateFamily:
    """Parsed family spec: a named constructor plus its parameters.

    String form ``family:N[:extra]``, where ``extra`` is the local
    dimension ``d`` (ghz, classical, bell-product), the excitation number
    ``m`` (dicke, required), or the amplitude ``a`` (a-family, required;
    here ``N`` is the party count ``k``).
    """

    family: str
    n: int
    d: int = 2
    m: Optional[int] = None
    a: Optional[float] = None

    @classmethod
    def parse(cls, text: str) -> "StateFamily":
        parts = text.strip().split(":")
        name = _FAMILY_ALIASES.get(parts[0], parts[0])
        if name not in _FAMILIES:
            raise ArgumentError(
                f"unknown family {parts[0]!r}; choose from {', '.join(_FAMILIES)}")
        if len(parts) < 2:
            raise ArgumentError(f"family spec {text!r} is missing the party count")
        try:
            n = int(parts[1])
        except ValueError:
            raise ArgumentError(f"party count {parts[1]!r} is not an integer") from None
        extra = parts[2] if len(parts) > 2 else None
        if len(parts) > 3:
            raise ArgumentError(f"too many fields in family spec {text!r}")
        d, m, a = 2, None, None
        if name == "dicke":
            if extra is None:
                raise ArgumentError("dicke spec needs an excitation count, e.g. dicke:4:2")
            m = int(extra)
        elif name == "a-family":
            if extra is None:
                raise ArgumentError("a-family spec needs an amplitude, e.g. a-family:3:0.6")
            a = float(extra)
        elif extra is not None:
            if name == "classical-pair-product":
                raise ArgumentError("classical-pair-product takes no extra parameter")
            d = int(extra)
        return cls(name, n, d=d, m=m, a=a)

    def build(self) -> DensityState:
        if self.family == "ghz":
            return make_ghz(self.n, self.d)
        if self.family == "classical":
            return make_classical(self.n, self.d)
        if self.family == "dicke":
            return make_dicke(self.n, self.m)
        if self.family == "bell-product":
            return make_bell_product(self.n, self.d)
        if self.family == "classical-pair-product":
            return make_classical_pair_product(self.n)
        return make_a_family(self.n, self.a)

    def label(self) -> str:
        if self.family == "dicke":
            return f"dicke:{self.n}:{self.m}"
        if self.family == "a-family":
            return f"a-family:{self.n}:{self.a:g}"
        if self.d != 2:
            return f"{self.family}:{self.n}:{self.d}"
        return f"{self.family}:{self.n}"
