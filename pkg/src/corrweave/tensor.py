"""Multipartite density operators and entropic primitives.

Finite-dimensional multipartite states with three interchangeable payload
representations, tracked by a tag:

* ``dense``     -- full complex density matrix;
* ``pure``      -- amplitude vector of a pure state;
* ``classical`` -- sparse probability table over digit tuples, for diagonal
  states whose Hilbert dimension can far exceed the dense capacity limit.

All entropies are in bits (base-2 logarithms).  Subsystems are indexed
``0 .. N-1``; composite indices follow the Kronecker convention (subsystem
0 is the most significant digit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, NumericError

#: Largest total Hilbert dimension admitted for dense/pure payloads.
#: Eigendecompositions beyond this are impractical; classical tables are
#: exempt because their cost scales with the number of nonzero entries.
DEFAULT_MAX_DENSE_DIM = 4096

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
PURE_NORM_TOL = 1e-12
CLASSICAL_SUM_TOL = 1e-12
#: Spectrum entries below this contribute zero to entropies.
EIG_CLIP = 1e-12
#: Probability weight outside the support of the second argument that makes
#: a relative entropy infinite.
SUPPORT_WEIGHT_TOL = 1e-9
#: Tolerance for detecting invariance under subsystem permutations.
PERM_INVARIANCE_TOL = 1e-10

REP_DENSE = "dense"
REP_PURE = "pure"
REP_CLASSICAL = "classical"


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise ArgumentError(f"dims must be a nonempty list of integers >= 2, got {dims}")
    return dims


def _check_capacity(dim: int, max_dim: Optional[int]) -> None:
    cap = DEFAULT_MAX_DENSE_DIM if max_dim is None else int(max_dim)
    if dim > cap:
        raise CapacityError(
            f"total dimension {dim} exceeds the dense capacity limit {cap}; "
            "raise max_dim explicitly if this is intentional"
        )


@dataclass(frozen=True, eq=False)
class DensityState:
    """Immutable multipartite state in one of three representations.

    Construct through :meth:`from_matrix`, :meth:`from_amplitudes` or
    :meth:`from_probabilities`; the raw constructor performs no validation.

    Attributes
    ----------
    dims : tuple of int
        Local dimension of each subsystem, all >= 2.
    rep : str
        One of ``dense``, ``pure``, ``classical``.
    permutation_invariant : bool or None
        ``True``/``False`` when known (constructors of symmetric families
        set it), ``None`` when it has not been determined yet.
    """

    dims: tuple[int, ...]
    rep: str
    _matrix: Optional[np.ndarray] = None
    _amps: Optional[np.ndarray] = None
    _table: Optional[dict] = None
    permutation_invariant: Optional[bool] = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix, dims, *, validate: bool = True,
                    permutation_invariant: Optional[bool] = None,
                    max_dim: Optional[int] = None) -> "DensityState":
        """Wrap a dense density matrix.

        Validation enforces hermiticity within 1e-10, unit trace within
        1e-10 and smallest eigenvalue >= -1e-10.
        """
        dims = _check_dims(dims)
        dim = math.prod(dims)
        _check_capacity(dim, max_dim)
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (dim, dim):
            raise ArgumentError(f"matrix shape {m.shape} does not match dims {dims}")
        if validate:
            if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
                raise ArgumentError("matrix is not Hermitian within 1e-10")
            if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
                raise ArgumentError("matrix trace differs from 1 beyond 1e-10")
            if np.linalg.eigvalsh(_hermitize(m)).min() < -PSD_TOL:
                raise ArgumentError("matrix has an eigenvalue below -1e-10")
        m = m.copy()
        m.setflags(write=False)
        return cls(dims, REP_DENSE, _matrix=m,
                   permutation_invariant=permutation_invariant)

    @classmethod
    def from_amplitudes(cls, amps, dims, *, validate: bool = True,
                        permutation_invariant: Optional[bool] = None,
                        max_dim: Optional[int] = None) -> "DensityState":
        """Wrap a pure state's amplitude vector (unit norm within 1e-12)."""
        dims = _check_dims(dims)
        dim = math.prod(dims)
        _check_capacity(dim, max_dim)
        a = np.asarray(amps, dtype=complex).reshape(-1)
        if a.shape != (dim,):
            raise ArgumentError(f"amplitude length {a.shape[0]} does not match dims {dims}")
        if validate and abs(np.linalg.norm(a) - 1.0) > PURE_NORM_TOL:
            raise ArgumentError("amplitude vector norm differs from 1 beyond 1e-12")
        a = a.copy()
        a.setflags(write=False)
        return cls(dims, REP_PURE, _amps=a,
                   permutation_invariant=permutation_invariant)

    @classmethod
    def from_probabilities(cls, table: Mapping, dims, *, validate: bool = True,
                           permutation_invariant: Optional[bool] = None) -> "DensityState":
        """Wrap a sparse probability table ``{digit tuple: probability}``.

        Digits are checked against ``dims`` per position; probabilities must
        be nonnegative and sum to 1 within 1e-12.  No capacity limit applies.
        """
        dims = _check_dims(dims)
        n = len(dims)
        clean: dict = {}
        total = 0.0
        for key, p in table.items():
            key = tuple(int(x) for x in key)
            p = float(p)
            if validate:
                if len(key) != n or any(not 0 <= x < d for x, d in zip(key, dims)):
                    raise ArgumentError(f"digit string {key} incompatible with dims {dims}")
                if p < -CLASSICAL_SUM_TOL:
                    raise ArgumentError(f"negative probability {p} at {key}")
                if key in clean:
                    raise ArgumentError(f"duplicate digit string {key}")
            total += p
            if p > 0.0:
                clean[key] = p
        if validate and abs(total - 1.0) > CLASSICAL_SUM_TOL:
            raise ArgumentError(f"probabilities sum to {total}, not 1 within 1e-12")
        return cls(dims, REP_CLASSICAL, _table=clean,
                   permutation_invariant=permutation_invariant)

    # -- basic properties ---------------------------------------------

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    @property
    def is_pure(self) -> bool:
        return self.rep == REP_PURE

    @property
    def is_classical(self) -> bool:
        return self.rep == REP_CLASSICAL

    def amplitudes(self) -> np.ndarray:
        if self.rep != REP_PURE:
            raise ArgumentError(f"state has representation {self.rep!r}, not pure")
        return self._amps

    def probabilities(self) -> dict:
        if self.rep != REP_CLASSICAL:
            raise ArgumentError(f"state has representation {self.rep!r}, not classical")
        return dict(self._table)

    def to_matrix(self, *, max_dim: Optional[int] = None) -> np.ndarray:
        """Materialize the dense density matrix (capacity-checked)."""
        if self.rep == REP_DENSE:
            return self._matrix
        _check_capacity(self.dim, max_dim)
        if self.rep == REP_PURE:
            m = np.outer(self._amps, self._amps.conj())
        else:
            m = np.zeros((self.dim, self.dim), dtype=complex)
            for key, p in self._table.items():
                i = _ravel_digits(key, self.dims)
                m[i, i] = p
        m.setflags(write=False)
        return m

    def __repr__(self) -> str:  # identity-based equality; repr aids debugging
        flag = self.permutation_invariant
        return f"DensityState(dims={self.dims}, rep={self.rep!r}, perm_inv={flag})"


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def _ravel_digits(key: Sequence[int], dims: Sequence[int]) -> int:
    i = 0
    for x, d in zip(key, dims):
        i = i * d + x
    return i


def _unravel_index(i: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        out.append(i % d)
        i //= d
    return tuple(reversed(out))


def _normalize_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    keep = tuple(sorted(int(i) for i in keep))
    if not keep:
        raise ArgumentError("keep-set must be nonempty")
    if len(set(keep)) != len(keep):
        raise ArgumentError(f"keep-set {keep} contains duplicates")
    if keep[0] < 0 or keep[-1] >= n:
        raise ArgumentError(f"keep-set {keep} out of range for {n} subsystems")
    return keep


# -- composition and reduction ----------------------------------------


def tensor_product(a: DensityState, b: DensityState, *,
                   max_dim: Optional[int] = None) -> DensityState:
    """Kronecker product of two states; ``a`` occupies the leading subsystems.

    The output representation is pure if both inputs are pure, classical if
    both are classical, dense otherwise.  Dense and pure outputs are
    capacity-limited (default 4096 total dimension); classical outputs are
    not.
    """
    dims = a.dims + b.dims
    if a.rep == REP_PURE and b.rep == REP_PURE:
        amps = np.kron(a._amps, b._amps)
        return DensityState.from_amplitudes(amps, dims, validate=False, max_dim=max_dim)
    if a.rep == REP_CLASSICAL and b.rep == REP_CLASSICAL:
        table = {ka + kb: pa * pb
                 for ka, pa in a._table.items()
                 for kb, pb in b._table.items()}
        return DensityState.from_probabilities(table, dims, validate=False)
    _check_capacity(math.prod(dims), max_dim)
    m = np.kron(a.to_matrix(max_dim=max_dim), b.to_matrix(max_dim=max_dim))
    return DensityState.from_matrix(m, dims, validate=False, max_dim=max_dim)


def partial_trace(state: DensityState, keep: Iterable[int]) -> DensityState:
    """Marginal state on the sorted index-set ``keep``.

    Classical states stay classical; pure states stay pure only when every
    subsystem is kept, otherwise the marginal is dense.
    """
    n = state.n_parties
    keep = _normalize_keep(keep, n)
    if len(keep) == n:
        return state
    out_dims = tuple(state.dims[i] for i in keep)
    perm_flag = True if (state.permutation_invariant or len(keep) == 1) else None
    if state.rep == REP_CLASSICAL:
        table: dict = {}
        for key, p in state._table.items():
            sub = tuple(key[i] for i in keep)
            table[sub] = table.get(sub, 0.0) + p
        return DensityState.from_probabilities(table, out_dims, validate=False,
                                               permutation_invariant=perm_flag)
    if state.rep == REP_PURE:
        block = _pure_marginal_matrix(state, keep)
        return DensityState.from_matrix(block, out_dims, validate=False,
                                        permutation_invariant=perm_flag)
    m = _dense_partial_trace(state._matrix, state.dims, keep)
    return DensityState.from_matrix(m, out_dims, validate=False,
                                    permutation_invariant=perm_flag)


def _pure_amp_matrix(state: DensityState, keep: Sequence[int]) -> np.ndarray:
    """Amplitudes reshaped to (dim kept, dim traced)."""
    n = state.n_parties
    rest = [i for i in range(n) if i not in keep]
    t = state._amps.reshape(state.dims)
    t = np.transpose(t, list(keep) + rest)
    dk = math.prod(state.dims[i] for i in keep)
    return t.reshape(dk, -1)


def _pure_marginal_matrix(state: DensityState, keep: Sequence[int]) -> np.ndarray:
    a = _pure_amp_matrix(state, keep)
    return a @ a.conj().T


def _dense_partial_trace(matrix: np.ndarray, dims: Sequence[int],
                         keep: Sequence[int]) -> np.ndarray:
    n = len(dims)
    t = matrix.reshape(tuple(dims) * 2)
    # Trace out discarded subsystems one at a time, highest index first so
    # earlier axis positions stay valid.
    traced = 0
    for i in sorted((j for j in range(n) if j not in keep), reverse=True):
        m = n - traced
        t = np.trace(t, axis1=i, axis2=m + i)
        traced += 1
    dk = math.prod(dims[i] for i in keep)
    return t.reshape(dk, dk)


def permute_subsystems(state: DensityState, perm: Sequence[int]) -> DensityState:
    """Reorder subsystems: output subsystem ``j`` is input subsystem ``perm[j]``."""
    n = state.n_parties
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(n)):
        raise ArgumentError(f"{perm} is not a permutation of 0..{n - 1}")
    out_dims = tuple(state.dims[p] for p in perm)
    if state.rep == REP_PURE:
        t = state._amps.reshape(state.dims)
        amps = np.transpose(t, perm).reshape(-1)
        return DensityState.from_amplitudes(amps, out_dims, validate=False,
                                            permutation_invariant=state.permutation_invariant)
    if state.rep == REP_CLASSICAL:
        table = {tuple(key[p] for p in perm): v for key, v in state._table.items()}
        return DensityState.from_probabilities(table, out_dims, validate=False,
                                               permutation_invariant=state.permutation_invariant)
    t = state._matrix.reshape(state.dims * 2)
    axes = perm + tuple(n + p for p in perm)
    m = np.transpose(t, axes).reshape(state.dim, state.dim)
    return DensityState.from_matrix(m, out_dims, validate=False,
                                    permutation_invariant=state.permutation_invariant)


def refine_subsystem(state: DensityState, index: int,
                     split: Sequence[int]) -> DensityState:
    """Reinterpret subsystem ``index`` as a composite with local dims ``split``.

    The payload is unchanged; only the dimension bookkeeping is refined.
    ``prod(split)`` must equal ``dims[index]`` and every factor must be >= 2.
    """
    n = state.n_parties
    if not 0 <= index < n:
        raise ArgumentError(f"index {index} out of range for {n} subsystems")
    split = _check_dims(split)
    if math.prod(split) != state.dims[index]:
        raise ArgumentError(
            f"split {split} has product {math.prod(split)}, "
            f"expected {state.dims[index]}")
    out_dims = state.dims[:index] + split + state.dims[index + 1:]
    if state.rep == REP_CLASSICAL:
        table = {key[:index] + _unravel_index(key[index], split) + key[index + 1:]: v
                 for key, v in state._table.items()}
        return DensityState.from_probabilities(table, out_dims, validate=False)
    if state.rep == REP_PURE:
        return DensityState.from_amplitudes(state._amps, out_dims, validate=False)
    return DensityState.from_matrix(state._matrix, out_dims, validate=False)


def merge_subsystems(state: DensityState, start: int, count: int) -> DensityState:
    """Inverse of :func:`refine_subsystem`: fuse ``count`` adjacent subsystems."""
    n = state.n_parties
    if count < 2 or not 0 <= start <= n - count:
        raise ArgumentError(f"cannot merge {count} subsystems at {start} of {n}")
    merged = math.prod(state.dims[start:start + count])
    out_dims = state.dims[:start] + (merged,) + state.dims[start + count:]
    if state.rep == REP_CLASSICAL:
        table = {key[:start] + (_ravel_digits(key[start:start + count],
                                              state.dims[start:start + count]),)
                 + key[start + count:]: v
                 for key, v in state._table.items()}
        return DensityState.from_probabilities(table, out_dims, validate=False)
    if state.rep == REP_PURE:
        return DensityState.from_amplitudes(state._amps, out_dims, validate=False)
    return DensityState.from_matrix(state._matrix, out_dims, validate=False)


# -- channels ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Completely positive trace-preserving map given by Kraus operators.

    ``targets`` are the subsystem indices the operators act on, in the
    order matching the operators' tensor factorization.  Completeness
    (sum of K^dagger K equal to the identity within 1e-10) is enforced at
    construction.
    """

    kraus: tuple[np.ndarray, ...]
    targets: tuple[int, ...]

    def __init__(self, kraus, targets):
        ops = tuple(np.asarray(k, dtype=complex) for k in kraus)
        targets = tuple(int(t) for t in targets)
        if not ops:
            raise ArgumentError("channel needs at least one Kraus operator")
        d = ops[0].shape[0] if ops[0].ndim == 2 else 0
        if any(k.ndim != 2 or k.shape != (d, d) for k in ops) or d < 2:
            raise ArgumentError("Kraus operators must share one square shape")
        if len(set(targets)) != len(targets) or not targets:
            raise ArgumentError(f"targets {targets} must be distinct and nonempty")
        comp = sum(k.conj().T @ k for k in ops)
        if np.abs(comp - np.eye(d)).max() > HERMITICITY_TOL:
            raise ArgumentError("Kraus set is incomplete: sum K^t K differs "
                                "from identity beyond 1e-10")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "targets", targets)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def apply_channel(state: DensityState, channel: KrausChannel) -> DensityState:
    """Apply a Kraus channel on its target subsystems.

    A single-operator channel (necessarily an isometry) keeps a pure input
    pure; every other case materializes a dense output.
    """
    n = state.n_parties
    targets = channel.targets
    if any(not 0 <= t < n for t in targets):
        raise ArgumentError(f"targets {targets} out of range for {n} subsystems")
    tdims = tuple(state.dims[t] for t in targets)
    if math.prod(tdims) != channel.dim:
        raise ArgumentError(
            f"channel dimension {channel.dim} does not match joint target "
            f"dimension {math.prod(tdims)}")
    if state.rep == REP_PURE and len(channel.kraus) == 1:
        amps = _apply_op_to_amps(state._amps, state.dims, channel.kraus[0], targets)
        return DensityState.from_amplitudes(amps, state.dims)
    rho = state.to_matrix()
    out = _apply_kraus_dense(rho, state.dims, channel.kraus, targets)
    return DensityState.from_matrix(out, state.dims)


def _apply_op_to_amps(amps: np.ndarray, dims: Sequence[int], op: np.ndarray,
                      targets: Sequence[int]) -> np.ndarray:
    m = len(targets)
    tdims = tuple(dims[t] for t in targets)
    kt = op.reshape(tdims * 2)
    t = amps.reshape(dims)
    out = np.tensordot(kt, t, axes=(tuple(range(m, 2 * m)), tuple(targets)))
    out = np.moveaxis(out, tuple(range(m)), tuple(targets))
    return out.reshape(-1)


def _apply_kraus_dense(rho: np.ndarray, dims: Sequence[int],
                       kraus: Sequence[np.ndarray],
                       targets: Sequence[int]) -> np.ndarray:
    n = len(dims)
    m = len(targets)
    tdims = tuple(dims[t] for t in targets)
    rt = rho.reshape(tuple(dims) * 2)
    col_axes = tuple(n + t for t in targets)
    out = np.zeros_like(rt)
    for k in kraus:
        kt = k.reshape(tdims * 2)
        a = np.tensordot(kt, rt, axes=(tuple(range(m, 2 * m)), tuple(targets)))
        a = np.moveaxis(a, tuple(range(m)), tuple(targets))
        b = np.tensordot(a, kt.conj(), axes=(col_axes, tuple(range(m, 2 * m))))
        b = np.moveaxis(b, tuple(range(2 * n - m, 2 * n)), col_axes)
        out += b
    return out.reshape(rho.shape)


# -- entropies ---------------------------------------------------------


def _shannon_bits(p: np.ndarray) -> float:
    p = p[p > EIG_CLIP]
    if p.size == 0:
        return 0.0
    return float(max(-(p * np.log2(p)).sum(), 0.0))


def vn_entropy(state: DensityState) -> float:
    """Von Neumann entropy in bits; exactly 0.0 for pure representations."""
    if state.rep == REP_PURE:
        return 0.0
    if state.rep == REP_CLASSICAL:
        return _shannon_bits(np.fromiter(state._table.values(), dtype=float,
                                         count=len(state._table)))
    evals = np.linalg.eigvalsh(_hermitize(state._matrix))
    return _shannon_bits(evals)


def marginal_entropy(state: DensityState, keep: Iterable[int]) -> float:
    """Entropy in bits of the marginal on ``keep``, without materializing
    the marginal when a cheaper route exists.

    Pure states use the singular values of the reshaped amplitude tensor,
    so the cost scales with the smaller of the kept/discarded dimensions.
    """
    n = state.n_parties
    keep = _normalize_keep(keep, n)
    if state.rep == REP_PURE:
        if len(keep) == n:
            return 0.0
        a = _pure_amp_matrix(state, keep)
        if a.shape[0] > a.shape[1]:
            a = a.T
        s = np.linalg.svd(a, compute_uv=False)
        return _shannon_bits(s * s)
    if len(keep) == n:
        return vn_entropy(state)
    return vn_entropy(partial_trace(state, keep))


def relative_entropy(rho: DensityState, sigma: DensityState) -> float:
    """Relative entropy S(rho || sigma) in bits.

    Returns ``math.inf`` when rho places more than 1e-9 of probability
    weight outside sigma's support (spectrum entries below 1e-12 count as
    outside).
    """
    if rho.dims != sigma.dims:
        raise ArgumentError(f"dims differ: {rho.dims} vs {sigma.dims}")
    if rho.rep == REP_CLASSICAL and sigma.rep == REP_CLASSICAL:
        missing = 0.0
        cross = 0.0
        q = sigma._table
        for key, p in rho._table.items():
            if p <= EIG_CLIP:
                continue
            qk = q.get(key, 0.0)
            if qk < EIG_CLIP:
                missing += p
            else:
                cross += p * (math.log2(p) - math.log2(qk))
        if missing > SUPPORT_WEIGHT_TOL:
            return math.inf
        return float(cross)
    rm = rho.to_matrix()
    evals, vecs = np.linalg.eigh(_hermitize(sigma.to_matrix()))
    w = np.einsum("ij,jk,ki->i", vecs.conj().T, rm, vecs).real
    bad = evals < EIG_CLIP
    if w[bad].clip(min=0.0).sum() > SUPPORT_WEIGHT_TOL:
        return math.inf
    cross = -(w[~bad] * np.log2(evals[~bad])).sum()
    return float(cross - vn_entropy(rho))


# -- structural queries -------------------------------------------------


def max_entry_distance(a: DensityState, b: DensityState) -> float:
    """Largest absolute entrywise difference between the two density matrices."""
    if a.dims != b.dims:
        raise ArgumentError(f"dims differ: {a.dims} vs {b.dims}")
    if a.rep == REP_CLASSICAL and b.rep == REP_CLASSICAL:
        keys = set(a._table) | set(b._table)
        return max(abs(a._table.get(k, 0.0) - b._table.get(k, 0.0)) for k in keys)
    return float(np.abs(a.to_matrix() - b.to_matrix()).max())


def is_permutation_invariant(state: DensityState,
                             tol: float = PERM_INVARIANCE_TOL) -> bool:
    """Whether the state is invariant under every subsystem permutation.

    Uses the constructor-provided flag when present; otherwise tests the
    generating transposition (0 1) and the full cycle, which together
    generate the symmetric group, and caches the verdict on the state.
    """
    if state.permutation_invariant is not None:
        return state.permutation_invariant
    n = state.n_parties
    verdict = True
    if n > 1:
        if len(set(state.dims)) > 1:
            verdict = False
        else:
            swap = (1, 0) + tuple(range(2, n))
            cycle = tuple(range(1, n)) + (0,)
            for perm in (swap, cycle):
                if _permutation_distance(state, perm) > tol:
                    verdict = False
                    break
    object.__setattr__(state, "permutation_invariant", verdict)
    return verdict


def _permutation_distance(state: DensityState, perm: Sequence[int]) -> float:
    permuted = permute_subsystems(state, perm)
    if state.rep == REP_PURE:
        # rho invariance for pure states <=> unit overlap magnitude
        ov = abs(np.vdot(permuted._amps, state._amps))
        return abs(1.0 - ov)
    return max_entry_distance(permuted, state)
