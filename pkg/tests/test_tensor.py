import math

import numpy as np
import pytest

from corrweave import (ArgumentError, CapacityError, DensityState, KrausChannel,
                       apply_channel, is_permutation_invariant, make_bell_product,
                       make_classical, make_dicke, make_ghz, marginal_entropy,
                       max_entry_distance, merge_subsystems, partial_trace,
                       permute_subsystems, refine_subsystem, relative_entropy,
                       tensor_product, vn_entropy)
from corrweave.random_states import (haar_state, haar_unitary, random_channel,
                                     random_classical, random_density)

RNG = np.random.default_rng(90210)

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)


# -- construction and validation ----------------------------------------

def test_from_matrix_validation():
    good = np.eye(4) / 4
    s = DensityState.from_matrix(good, (2, 2))
    assert s.rep == "dense" and s.dims == (2, 2) and s.dim == 4

    with pytest.raises(ArgumentError):
        DensityState.from_matrix(good, (2, 3))
    bad = good + 1e-8 * np.array([[0, 1j], [0, 0]]).repeat(2, 0).repeat(2, 1)
    with pytest.raises(ArgumentError):
        DensityState.from_matrix(bad, (2, 2))  # not Hermitian
    with pytest.raises(ArgumentError):
        DensityState.from_matrix(np.eye(4), (2, 2))  # trace 4
    neg = np.diag([0.6, 0.5, -0.1, 0.0])
    with pytest.raises(ArgumentError):
        DensityState.from_matrix(neg, (2, 2))


def test_from_amplitudes_validation():
    s = DensityState.from_amplitudes([1, 0, 0, 0], (2, 2))
    assert s.is_pure and vn_entropy(s) == 0.0
    with pytest.raises(ArgumentError):
        DensityState.from_amplitudes([1, 1, 0, 0], (2, 2))  # norm sqrt(2)
    with pytest.raises(ArgumentError):
        DensityState.from_amplitudes([1, 0], (2, 2))


def test_from_probabilities_validation():
    s = DensityState.from_probabilities({(0, 0): 0.5, (1, 1): 0.5}, (2, 2))
    assert s.is_classical
    with pytest.raises(ArgumentError):
        DensityState.from_probabilities({(0, 2): 1.0}, (2, 2))  # digit >= dim
    with pytest.raises(ArgumentError):
        DensityState.from_probabilities({(0,): 0.9}, (2,))  # sums to 0.9
    with pytest.raises(ArgumentError):
        DensityState.from_probabilities({(0, 0): 1.5, (1, 1): -0.5}, (2, 2))
    with pytest.raises(ArgumentError):
        DensityState.from_probabilities({(0,): 1.0}, (1,))  # dim < 2


def test_capacity_limits():
    with pytest.raises(CapacityError):
        DensityState.from_amplitudes(np.zeros(2 ** 13), (2,) * 13)
    amps = np.zeros(2 ** 13)
    amps[0] = 1.0
    big = DensityState.from_amplitudes(amps, (2,) * 13, max_dim=2 ** 13)
    assert big.n_parties == 13
    # classical tables are exempt from the dense cap
    wide = make_classical(30)
    assert wide.dim == 2 ** 30
    with pytest.raises(CapacityError):
        wide.to_matrix()


def test_matrix_materialization_routes():
    pure = haar_state((2, 2), RNG)
    m = pure.to_matrix()
    assert abs(np.trace(m) - 1) < 1e-12
    cl = make_classical(2)
    expect = np.diag([0.5, 0, 0, 0.5])
    assert np.abs(cl.to_matrix() - expect).max() == 0.0


# -- tensor products ------------------------------------------------------

def test_tensor_product_rep_rules():
    bell = make_bell_product(2)
    both = tensor_product(bell, bell)
    assert both.is_pure and both.dims == (2, 2, 2, 2)
    assert np.array_equal(both.amplitudes(), make_bell_product(4).amplitudes())

    cc = tensor_product(make_classical(2), make_classical(3))
    assert cc.is_classical and cc.dims == (2,) * 5

    mixed = tensor_product(bell, random_density((2,), RNG))
    assert mixed.rep == "dense"

    kron = np.kron(bell.to_matrix(), make_classical(2).to_matrix())
    assert max_entry_distance(tensor_product(bell, make_classical(2)),
                              DensityState.from_matrix(kron, (2,) * 4)) < 1e-14


def test_tensor_product_classical_uncapped():
    a = make_classical(20)
    b = make_classical(15)
    ab = tensor_product(a, b)
    assert ab.dims == (2,) * 35 and ab.is_classical
    with pytest.raises(CapacityError):
        tensor_product(make_ghz(7), make_ghz(7))  # 2^14 dense


# -- partial trace ---------------------------------------------------------

def test_partial_trace_ghz():
    marg = partial_trace(make_ghz(3), (0, 1))
    assert max_entry_distance(marg, make_classical(2)) < 1e-15
    assert marg.permutation_invariant is True


def test_partial_trace_args_and_reps():
    s = make_ghz(3)
    assert partial_trace(s, (0, 1, 2)) is s
    with pytest.raises(ArgumentError):
        partial_trace(s, ())
    with pytest.raises(ArgumentError):
        partial_trace(s, (0, 0))
    with pytest.raises(ArgumentError):
        partial_trace(s, (0, 3))
    cl = partial_trace(make_classical(4), (1, 3))
    assert cl.is_classical and cl.dims == (2, 2)


def test_partial_trace_trace_preserved():
    for s in (random_density((2, 3, 2), RNG), haar_state((2, 2, 2), RNG),
              random_classical((2, 2, 2), RNG)):
        for keep in ((0,), (0, 2), (1,)):
            m = partial_trace(s, keep)
            assert abs(np.trace(m.to_matrix()).real - 1.0) < 1e-12


def test_marginal_entropy_routes_agree():
    # pure SVD route vs dense eigendecomposition of the same marginal
    s = haar_state((2, 2, 3), RNG)
    for keep in ((0,), (1, 2), (0, 2)):
        via_svd = marginal_entropy(s, keep)
        via_dense = vn_entropy(partial_trace(s, keep))
        assert abs(via_svd - via_dense) < 1e-10
    # classical table route vs materialized diagonal
    c = random_classical((2, 2, 2), RNG)
    dense = DensityState.from_matrix(c.to_matrix(), c.dims)
    for keep in ((0,), (0, 1), (1, 2)):
        assert abs(marginal_entropy(c, keep) - marginal_entropy(dense, keep)) < 1e-10


# -- entropies --------------------------------------------------------------

def test_vn_entropy_values():
    assert vn_entropy(make_ghz(5)) == 0.0
    mixed = DensityState.from_matrix(np.eye(4) / 4, (2, 2))
    assert abs(vn_entropy(mixed) - 2.0) < 1e-12  # bits, not nats
    assert abs(vn_entropy(make_classical(1, 2)) - 1.0) < 1e-15
    assert abs(vn_entropy(make_classical(3, 4)) - 2.0) < 1e-15


def test_vn_entropy_unitary_invariance():
    for _ in range(20):
        s = random_density((2, 2), RNG)
        u = haar_unitary(4, RNG)
        rotated = DensityState.from_matrix(u @ s.to_matrix() @ u.conj().T, (2, 2))
        assert abs(vn_entropy(rotated) - vn_entropy(s)) < 1e-9


def test_relative_entropy_basics():
    r = random_density((2, 2), RNG)
    assert abs(relative_entropy(r, r)) < 1e-12
    for _ in range(20):
        a = random_density((2, 2), RNG)
        b = random_density((2, 2), RNG)
        v = relative_entropy(a, b)
        assert v > 1e-6  # distinct full-rank states keep a gap
    with pytest.raises(ArgumentError):
        relative_entropy(random_density((2, 2), RNG), random_density((4,), RNG))


def test_relative_entropy_support():
    mixed = random_density((2,), RNG)
    pure = haar_state((2,), RNG)
    assert relative_entropy(mixed, pure) == math.inf
    assert relative_entropy(pure, mixed) < math.inf
    # classical tables: disjoint support
    p = DensityState.from_probabilities({(0,): 1.0}, (2,))
    q = DensityState.from_probabilities({(1,): 1.0}, (2,))
    assert relative_entropy(p, q) == math.inf
    assert relative_entropy(p, p) == 0.0


def test_relative_entropy_classical_matches_dense():
    p = random_classical((2, 2), RNG)
    q = random_classical((2, 2), RNG)
    sparse = relative_entropy(p, q)
    dense = relative_entropy(DensityState.from_matrix(p.to_matrix(), p.dims),
                             DensityState.from_matrix(q.to_matrix(), q.dims))
    assert abs(sparse - dense) < 1e-10


def test_relative_entropy_contracts_under_channels():
    for _ in range(30):
        a = random_density((2, 2), RNG)
        b = random_density((2, 2), RNG)
        ch = random_channel(2, int(RNG.integers(2, 5)), RNG,
                            targets=(int(RNG.integers(2)),))
        before = relative_entropy(a, b)
        after = relative_entropy(apply_channel(a, ch), apply_channel(b, ch))
        assert after <= before + 1e-8


def test_entropy_subadditivity():
    for _ in range(20):
        s = random_density((2, 2), RNG)
        total = vn_entropy(s)
        assert total <= (marginal_entropy(s, (0,))
                         + marginal_entropy(s, (1,)) + 1e-10)


# -- channels ----------------------------------------------------------------

def test_kraus_validation():
    with pytest.raises(ArgumentError):
        KrausChannel([np.eye(2) * 0.5], (0,))  # incomplete
    with pytest.raises(ArgumentError):
        KrausChannel([], (0,))
    with pytest.raises(ArgumentError):
        KrausChannel([np.eye(2)], (0, 0))
    ch = KrausChannel([np.eye(4)], (0, 1))
    with pytest.raises(ArgumentError):
        apply_channel(make_ghz(3, 3), ch)  # 4 != 9
    with pytest.raises(ArgumentError):
        apply_channel(make_ghz(2), KrausChannel([np.eye(2)], (5,)))


def test_identity_and_unitary_channels():
    s = haar_state((2, 2), RNG)
    out = apply_channel(s, KrausChannel([np.eye(4)], (0, 1)))
    assert out.is_pure and max_entry_distance(out, s) < 1e-12

    ten = DensityState.from_amplitudes([0, 0, 1, 0], (2, 2))  # |10>
    flipped = apply_channel(ten, KrausChannel([CNOT], (0, 1)))
    assert abs(flipped.amplitudes()[3] - 1.0) < 1e-12  # |11>
    # control on subsystem 1 instead: |01> -> |11>
    one = DensityState.from_amplitudes([0, 1, 0, 0], (2, 2))
    out = apply_channel(one, KrausChannel([CNOT], (1, 0)))
    assert abs(out.amplitudes()[3] - 1.0) < 1e-12


def test_depolarizing_channel():
    paulis = [np.eye(2), np.array([[0, 1], [1, 0]]),
              np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    depol = KrausChannel([p / 2 for p in paulis], (0,))
    bell = make_bell_product(2)
    out = apply_channel(bell, depol)
    assert max_entry_distance(
        out, DensityState.from_matrix(np.eye(4) / 4, (2, 2))) < 1e-12


def test_channel_on_nonadjacent_targets():
    # cross-check the tensor contraction against a permutation detour
    s = random_density((2, 2, 2), RNG)
    ch = random_channel(4, 3, RNG, targets=(0, 2))
    direct = apply_channel(s, ch)
    detour = permute_subsystems(s, (0, 2, 1))
    detour = apply_channel(detour, KrausChannel(ch.kraus, (0, 1)))
    detour = permute_subsystems(detour, (0, 2, 1))
    assert max_entry_distance(direct, detour) < 1e-12


def test_channel_on_classical_input():
    ch = random_channel(2, 2, RNG, targets=(1,))
    out = apply_channel(make_classical(3), ch)
    assert out.rep == "dense"
    assert abs(np.trace(out.to_matrix()).real - 1.0) < 1e-10


# -- reshaping ---------------------------------------------------------------

def test_refine_and_merge_round_trip():
    s = haar_state((4, 2), RNG)
    fine = refine_subsystem(s, 0, (2, 2))
    assert fine.dims == (2, 2, 2)
    assert np.array_equal(fine.amplitudes(), s.amplitudes())
    back = merge_subsystems(fine, 0, 2)
    assert back.dims == (4, 2)
    assert abs(vn_entropy(partial_trace(fine, (0, 1)))
               - vn_entropy(partial_trace(s, (0,)))) < 1e-12
    with pytest.raises(ArgumentError):
        refine_subsystem(s, 0, (2, 3))
    with pytest.raises(ArgumentError):
        refine_subsystem(s, 0, (4, 1))
    with pytest.raises(ArgumentError):
        refine_subsystem(s, 2, (2, 2))


def test_refine_classical_digits():
    s = make_classical(2, 4)
    fine = refine_subsystem(s, 0, (2, 2))
    assert fine.dims == (2, 2, 4)
    assert fine.probabilities()[(1, 1, 3)] == 0.25
    back = merge_subsystems(fine, 0, 2)
    assert back.probabilities() == s.probabilities()


def test_permute_subsystems():
    s = random_density((2, 3, 2), RNG)
    p = permute_subsystems(s, (2, 0, 1))
    assert p.dims == (2, 2, 3)
    assert max_entry_distance(partial_trace(p, (0,)), partial_trace(s, (2,))) < 1e-14
    back = permute_subsystems(p, (1, 2, 0))
    assert max_entry_distance(back, s) < 1e-14
    with pytest.raises(ArgumentError):
        permute_subsystems(s, (0, 1))


# -- permutation invariance ---------------------------------------------------

def test_permutation_invariance_detection():
    assert make_ghz(4).permutation_invariant is True
    assert make_dicke(5, 2).permutation_invariant is True
    prod = tensor_product(haar_state((2,), RNG), haar_state((2,), RNG))
    assert prod.permutation_invariant is None
    assert is_permutation_invariant(prod) is False
    assert prod.permutation_invariant is False  # verdict cached

    # symmetric state built without the flag is detected
    w = DensityState.from_amplitudes(
        np.array([0, 1, 1, 0, 1, 0, 0, 0]) / math.sqrt(3), (2, 2, 2))
    assert is_permutation_invariant(w) is True

    hetero = tensor_product(make_classical(1, 2), make_classical(1, 3))
    assert is_permutation_invariant(hetero) is False
