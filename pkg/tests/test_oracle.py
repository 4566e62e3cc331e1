import numpy as np
import pytest

from cloneleak.oracle import (ORACLE_CAP_DEFAULT, bell_branch, branch_phases,
                              build_encoded_state, noise_position,
                              reduced_density, signal_position)
from cloneleak.pauli import state_from_bloch

from conftest import I2, Y, kron_chain


def test_branch_phases_small_n():
    assert branch_phases(1) == (1, 1j, 1, 1j)
    assert branch_phases(2) == (1, 1j, 1j, 1j)
    assert branch_phases(3) == (1, 1j, -1, 1j)


def test_branch_phases_unit_modulus():
    for n in range(1, 13):
        assert all(abs(a) == 1 for a in branch_phases(n))


def test_branch_phases_rejects_nonpositive():
    with pytest.raises(ValueError):
        branch_phases(0)


def test_bell_branch_values():
    rt2 = np.sqrt(2)
    np.testing.assert_allclose(bell_branch(0), np.array([1, 0, 0, 1]) / rt2)
    np.testing.assert_allclose(bell_branch(1), np.array([0, 1, 1, 0]) / rt2)
    np.testing.assert_allclose(bell_branch(3), np.array([1, 0, 0, -1]) / rt2)


def test_bell_branches_orthonormal():
    gram = np.array([[np.vdot(bell_branch(m), bell_branch(n))
                      for n in range(4)] for m in range(4)])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-15)


def test_encoded_state_norm_random_inputs(rng):
    for n in range(1, 6):
        for _ in range(50):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            state = build_encoded_state(n, v)
            assert abs(np.vdot(state, state).real - 1.0) < 1e-12


def test_build_rejects_bad_inputs():
    psi = np.array([1.0, 0.0])
    with pytest.raises(ValueError):
        build_encoded_state(0, psi)
    with pytest.raises(ValueError, match="cap"):
        build_encoded_state(6, psi)
    with pytest.raises(ValueError, match="not normalized"):
        build_encoded_state(2, np.array([1.0, 1.0]))


def test_source_qubit_maximally_mixed(grid):
    for n in (1, 2, 3):
        for b in grid.points[:6]:
            state = build_encoded_state(n, state_from_bloch(b))
            np.testing.assert_allclose(reduced_density(state, [0]), I2 / 2,
                                       atol=1e-12)


def test_single_clone_maximally_mixed():
    state = build_encoded_state(2, state_from_bloch([0.6, 0.0, 0.8]))
    np.testing.assert_allclose(reduced_density(state, [signal_position(1)]),
                               I2 / 2, atol=1e-12)


def test_n1_golden_reductions():
    state = build_encoded_state(1, state_from_bloch([0.0, 0.6, 0.8]))
    rho_s = reduced_density(state, [signal_position(1)])
    np.testing.assert_allclose(rho_s, (I2 + 0.6 * Y) / 2, atol=1e-12)
    rho_n = reduced_density(state, [noise_position(1)])
    np.testing.assert_allclose(rho_n, I2 / 2, atol=1e-12)


def test_n1_clone_mixed_for_real_amplitudes():
    # y = 0 input: even the leaky singleton looks maximally mixed
    state = build_encoded_state(1, np.array([1.0, 0.0]))
    np.testing.assert_allclose(reduced_density(state, [signal_position(1)]),
                               I2 / 2, atol=1e-12)


def test_n2_aligned_pairs_quarter_identity():
    state = build_encoded_state(2, state_from_bloch([0.36, 0.48, 0.8]))
    for keep in ([signal_position(1), signal_position(2)],
                 [signal_position(1), noise_position(2)],
                 [noise_position(1), noise_position(2)]):
        np.testing.assert_allclose(reduced_density(state, keep), np.eye(4) / 4,
                                   atol=1e-12)


def test_n3_golden_reductions_fix_the_sign():
    # Reference values frozen from this brute-force path: the surviving
    # three-qubit term is -y * YYY, not +y * YYY.
    y = 0.7
    x = np.sqrt(1 - y * y)
    state = build_encoded_state(3, state_from_bloch([x, y, 0.0]))
    yyy = kron_chain(Y, Y, Y)
    keep_snn = [signal_position(1), noise_position(2), noise_position(3)]
    np.testing.assert_allclose(reduced_density(state, keep_snn),
                               (np.eye(8) - y * yyy) / 8, atol=1e-12)
    keep_ssn = [signal_position(1), signal_position(2), noise_position(3)]
    np.testing.assert_allclose(reduced_density(state, keep_ssn), np.eye(8) / 8,
                               atol=1e-12)
    keep_sss = [signal_position(1), signal_position(2), signal_position(3)]
    np.testing.assert_allclose(reduced_density(state, keep_sss),
                               (np.eye(8) - y * yyy) / 8, atol=1e-12)


def test_bell_trace_identities():
    from cloneleak.pauli import SIGMA
    for mu in range(4):
        for nu in range(4):
            op = np.outer(bell_branch(mu), bell_branch(nu).conj())
            t = op.reshape(2, 2, 2, 2)
            np.testing.assert_allclose(t.trace(axis1=1, axis2=3),
                                       SIGMA[mu] @ SIGMA[nu] / 2, atol=1e-12)
            np.testing.assert_allclose(t.trace(axis1=0, axis2=2),
                                       (SIGMA[nu] @ SIGMA[mu]).T / 2, atol=1e-12)


def test_reduction_consistency():
    # Tracing to K then to K' inside K equals tracing straight to K'.
    state = build_encoded_state(3, state_from_bloch([0.0, 0.28, 0.96]))
    keep = [signal_position(1), noise_position(2), noise_position(3)]
    rho_k = reduced_density(state, keep)
    # Reduce the 3-qubit rho_k onto its first factor (= S1).
    direct = reduced_density(state, [signal_position(1)])
    via = rho_k.reshape(2, 4, 2, 4).trace(axis1=1, axis2=3)
    np.testing.assert_allclose(via, direct, atol=1e-12)


def test_missing_pair_subsets_are_state_independent():
    keep = [signal_position(1), noise_position(1)]  # misses pair 2 entirely
    states = [build_encoded_state(2, state_from_bloch(b))
              for b in ([0, 1, 0], [1, 0, 0], [0, 0, 1], [0.6, 0, -0.8])]
    rhos = [reduced_density(s, keep) for s in states]
    for other in rhos[1:]:
        assert np.abs(other - rhos[0]).max() < 1e-12
    # One kept pair is the uniform mixture of the four Bell states: I/4.
    np.testing.assert_allclose(rhos[0], np.eye(4) / 4, atol=1e-12)


def test_missing_pair_subset_not_always_maximally_mixed():
    # Two kept pairs with one pair missing: state-independent, but the
    # mixture of doubled Bell states is rank 4 in a 16-dim space.
    keep = [signal_position(1), noise_position(1),
            signal_position(2), noise_position(2)]
    states = [build_encoded_state(3, state_from_bloch(b))
              for b in ([0, 1, 0], [1, 0, 0], [0.6, 0, -0.8])]
    rhos = [reduced_density(s, keep) for s in states]
    for other in rhos[1:]:
        assert np.abs(other - rhos[0]).max() < 1e-12
    assert np.abs(rhos[0] - np.eye(16) / 16).max() > 0.1
    eigs = np.linalg.eigvalsh(rhos[0])
    np.testing.assert_allclose(sorted(eigs)[-4:], [0.25] * 4, atol=1e-12)
    np.testing.assert_allclose(sorted(eigs)[:-4], 0.0, atol=1e-12)


def test_reduced_density_errors():
    state = build_encoded_state(1, np.array([1.0, 0.0]))
    with pytest.raises(ValueError, match="nonempty"):
        reduced_density(state, [])
    with pytest.raises(ValueError, match="duplicate"):
        reduced_density(state, [1, 1])
    with pytest.raises(ValueError, match="out of range"):
        reduced_density(state, [3])
    with pytest.raises(ValueError, match="dense cap"):
        reduced_density(state, [0, 1, 2], dense_cap=2)


def test_layout_positions():
    assert signal_position(1) == 1 and noise_position(1) == 2
    assert signal_position(3) == 5 and noise_position(3) == 6
    assert ORACLE_CAP_DEFAULT == 5
