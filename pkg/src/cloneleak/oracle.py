"""Brute-force engine: build the full encoded pure state and reduce it by
explicit partial trace.

Qubit layout (fixed for the whole package): position 0 is the source qubit A
and is the most significant tensor factor; pair i (1-based) occupies
positions 2i-1 (signal S_i) and 2i (noise N_i), so a register of n pairs
plus the source spans 2n+1 qubits.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .pauli import DENSE_QUBIT_CAP, SIGMA, bloch_from_state

# Largest clone count the dense simulator accepts by default (11 qubits).
ORACLE_CAP_DEFAULT = 5

_BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0)

_I_POWERS = (1, 1j, -1, -1j)


def i_power(k: int) -> complex:
    """i**k computed exactly by exponent mod 4."""
    return _I_POWERS[k % 4]


def branch_phases(n: int) -> tuple[complex, complex, complex, complex]:
    """Unit phases (one per Pauli branch) of the n-clone encoder.

    The branch indexed by Y carries the only n-dependence: its phase is
    -i**(n+1), which cycles through 1, i, -1, -i as n increases.
    """
    if n < 1:
        raise ValueError(f"clone count must be >= 1, got {n}")
    return (1, 1j, -i_power(n + 1), 1j)


def bell_branch(mu: int) -> np.ndarray:
    """Two-qubit state (sigma_mu (x) I) applied to the Bell pair (|00>+|11>)/sqrt(2)."""
    if not 0 <= mu <= 3:
        raise ValueError(f"branch index must be in 0..3, got {mu}")
    return np.kron(SIGMA[mu], SIGMA[0]) @ _BELL


def signal_position(i: int) -> int:
    """Qubit position of S_i (pair index i is 1-based)."""
    return 2 * i - 1


def noise_position(i: int) -> int:
    """Qubit position of N_i (pair index i is 1-based)."""
    return 2 * i


def build_encoded_state(n: int, psi: np.ndarray,
                        cap: int = ORACLE_CAP_DEFAULT) -> np.ndarray:
    """Encode one qubit into n clone/noise pairs; returns 2**(2n+1) amplitudes.

    The output is the equal-weight coherent sum of four branches: branch mu
    applies sigma_mu to the input qubit and to the signal half of every Bell
    pair, weighted by the inverse branch phase.
    """
    if n < 1:
        raise ValueError(f"clone count must be >= 1, got {n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the oracle cap {cap} "
                         f"({2 * n + 1} qubits); raise the cap explicitly to proceed")
    psi = np.asarray(psi, dtype=complex)
    bloch_from_state(psi)  # validates shape and normalization
    phases = branch_phases(n)
    total = np.zeros(2 ** (2 * n + 1), dtype=complex)
    for mu in range(4):
        vec = SIGMA[mu] @ psi
        pair = bell_branch(mu)
        for _ in range(n):
            vec = np.kron(vec, pair)
        total += vec / phases[mu]
    return total / 2.0


def reduced_density(state: np.ndarray, keep: Sequence[int],
                    dense_cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Partial trace of |state><state| keeping the given qubit positions.

    Works directly on the amplitude vector: permute the kept axes to the
    front, flatten, and contract the complement, so the full density matrix
    is never materialized. The kept factors appear in the order listed.
    """
    state = np.asarray(state, dtype=complex)
    nq = int(state.size).bit_length() - 1
    if 2 ** nq != state.size:
        raise ValueError(f"amplitude count {state.size} is not a power of two")
    keep = list(keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate qubit positions in keep set {keep}")
    if any(q < 0 or q >= nq for q in keep):
        raise ValueError(f"keep positions {keep} out of range for {nq} qubits")
    if len(keep) > dense_cap:
        raise ValueError(f"keeping {len(keep)} qubits exceeds the dense cap {dense_cap}")
    rest = [q for q in range(nq) if q not in keep]
    tensor = state.reshape([2] * nq).transpose(keep + rest)
    mat = tensor.reshape(2 ** len(keep), 2 ** len(rest))
    return mat @ mat.conj().T
