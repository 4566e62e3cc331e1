"""Quantitative leakage measurement: Bloch-sphere probe grids, trace
distance, informativeness probes, and the empirical resolution of the
leakage sign for odd clone counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import branch, oracle
from .pauli import expectation, pauli_sum_to_dense, state_from_bloch
from .subsets import AlignedShape, PairTag, RegisterSubset, canonical_shape

ENGINE_ORACLE = "oracle"
ENGINE_ANALYTIC = "analytic"

_GOLDEN = (1 + math.sqrt(5.0)) / 2


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by probes and verification."""

    uninformative: float = 1e-10   # below this a subset counts as state-independent
    informative: float = 1e-3      # above this a subset visibly depends on the input
    engine_agreement: float = 1e-10
    golden: float = 1e-12          # exact worked cases


class SeparationGapError(RuntimeError):
    """A probe distance fell between the two thresholds.

    The calculus predicts distances that are either numerically zero or of
    order |y1 - y2|, so a value in the gap means something is wrong with
    the configuration or the implementation; refusing to classify is safer
    than guessing.
    """


class ProbeVerdict(str, Enum):
    UNINFORMATIVE = "UNINFORMATIVE"
    INFORMATIVE = "INFORMATIVE"


@dataclass
class BlochGrid:
    """Deterministic probe set of unit Bloch vectors; always contains the
    six axis poles, so the extreme y values +-1 are always probed."""

    points: np.ndarray
    seed: int


_POLES = np.array([
    [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0], [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0], [0.0, 0.0, -1.0],
])


def bloch_grid(size: int = 26, seed: int = 0) -> BlochGrid:
    """Six axis poles plus a golden-spiral covering of the sphere.

    The spiral is a low-discrepancy lattice; the seed only rotates it about
    the y axis, so the same (size, seed) always yields the same points.
    """
    if size < 6:
        raise ValueError(f"grid size must be >= 6 (the poles), got {size}")
    extra = size - 6
    pts = [_POLES]
    if extra:
        i = np.arange(extra)
        # Spiral about the y axis so the poles of the lattice do not
        # duplicate the +-y grid poles.
        y = 1.0 - 2.0 * (i + 0.5) / extra
        r = np.sqrt(1.0 - y * y)
        phi = 2.0 * math.pi * (i / _GOLDEN + seed / _GOLDEN ** 2)
        pts.append(np.column_stack([r * np.cos(phi), y, r * np.sin(phi)]))
    points = np.vstack(pts)
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    return BlochGrid(points=points, seed=seed)


def trace_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of r1 - r2."""
    r1 = np.asarray(r1)
    r2 = np.asarray(r2)
    if r1.shape != r2.shape:
        raise ValueError(f"dimension mismatch: {r1.shape} vs {r2.shape}")
    return 0.5 * float(np.abs(np.linalg.eigvalsh(r1 - r2)).sum())


def pairwise_max_trace_distance(rhos, chunk: int = 64) -> tuple[float, np.ndarray]:
    """Max trace distance over all pairs, plus each state's max to any other.

    Eigenvalues are computed on stacked difference matrices in chunks to
    bound memory.
    """
    arr = np.stack([np.asarray(r) for r in rhos])
    k = arr.shape[0]
    per_point = np.zeros(k)
    ii, jj = np.triu_indices(k, 1)
    for start in range(0, ii.size, chunk):
        i = ii[start:start + chunk]
        j = jj[start:start + chunk]
        eigs = np.linalg.eigvalsh(arr[i] - arr[j])
        dists = 0.5 * np.abs(eigs).sum(axis=-1)
        np.maximum.at(per_point, i, dists)
        np.maximum.at(per_point, j, dists)
    return float(per_point.max(initial=0.0)), per_point


def keep_positions(subset: RegisterSubset) -> list[int]:
    """Qubit positions of a register subset in the simulator layout."""
    pos = []
    for i, tag in enumerate(subset.membership, start=1):
        if tag in (PairTag.BOTH, PairTag.SIGNAL):
            pos.append(oracle.signal_position(i))
        if tag in (PairTag.BOTH, PairTag.NOISE):
            pos.append(oracle.noise_position(i))
    return pos


def reduced_state(n: int, subset: RegisterSubset, bloch, engine: str,
                  oracle_cap: int = oracle.ORACLE_CAP_DEFAULT) -> np.ndarray:
    """Dense reduced state of a subset via the requested engine."""
    if subset.n != n:
        raise ValueError(f"subset is over {subset.n} pairs, expected {n}")
    if engine == ENGINE_ORACLE:
        state = oracle.build_encoded_state(n, state_from_bloch(bloch), cap=oracle_cap)
        return oracle.reduced_density(state, keep_positions(subset))
    if engine == ENGINE_ANALYTIC:
        shape = canonical_shape(subset)
        if not isinstance(shape, AlignedShape):
            raise ValueError(f"analytic engine needs an aligned subset; "
                             f"{subset.labels() or '(empty)'} is {shape.value}")
        return pauli_sum_to_dense(branch.analytic_reduced_state(shape.n, shape.p,
                                                                bloch))
    raise ValueError(f"unknown engine {engine!r}")


def y_leak_estimate(rho: np.ndarray, k: int) -> float:
    """Expectation of the all-Y observable on a k-qubit state."""
    rho = np.asarray(rho)
    if rho.shape != (2 ** k, 2 ** k):
        raise ValueError(f"state of shape {rho.shape} does not cover {k} qubits")
    return expectation(rho, "Y" * k)


@dataclass
class LeakageReport:
    subset: RegisterSubset
    max_pairwise_distance: float
    y_signal: float
    verdict: ProbeVerdict
    engine: str
    per_point_max: np.ndarray = field(repr=False, default=None)


_Y_POLE = np.array([0.0, 1.0, 0.0])


def _states_for_grid(n: int, grid: BlochGrid, oracle_cap: int) -> list[np.ndarray]:
    return [oracle.build_encoded_state(n, state_from_bloch(b), cap=oracle_cap)
            for b in grid.points]


def _verdict(max_distance: float, tol: Tolerances, context: str) -> ProbeVerdict:
    if max_distance < tol.uninformative:
        return ProbeVerdict.UNINFORMATIVE
    if max_distance > tol.informative:
        return ProbeVerdict.INFORMATIVE
    raise SeparationGapError(
        f"{context}: max pairwise distance {max_distance!r} lies between the "
        f"uninformative threshold {tol.uninformative} and the informative "
        f"threshold {tol.informative}; distances are expected to be one or "
        f"the other")


def probe_patterns(n: int, subsets, grid: BlochGrid, engine: str,
                   oracle_cap: int = oracle.ORACLE_CAP_DEFAULT,
                   tol: Tolerances = Tolerances(),
                   encoded_states=None) -> list[LeakageReport]:
    """Informativeness probes for many subsets sharing one grid.

    With the brute-force engine the encoded states are built once per grid
    point and reused across subsets; `encoded_states` can supply them.
    """
    subsets = list(subsets)
    if engine == ENGINE_ORACLE and encoded_states is None:
        encoded_states = _states_for_grid(n, grid, oracle_cap)
    pole_index = int(np.argmin(np.linalg.norm(grid.points - _Y_POLE, axis=1)))
    if np.linalg.norm(grid.points[pole_index] - _Y_POLE) > 1e-12:
        raise ValueError("grid does not contain the +y pole")
    reports = []
    for subset in subsets:
        if engine == ENGINE_ORACLE:
            keep = keep_positions(subset)
            rhos = [oracle.reduced_density(s, keep) for s in encoded_states]
        else:
            rhos = [reduced_state(n, subset, b, engine, oracle_cap)
                    for b in grid.points]
        max_d, per_point = pairwise_max_trace_distance(rhos)
        signal = y_leak_estimate(rhos[pole_index], subset.size)
        reports.append(LeakageReport(
            subset=subset,
            max_pairwise_distance=max_d,
            y_signal=signal,
            verdict=_verdict(max_d, tol, subset.labels() or "(empty)"),
            engine=engine,
            per_point_max=per_point,
        ))
    return reports


def informativeness_probe(n: int, subset: RegisterSubset, grid: BlochGrid,
                          engine: str,
                          oracle_cap: int = oracle.ORACLE_CAP_DEFAULT,
                          tol: Tolerances = Tolerances()) -> LeakageReport:
    """Probe one subset for dependence on the stored state."""
    return probe_patterns(n, [subset], grid, engine, oracle_cap, tol)[0]


def fixed_y_slice_probe(n: int, subset: RegisterSubset, y: float, k: int,
                        engine: str = ENGINE_ORACLE,
                        oracle_cap: int = oracle.ORACLE_CAP_DEFAULT) -> float:
    """Max pairwise distance among k states sharing y but differing in x, z.

    Unauthorized subsets depend on the input only through y, so this should
    be numerically zero for them at any y.
    """
    if not -1.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [-1, 1], got {y}")
    if k < 2:
        raise ValueError(f"need at least 2 slice points, got {k}")
    r = math.sqrt(max(0.0, 1.0 - y * y))
    angles = 2.0 * math.pi * np.arange(k) / k
    blochs = np.column_stack([r * np.cos(angles),
                              np.full(k, y),
                              r * np.sin(angles)])
    rhos = [reduced_state(n, subset, b, engine, oracle_cap) for b in blochs]
    max_d, _ = pairwise_max_trace_distance(rhos)
    return max_d


# ---------------------------------------------------------------------------
# Sign resolution for the odd-(n, p) leakage term
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignRule:
    """Candidate convention for the sign of the surviving y-term at odd n."""

    kind: str  # "constant_plus" or "alternating"

    def sign_for(self, n: int) -> int:
        if n % 2 == 0:
            raise ValueError(f"no leakage sign for even n={n}")
        if self.kind == "constant_plus":
            return 1
        if self.kind == "alternating":
            return -1 if ((n - 1) // 2) % 2 else 1
        raise ValueError(f"unknown sign rule {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "constant_plus":
            return "constant +1 for every odd n"
        return "(-1)**((n-1)/2), alternating with the odd n"


CANDIDATE_SIGN_RULES = (SignRule("constant_plus"), SignRule("alternating"))


@dataclass(frozen=True)
class SignResolution:
    rule: SignRule
    observed: tuple[tuple[int, int], ...]  # ((n, sign), ...)


def aligned_subset(n: int, p: int) -> RegisterSubset:
    tags = (PairTag.SIGNAL,) * p + (PairTag.NOISE,) * (n - p)
    return RegisterSubset(n, tags)


@lru_cache(maxsize=None)
def resolve_sign_rule(oracle_cap: int = oracle.ORACLE_CAP_DEFAULT) -> SignResolution:
    """Measure the leakage sign on the brute-force engine and match a rule.

    The all-Y expectation of the all-signal aligned subset at the +y pole
    equals the sign exactly; n = 1 and n = 3 together discriminate the two
    candidate conventions.
    """
    cap = max(3, oracle_cap)
    observed = []
    for n in (1, 3):
        rho = reduced_state(n, aligned_subset(n, n), _Y_POLE, ENGINE_ORACLE,
                            oracle_cap=cap)
        est = y_leak_estimate(rho, n)
        sign = round(est)
        if sign not in (-1, 1) or abs(est - sign) > 1e-10:
            raise RuntimeError(f"leakage sign at n={n} is not a clean unit: {est!r}")
        observed.append((n, int(sign)))
    observed = tuple(observed)
    for rule in CANDIDATE_SIGN_RULES:
        if all(rule.sign_for(n) == s for n, s in observed):
            return SignResolution(rule=rule, observed=observed)
    raise RuntimeError(f"measured signs {observed} match no candidate rule")
