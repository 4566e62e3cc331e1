"""Structural model of register subsets and the parity-based classifier.

A subset of the 2n-qubit storage register is described per pair: each of the
n clone/noise pairs contributes BOTH, SIGNAL, NOISE, or NONE of its qubits.
Every classification rule is a function of the counts derived from these
tags, which makes permutation invariance structural rather than incidental.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum


class PairTag(str, Enum):
    BOTH = "BOTH"
    SIGNAL = "SIGNAL"
    NOISE = "NOISE"
    NONE = "NONE"


class Verdict(str, Enum):
    AUTHORIZED = "AUTHORIZED"
    COMPLETELY_UNINFORMATIVE = "COMPLETELY_UNINFORMATIVE"
    PARTIALLY_INFORMATIVE = "PARTIALLY_INFORMATIVE"


class Rule(str, Enum):
    """Which decision step produced a verdict."""

    AUTH1 = "AUTH1"                          # full pair + coverage of all pairs
    PROP1_MISSING_PAIR = "PROP1_MISSING_PAIR"  # at least one pair fully absent
    PARITY_EVEN_N = "PARITY_EVEN_N"          # aligned, even clone count
    PARITY_EVEN_P = "PARITY_EVEN_P"          # aligned, even signal count
    PARITY_ODD_ODD = "PARITY_ODD_ODD"        # aligned, n and p both odd: leaks


class ShapeMarker(str, Enum):
    MISSING_PAIR = "MISSING_PAIR"
    OVERSIZED = "OVERSIZED"


@dataclass(frozen=True)
class AlignedShape:
    """One qubit from every pair: p signals, q noises, p + q = n."""

    n: int
    p: int
    q: int

    def __post_init__(self):
        if self.p + self.q != self.n or self.p < 0 or self.q < 0:
            raise ValueError(f"invalid aligned shape {self}")


@dataclass(frozen=True)
class LeakDescriptor:
    """Sign and observable of the surviving y-dependence."""

    sign: int
    observable: str


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: Rule
    leak: LeakDescriptor | None = None

    def __post_init__(self):
        leaking = self.verdict is Verdict.PARTIALLY_INFORMATIVE
        if leaking != (self.leak is not None):
            raise ValueError("leak descriptor present iff partially informative")


@dataclass(frozen=True)
class RegisterSubset:
    """Membership of one register subset, one tag per clone/noise pair."""

    n: int
    membership: tuple[PairTag, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"clone count must be >= 1, got {self.n}")
        if len(self.membership) != self.n:
            raise ValueError(f"expected {self.n} pair tags, got "
                             f"{len(self.membership)}")
        object.__setattr__(self, "membership", tuple(PairTag(t)
                                                     for t in self.membership))

    def _count(self, tag: PairTag) -> int:
        return sum(1 for t in self.membership if t is tag)

    @property
    def both_count(self) -> int:
        return self._count(PairTag.BOTH)

    @property
    def missing_pairs(self) -> int:
        return self._count(PairTag.NONE)

    @property
    def signal_count(self) -> int:
        """Signal qubits present (p), counting those inside full pairs."""
        return self.both_count + self._count(PairTag.SIGNAL)

    @property
    def noise_count(self) -> int:
        """Noise qubits present (q), counting those inside full pairs."""
        return self.both_count + self._count(PairTag.NOISE)

    @property
    def size(self) -> int:
        return self.signal_count + self.noise_count

    def labels(self) -> str:
        """Canonical textual form, e.g. 'S1,N1,S2'; empty subsets yield ''."""
        parts = []
        for i, tag in enumerate(self.membership, start=1):
            if tag in (PairTag.BOTH, PairTag.SIGNAL):
                parts.append(f"S{i}")
            if tag in (PairTag.BOTH, PairTag.NOISE):
                parts.append(f"N{i}")
        return ",".join(parts)


def is_authorized(subset: RegisterSubset) -> bool:
    """True iff the subset holds a full pair and touches every pair."""
    return subset.both_count >= 1 and subset.missing_pairs == 0


def canonical_shape(subset: RegisterSubset) -> AlignedShape | ShapeMarker:
    """Aligned (n, p, q) shape, or a marker for why the subset is not aligned."""
    if subset.missing_pairs >= 1:
        return ShapeMarker.MISSING_PAIR
    if subset.both_count >= 1:
        return ShapeMarker.OVERSIZED
    p = subset.signal_count
    return AlignedShape(subset.n, p, subset.n - p)


def classify(subset: RegisterSubset, leak_sign: int | None = None) -> Classification:
    """Decide authorized / completely uninformative / partially informative.

    Purely structural: no state is computed. For a partially informative
    verdict the leak descriptor carries the sign of the y-coefficient;
    pass `leak_sign` to supply it, otherwise the cached sign rule resolved
    against the brute-force engine is used.
    """
    if subset.size == 0:
        raise ValueError("empty subset has no classification")
    if is_authorized(subset):
        return Classification(Verdict.AUTHORIZED, Rule.AUTH1)
    if subset.missing_pairs >= 1:
        return Classification(Verdict.COMPLETELY_UNINFORMATIVE,
                              Rule.PROP1_MISSING_PAIR)
    n, p = subset.n, subset.signal_count
    if n % 2 == 0:
        return Classification(Verdict.COMPLETELY_UNINFORMATIVE, Rule.PARITY_EVEN_N)
    if p % 2 == 0:
        return Classification(Verdict.COMPLETELY_UNINFORMATIVE, Rule.PARITY_EVEN_P)
    if leak_sign is None:
        from .leakage import resolve_sign_rule
        leak_sign = resolve_sign_rule().rule.sign_for(n)
    return Classification(Verdict.PARTIALLY_INFORMATIVE, Rule.PARITY_ODD_ODD,
                          LeakDescriptor(leak_sign, "Y" * n))


ENUMERATION_GUARD = 10


def enumerate_classifications(
    n: int,
    leak_sign: int | None = None,
    guard: int = ENUMERATION_GUARD,
) -> list[tuple[RegisterSubset, Classification]]:
    """Classify every nonempty membership pattern (4^n - 1 of them).

    Patterns are emitted in a fixed order (tag order BOTH, SIGNAL, NOISE,
    NONE, varying the last pair fastest), so output is deterministic.
    """
    if n > guard:
        raise ValueError(f"n={n} exceeds the enumeration guard {guard} "
                         f"(4^n patterns)")
    if leak_sign is None and n % 2 == 1:
        from .leakage import resolve_sign_rule
        leak_sign = resolve_sign_rule().rule.sign_for(n)
    out = []
    for tags in itertools.product(PairTag, repeat=n):
        subset = RegisterSubset(n, tags)
        if subset.size == 0:
            continue
        out.append((subset, classify(subset, leak_sign=leak_sign)))
    return out
