"""Select the best code from the dominant set for a memoryless source.

For a fixed multiset of codeword lengths the cheapest assignment pairs the
largest probability with the smallest length, so ranking dominant codes
reduces to one dot product per distinct length sequence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .codes import Code, LengthSequence, length_sequence

NORMALIZATION_TOL = 1e-9
TIE_TOL = 1e-12


@dataclass(frozen=True)
class Source:
    """A memoryless source: positive probabilities summing to one within
    1e-9, stored sorted non-increasing."""

    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(sorted((float(p) for p in self.probs), reverse=True))
        if not probs:
            raise ValueError("a source needs at least one probability")
        if probs[-1] <= 0.0:
            raise ValueError("probabilities must be positive")
        if abs(sum(probs) - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        return len(self.probs)


def expected_length(seq: LengthSequence, source: Source) -> float:
    """Sum of p_i * l_i pairing the largest probability with the smallest
    length (the optimal assignment for a fixed length multiset)."""
    if len(seq) != source.n:
        raise ValueError(f"count mismatch: {len(seq)} lengths vs {source.n} probabilities")
    return sum(p * l for p, l in zip(source.probs, seq.lengths))


def entropy(source: Source) -> float:
    """Binary entropy of the source."""
    return -sum(p * math.log2(p) for p in source.probs)


def best_code(n: int, source: Source, result) -> tuple[Code, float]:
    """The dominant code of the search result minimizing expected length.

    Expected lengths are compared with tolerance 1e-12 before breaking ties
    by canonical code order.  The winner's words are in canonical order, so
    word i serves symbol i: shortest word, most probable symbol.
    """
    if result.n != n:
        raise ValueError(f"search result covers n={result.n}, asked for {n}")
    if source.n != n:
        raise ValueError(f"source has {source.n} probabilities, asked for {n}")
    if not result.dominant_codes:
        raise ValueError("empty dominant set")
    best = None
    best_value = math.inf
    for code in sorted(result.dominant_codes):
        value = expected_length(length_sequence(code), source)
        if value < best_value - TIE_TOL:
            best, best_value = code, value
    return best, best_value


def random_source(n: int, rng: random.Random) -> Source:
    """A source drawn uniformly from the probability simplex."""
    draws = [rng.expovariate(1.0) for _ in range(n)]
    total = sum(draws)
    return Source(tuple(d / total for d in draws))


@dataclass(frozen=True)
class RedundancyViolation:
    source: Source
    expected: float
    entropy: float


def redundancy_soft_check(
    result, trials: int, seed: int
) -> list[RedundancyViolation]:
    """Sample random sources and report any whose best-code expected length
    exceeds twice the entropy plus one.

    The bound comes from prior analysis of these codes, so a violation is
    reported for logging rather than raised.
    """
    rng = random.Random(seed)
    violations = []
    for _ in range(trials):
        source = random_source(result.n, rng)
        _, value = best_code(result.n, source, result)
        h = entropy(source)
        if value > 2.0 * h + 1.0 + 1e-9:
            violations.append(RedundancyViolation(source, value, h))
    return violations
