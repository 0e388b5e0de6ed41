"""Symmetric fix-free code values: validity, length sequences, dominance,
and the one-step code transformation operators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bitpal import Bitstring, is_palindrome, neighbors, root_code

_ONE = Bitstring("1")


@dataclass(frozen=True, order=True)
class Code:
    """A set of palindromic codewords with a declared capacity ``n``.

    Words are normalised to canonical order (length, then lexicographic);
    two codes are equal iff their canonical forms and capacities agree.
    Construction does not enforce validity -- see :func:`validate`.
    """

    words: tuple[Bitstring, ...]
    n: int = 0

    def __post_init__(self):
        words = tuple(sorted({Bitstring(w) for w in self.words}))
        object.__setattr__(self, "words", words)
        if self.n <= 0:
            object.__setattr__(self, "n", len(words))

    def total(self) -> int:
        return sum(w.length for w in self.words)

    def max_length(self) -> int:
        return self.words[-1].length if self.words else 0

    def __contains__(self, w: Bitstring) -> bool:
        return w in self.words

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.words) + "}"


@dataclass(frozen=True, order=True)
class LengthSequence:
    """Sorted non-decreasing codeword lengths with exact integer prefix sums."""

    lengths: tuple[int, ...]
    prefix_sums: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        lengths = tuple(sorted(int(x) for x in self.lengths))
        if lengths and lengths[0] < 1:
            raise ValueError("lengths must be positive")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "prefix_sums", tuple(itertools.accumulate(lengths)))

    @property
    def total(self) -> int:
        return self.prefix_sums[-1] if self.lengths else 0

    def __len__(self) -> int:
        return len(self.lengths)

    def __iter__(self):
        return iter(self.lengths)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.lengths) + ")"


def _code_from_canonical(words: tuple[Bitstring, ...], n: int) -> Code:
    """Fast Code construction for words already canonical and deduplicated."""
    code = object.__new__(Code)
    object.__setattr__(code, "words", words)
    object.__setattr__(code, "n", n)
    return code


def validate(code: Code) -> list[str]:
    """Check every code invariant; an empty list means the code is valid."""
    violations = []
    if len(code.words) != code.n:
        violations.append(f"codeword count {len(code.words)} != capacity {code.n}")
    for w in code.words:
        if not is_palindrome(w):
            violations.append(f"not a palindrome: {w}")
    if _ONE in code.words:
        violations.append("the one-digit word 1 is not allowed")
    for w in code.words:
        if w.length > code.n:
            violations.append(f"length of {w} exceeds the cap {code.n}")
    words = code.words
    for i, p in enumerate(words):
        for w in words[i + 1 :]:
            if p.is_prefix_of(w, strict=True):
                violations.append(f"prefix condition violated: {p} prefixes {w}")
    return violations


def is_valid(code: Code) -> bool:
    return not validate(code)


def length_sequence(code: Code) -> LengthSequence:
    return LengthSequence(tuple(w.length for w in code.words))


def dominates(seq: LengthSequence, other: LengthSequence) -> bool:
    """True iff the sequences differ and every prefix sum of ``other`` is at
    least the corresponding prefix sum of ``seq``."""
    if len(seq) != len(other):
        raise ValueError(f"sequence counts differ: {len(seq)} vs {len(other)}")
    if seq.lengths == other.lengths:
        return False
    return all(a <= b for a, b in zip(seq.prefix_sums, other.prefix_sums))


def _pooled(code: Code, sigma: Bitstring) -> set[Bitstring]:
    if sigma not in code.words:
        raise ValueError(f"pivot {sigma} is not a codeword")
    pool = set(code.words)
    pool.discard(sigma)
    if sigma.length < code.n:
        pool |= neighbors(sigma, code.n)
    return pool


def double_arrow_all(code: Code, sigma: Bitstring) -> tuple[Code, ...]:
    """Every code made of the shortest n words of the pooled set obtained by
    replacing ``sigma`` with its neighboring palindromes.

    Words strictly shorter than the boundary length are forced; ties at the
    boundary produce one result per admissible subset.  Empty iff the pooled
    set has fewer than n words.
    """
    n = code.n
    pool = sorted(_pooled(code, sigma))
    if len(pool) < n:
        return ()
    boundary_len = pool[n - 1].length
    required = [w for w in pool if w.length < boundary_len]
    boundary = [w for w in pool if w.length == boundary_len]
    take = n - len(required)
    out = []
    for combo in itertools.combinations(boundary, take):
        child = Code(required + list(combo), n)
        bad = validate(child)
        if bad:
            raise AssertionError(f"transformation produced an invalid code: {bad}")
        out.append(child)
    return tuple(out)


def double_arrow_canonical(code: Code, sigma: Bitstring) -> Code:
    """The deterministic representative: boundary ties resolved toward the
    canonically smallest words."""
    results = double_arrow_all(code, sigma)
    if not results:
        raise ValueError(
            f"no transformation result: pooled set for pivot {sigma} has fewer than {code.n} words"
        )
    return results[0]


def verify_arrow(code: Code, replacement: Code, sigma: Bitstring) -> bool:
    """True iff every word of ``replacement`` lies in the pooled set of
    ``code`` for pivot ``sigma`` (the one-step replacement relation)."""
    pool = _pooled(code, sigma)
    return all(w in pool for w in replacement.words)


def has_root_prefix_property(code: Code) -> bool:
    """True iff every codeword has some word of the root code as a prefix."""
    root_words = root_code(code.n).words
    return all(any(s.is_prefix_of(w) for s in root_words) for w in code.words)
