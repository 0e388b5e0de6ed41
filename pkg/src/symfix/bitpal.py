"""Bit-level palindrome primitives.

Everything downstream manipulates binary words of 1..64 digits.  A word is
packed into a single int as ``(1 << length) | digits`` with the most
significant digit transmitted first.  The marker bit above the top digit
preserves leading zeros, makes equal words equal ints, and makes native int
order the canonical order used throughout the package: shorter words first,
then lexicographic on digits.
"""

from __future__ import annotations

import functools

MAX_BITS = 64


class Bitstring(int):
    """A binary word of 1..64 digits, packed as ``(1 << length) | digits``."""

    __slots__ = ()

    def __new__(cls, word: "str | Bitstring") -> "Bitstring":
        if isinstance(word, Bitstring):
            return word
        if not isinstance(word, str):
            raise TypeError(f"expected a 0/1 string, got {type(word).__name__}")
        if not 1 <= len(word) <= MAX_BITS:
            raise ValueError(f"word length must be 1..{MAX_BITS}, got {len(word)}")
        if set(word) - {"0", "1"}:
            raise ValueError(f"word may contain only 0 and 1: {word!r}")
        return int.__new__(cls, int("1" + word, 2))

    @classmethod
    def pack(cls, length: int, digits: int) -> "Bitstring":
        """Build directly from a digit count and digit bits (MSB first)."""
        return int.__new__(cls, (1 << length) | digits)

    @property
    def length(self) -> int:
        return self.bit_length() - 1

    def digit_bits(self) -> int:
        return self & ((1 << self.length) - 1)

    def is_prefix_of(self, other: "Bitstring", strict: bool = False) -> bool:
        gap = other.bit_length() - self.bit_length()
        if gap < 0 or (strict and gap == 0):
            return False
        return (other >> gap) == self

    def __str__(self) -> str:
        return format(self, "b")[1:]

    def __repr__(self) -> str:
        return f"Bitstring({format(self, 'b')[1:]!r})"


def is_palindrome(w: Bitstring) -> bool:
    s = format(w, "b")[1:]
    return s == s[::-1]


def complement(w: Bitstring) -> Bitstring:
    """Flip every digit; an involution that preserves length."""
    mask = (1 << w.length) - 1
    return Bitstring.pack(w.length, (w & mask) ^ mask)


@functools.lru_cache(maxsize=None)
def longest_palindromic_proper_prefix(w: Bitstring) -> "Bitstring | None":
    """The longest strict prefix of ``w`` that is a palindrome.

    Returns None only for one-digit words: any longer word has a palindromic
    one-digit prefix.
    """
    n = w.length
    digits = w.digit_bits()
    for k in range(n - 1, 0, -1):
        p = Bitstring.pack(k, digits >> (n - k))
        if is_palindrome(p):
            return p
    return None


def _mirror_half(length: int, half_digits: int) -> Bitstring:
    # A length-L palindrome is fixed by its first ceil(L/2) digits.
    half = (length + 1) // 2
    back = length - half
    if back == 0:
        tail = 0
    else:
        tail = int(format(half_digits >> (half - back), f"0{back}b")[::-1], 2)
    return Bitstring.pack(length, (half_digits << back) | tail)


def enumerate_palindromes(length: int) -> tuple[Bitstring, ...]:
    """All 2^ceil(L/2) palindromes of the given length, in canonical order."""
    if not 1 <= length <= MAX_BITS:
        raise ValueError(f"length must be 1..{MAX_BITS}, got {length}")
    half = (length + 1) // 2
    return tuple(_mirror_half(length, h) for h in range(1 << half))


@functools.lru_cache(maxsize=8)
def _prefix_groups(n: int) -> dict[Bitstring, tuple[Bitstring, ...]]:
    """Palindromes of length 2..n grouped by longest palindromic proper prefix."""
    groups: dict[Bitstring, list[Bitstring]] = {}
    for length in range(2, n + 1):
        for w in enumerate_palindromes(length):
            groups.setdefault(longest_palindromic_proper_prefix(w), []).append(w)
    return {k: tuple(v) for k, v in groups.items()}


def _require_palindrome(sigma: Bitstring, n: int) -> None:
    if not is_palindrome(sigma):
        raise ValueError(f"{sigma} is not a palindrome")
    if sigma.length >= n:
        raise ValueError(f"pivot length {sigma.length} must be below the cap {n}")


def neighbors(sigma: Bitstring, n: int) -> frozenset[Bitstring]:
    """Palindromes of length <= n whose longest palindromic proper prefix is
    exactly ``sigma``.  May be empty."""
    _require_palindrome(sigma, n)
    return frozenset(_prefix_groups(n).get(sigma, ()))


def descendants(sigma: Bitstring, n: int) -> frozenset[Bitstring]:
    """Palindromes of length <= n having ``sigma`` as a strict prefix.

    A superset of ``neighbors(sigma, n)``.  Built by direct construction from
    the free half-digits rather than by scanning, so it doubles as an
    independent cross-check of the neighbor computation.
    """
    _require_palindrome(sigma, n)
    s = sigma.length
    sig_digits = sigma.digit_bits()
    out = []
    for length in range(s + 1, n + 1):
        half = (length + 1) // 2
        if s <= half:
            free = half - s
            base = sig_digits << free
            out.extend(_mirror_half(length, base | t) for t in range(1 << free))
        else:
            # The prefix reaches past the middle: at most one candidate.
            w = _mirror_half(length, sig_digits >> (s - half))
            if sigma.is_prefix_of(w, strict=True):
                out.append(w)
    return frozenset(out)


def root_code(n: int):
    """The code {0, 11, 101, 1001, ...} with length sequence (1, 2, ..., n)."""
    if n < 3:
        raise ValueError(f"root code needs n >= 3, got {n}")
    if n > MAX_BITS:
        raise ValueError(f"n must be at most {MAX_BITS}")
    from .codes import Code  # deferred: codes depends on this module

    words = [Bitstring("0")]
    words += [Bitstring.pack(i, (1 << (i - 1)) | 1) for i in range(2, n + 1)]
    return Code(words, n)


def cluster_code(n: int):
    """n distinct length-n palindromes that begin and end with 0.

    Built cluster by cluster: cluster 1 is the all-zero word; cluster j >= 2
    contributes j-1 words whose left half repeats the length-j block of k
    zeros followed by j-k ones, truncated to n/2 digits.  Blocks longer than
    the half cannot yield new patterns, so if the clusters run out before n
    words exist (only possible at n = 8, where the qualifying palindromes are
    exhausted) the remaining left halves are filled in canonical order.
    """
    if n % 2 or n < 8:
        raise ValueError(f"cluster code requires even n >= 8, got {n}")
    if n > MAX_BITS:
        raise ValueError(f"n must be at most {MAX_BITS}")
    from .codes import Code  # deferred: codes depends on this module

    half = n // 2
    halves = ["0" * half]
    seen = set(halves)
    j = 2
    while len(halves) < n and j <= half:
        for k in range(1, j):
            block = "0" * k + "1" * (j - k)
            rep = (block * (half // j + 1))[:half]
            if rep in seen:
                raise ValueError(f"cluster construction produced duplicate half {rep!r}")
            halves.append(rep)
            seen.add(rep)
            if len(halves) == n:
                break
        j += 1
    if len(halves) < n:
        for h in range(1 << (half - 1)):  # halves starting with 0
            cand = format(h, f"0{half}b")
            if cand not in seen:
                halves.append(cand)
                seen.add(cand)
                if len(halves) == n:
                    break
    words = [Bitstring(h + h[::-1]) for h in halves]
    if len(set(words)) != n:
        raise ValueError("cluster construction produced duplicate words")
    return Code(words, n)


def prefix_palindromes(code) -> frozenset[Bitstring]:
    """Palindromes, excluding the one-digit word 1, that occur as strict
    prefixes of at least one codeword."""
    one = Bitstring("1")
    out = set()
    for w in code.words:
        n = w.length
        digits = w.digit_bits()
        for k in range(1, n):
            p = Bitstring.pack(k, digits >> (n - k))
            if p != one and is_palindrome(p):
                out.add(p)
    return frozenset(out)


def count_palindromic_proper_prefixes(code) -> int:
    """Number of distinct palindromic strict prefixes across the whole code,
    the one-digit word 1 excluded."""
    return len(prefix_palindromes(code))
