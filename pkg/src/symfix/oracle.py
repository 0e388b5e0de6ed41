"""Independent brute-force ground truth at small n.

Two independent routes to the same answers, neither sharing machinery with
the transformation search:

* a streaming enumerator that walks every valid code in canonical order by
  DFS over the palindrome universe with prefix-conflict masks, feeding a
  streaming Pareto filter (practical through n = 6, usable at 7);
* an exact census that exploits the forest shape of the prefix order on the
  universe (the strict prefixes of any word form a chain) to count, per
  length multiset, every antichain of each size -- tractable for all of
  n <= 8 even though the code space runs to hundreds of millions.

``oracle_dominant`` reports from the census and materialises the codes of
the dominant sequences only; tests cross-check it against the streaming
route at small n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

from .bitpal import (
    Bitstring,
    complement,
    enumerate_palindromes,
    longest_palindromic_proper_prefix,
)
from .codes import Code, LengthSequence, _code_from_canonical, dominates, length_sequence

ORACLE_MAX_N = 8

_ONE = Bitstring("1")


def palindrome_universe(n: int) -> tuple[Bitstring, ...]:
    """Every palindrome of length 1..n except the one-digit word 1, in
    canonical order."""
    out = []
    for length in range(1, n + 1):
        out.extend(w for w in enumerate_palindromes(length) if w != _ONE)
    return tuple(out)


def _check_range(n: int) -> None:
    if not 3 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle supports n in 3..{ORACLE_MAX_N}, got {n}")


def _conflict_masks(universe: tuple[Bitstring, ...]) -> list[int]:
    """For each index i, a bitmask of every other index whose word is
    prefix-related to universe[i] (ancestor or descendant)."""
    masks = [0] * len(universe)
    for i, p in enumerate(universe):
        for j in range(i + 1, len(universe)):
            if p.is_prefix_of(universe[j], strict=True):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def enumerate_all_codes(n: int, reverse: bool = False) -> Iterator[Code]:
    """Every valid code of capacity n exactly once, in canonical order
    (reverse order with ``reverse=True``, for order-independence checks).

    The stream has |S_n| items; at n = 7 that is about 8 million and at
    n = 8 about 590 million, so full consumption is only practical through
    n = 6 or 7 -- use the census-backed ``oracle_dominant`` beyond that.
    """
    _check_range(n)
    universe = palindrome_universe(n)
    masks = _conflict_masks(universe)
    m = len(universe)
    full = (1 << m) - 1

    def rec(avail: int, chosen: tuple[int, ...]) -> Iterator[Code]:
        need = n - len(chosen)
        if need == 0:
            words = tuple(universe[i] for i in (sorted(chosen) if reverse else chosen))
            yield _code_from_canonical(words, n)
            return
        pool = avail
        indices = []
        while pool:
            low = pool & -pool
            indices.append(low.bit_length() - 1)
            pool ^= low
        if len(indices) < need:
            return
        if reverse:
            indices.reverse()
        for pos, i in enumerate(indices):
            if len(indices) - pos < need:
                break
            mask_after = full << (i + 1) if not reverse else (1 << i) - 1
            yield from rec((avail & mask_after) & ~masks[i], chosen + (i,))

    yield from rec(full, ())


# --- exact census over the prefix forest -------------------------------------


def _prefix_forest(n: int):
    """(universe, children lists, root indices) of the strict-prefix order."""
    universe = palindrome_universe(n)
    pos = {w: i for i, w in enumerate(universe)}
    children: list[list[int]] = [[] for _ in universe]
    roots: list[int] = []
    for i, w in enumerate(universe):
        parent = longest_palindromic_proper_prefix(w)
        if parent is None or parent == _ONE:
            roots.append(i)
        else:
            children[pos[parent]].append(i)
    return universe, children, roots


def _poly_mul(a: dict, b: dict, cap: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            if len(m1) + len(m2) > cap:
                continue
            key = tuple(sorted(m1 + m2))
            out[key] = out.get(key, 0) + c1 * c2
    return out


def sequence_census(n: int) -> dict[tuple[int, ...], int]:
    """How many valid codes of capacity n realise each sorted length
    multiset: an exact count of the whole code space, computed by dynamic
    programming over the prefix forest (an antichain in the forest is
    exactly a prefix-free set)."""
    _check_range(n)
    universe, children, roots = _prefix_forest(n)

    def poly(v: int) -> dict:
        acc = {(): 1}
        for c in children[v]:
            acc = _poly_mul(acc, poly(c), n)
        acc = dict(acc)
        key = (universe[v].length,)
        acc[key] = acc.get(key, 0) + 1
        return acc

    total = {(): 1}
    for r in roots:
        total = _poly_mul(total, poly(r), n)
    return {k: v for k, v in total.items() if len(k) == n}


def enumerate_codes_with_lengths(n: int, lengths) -> Iterator[Code]:
    """Every valid code of capacity n whose sorted lengths equal the given
    multiset, in canonical order."""
    _check_range(n)
    want = tuple(sorted(lengths))
    if len(want) != n:
        raise ValueError("length multiset size must equal n")
    universe = palindrome_universe(n)
    masks = _conflict_masks(universe)
    by_length: dict[int, list[int]] = {}
    for i, w in enumerate(universe):
        by_length.setdefault(w.length, []).append(i)
    need0 = {}
    for x in want:
        need0[x] = need0.get(x, 0) + 1

    def rec(avail: int, start: int, need: dict, chosen: tuple[int, ...]) -> Iterator[Code]:
        if not need:
            yield Code(tuple(universe[i] for i in chosen), n)
            return
        # feasibility: enough available words of every still-needed length
        for length, cnt in need.items():
            have = sum(1 for i in by_length[length] if i >= start and (avail >> i) & 1)
            if have < cnt:
                return
        for i in range(start, len(universe)):
            if not (avail >> i) & 1:
                continue
            length = universe[i].length
            cnt = need.get(length)
            if cnt is None:
                continue
            if universe[i].length > want[len(chosen)]:
                # canonical order means lengths appear non-decreasing; once a
                # longer word shows up the needed shorter ones are gone
                return
            rest = dict(need)
            if cnt == 1:
                del rest[length]
            else:
                rest[length] = cnt - 1
            yield from rec(avail & ~masks[i] & ~(1 << i), i + 1, rest, chosen + (i,))

    full = (1 << len(universe)) - 1
    yield from rec(full, 0, need0, ())


@dataclass
class OracleReport:
    n: int
    total_codes: int
    dominant_sequences: frozenset[LengthSequence]
    dominant_codes: tuple[Code, ...]
    elapsed: float = 0.0


def oracle_dominant(n: int) -> OracleReport:
    """Exact dominant set over the whole code space.

    Sequences come from the forest census; the codes realising the dominant
    sequences are then enumerated directly.
    """
    start = time.monotonic()
    census = sequence_census(n)
    seqs = [LengthSequence(k) for k in census]
    kept = [
        seq for seq in seqs if not any(dominates(other, seq) for other in seqs if other != seq)
    ]
    dominant_codes = []
    for seq in kept:
        dominant_codes.extend(enumerate_codes_with_lengths(n, seq.lengths))
    return OracleReport(
        n=n,
        total_codes=sum(census.values()),
        dominant_sequences=frozenset(kept),
        dominant_codes=tuple(sorted(dominant_codes)),
        elapsed=time.monotonic() - start,
    )


def streaming_dominant(n: int, reverse: bool = False) -> OracleReport:
    """Dominance filtering over the full enumeration stream.

    The independent slow route: practical through n = 6.  The Pareto front
    is order-independent, which tests verify by passing ``reverse=True``.
    """
    start = time.monotonic()
    front: dict[LengthSequence, list[Code]] = {}
    dominated: set[LengthSequence] = set()
    total = 0
    for code in enumerate_all_codes(n, reverse=reverse):
        total += 1
        seq = length_sequence(code)
        if seq in front:
            front[seq].append(code)
            continue
        if seq in dominated:
            continue
        if any(dominates(live, seq) for live in front):
            dominated.add(seq)
            continue
        for live in [s for s in front if dominates(seq, s)]:
            dominated.add(live)
            del front[live]
        front[seq] = [code]
    dominant_codes = tuple(sorted(c for codes in front.values() for c in codes))
    return OracleReport(
        n=n,
        total_codes=total,
        dominant_sequences=frozenset(front),
        dominant_codes=dominant_codes,
        elapsed=time.monotonic() - start,
    )


@dataclass
class DiscrepancyReport:
    """Set differences between the oracle's dominant sets and the search's."""

    n: int
    sequences_only_in_oracle: frozenset[LengthSequence]
    sequences_only_in_search: frozenset[LengthSequence]
    codes_only_in_oracle: tuple[Code, ...]
    codes_only_in_search: tuple[Code, ...]
    codes_unpaired_mod_complement: tuple[Code, ...] = ()

    @property
    def sequences_match(self) -> bool:
        return not self.sequences_only_in_oracle and not self.sequences_only_in_search

    @property
    def clean(self) -> bool:
        return (
            self.sequences_match
            and not self.codes_only_in_oracle
            and not self.codes_only_in_search
        )


def compare_with_search(n: int, config=None, **search_kwargs) -> DiscrepancyReport:
    """Run both engines and report set differences of their dominant sets.

    Empty differences in exhaustive mode is the pass condition; code-level
    differences are additionally reported modulo bitwise complement, which
    preserves length sequences.
    """
    from .search import PruneConfig, search  # deferred: search depends on this module

    if config is None:
        config = PruneConfig.exhaustive()
    report = oracle_dominant(n)
    result = search(n, config, **search_kwargs)
    oracle_seqs = report.dominant_sequences
    search_seqs = result.dominant_sequences
    oracle_codes = set(report.dominant_codes)
    search_codes = set(result.dominant_codes)
    only_oracle = tuple(sorted(oracle_codes - search_codes))
    only_search = tuple(sorted(search_codes - oracle_codes))

    def complement_code(c: Code) -> Code:
        return Code(tuple(complement(w) for w in c.words), c.n)

    unpaired = tuple(
        c for c in only_oracle if complement_code(c) not in search_codes
    ) + tuple(c for c in only_search if complement_code(c) not in oracle_codes)
    return DiscrepancyReport(
        n=n,
        sequences_only_in_oracle=frozenset(oracle_seqs - search_seqs),
        sequences_only_in_search=frozenset(search_seqs - oracle_seqs),
        codes_only_in_oracle=only_oracle,
        codes_only_in_search=only_search,
        codes_unpaired_mod_complement=unpaired,
    )


def table_row_csv(report: OracleReport) -> str:
    """CSV row (n, dominant sequence count) for table comparisons."""
    return f"{report.n},{len(report.dominant_sequences)}"
