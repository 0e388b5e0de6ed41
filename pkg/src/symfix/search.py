"""Breadth-first closure of the code transformation relation.

Starting from the root code, repeatedly replace one codeword with its
neighboring palindromes and keep the shortest n pooled words, deduplicating
by canonical form.  The dominant subset is extracted at the end over every
reached code.  Two modes:

* ``exhaustive``  -- the pure closure, no pruning; ground truth at small n.
* ``optimal_complete`` -- enables pruning rules that are safe for codes
  optimal under some source; they may discard other reachable codes, so
  dominant-set claims at small n are always cross-checked against the
  exhaustive mode and the brute-force oracle.

The pruning rules:

* ``half_index``     -- never pivot on the root codeword of index i when
                        2i >= n; its replacements are too long to profit from.
* ``monotone_max``   -- drop children whose maximum codeword length exceeds
                        the parent's; shortest transformations toward optimal
                        codes never increase the maximum.
* ``strict_sum``     -- a step that fails to decrease the total length flags
                        its child: the flagged subtree is explored only along
                        pivots extending the flagged pivot, until one such
                        pivot discharges the flag.
* ``depth2_dominated`` -- a depth-1 child dominated by a sibling (or the
                        root) has its subtree cut after depth 2.
* ``complement_mirror`` -- when a flag is raised for a pivot whose bitwise
                        complement is also a codeword, the mirrored pivot's
                        children receive the same flag (their pooled length
                        multisets coincide, so this is bookkeeping, counted
                        in the stats).
"""

from __future__ import annotations

import bisect
import functools
import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .bitpal import Bitstring, complement, prefix_palindromes, root_code, _prefix_groups
from .codes import (
    Code,
    LengthSequence,
    _code_from_canonical,
    dominates,
    double_arrow_all,
    length_sequence,
)

MODE_EXHAUSTIVE = "exhaustive"
MODE_OPTIMAL_COMPLETE = "optimal_complete"


@dataclass(frozen=True)
class PruneConfig:
    """Which pruning rules the search applies.

    ``exhaustive`` mode forces every flag off; ``optimal_complete`` enables
    any subset (all on by default).
    """

    mode: str = MODE_OPTIMAL_COMPLETE
    half_index: bool = True
    monotone_max: bool = True
    strict_sum: bool = True
    depth2_dominated: bool = True
    complement_mirror: bool = True

    def __post_init__(self):
        if self.mode not in (MODE_EXHAUSTIVE, MODE_OPTIMAL_COMPLETE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == MODE_EXHAUSTIVE:
            for flag in (
                "half_index",
                "monotone_max",
                "strict_sum",
                "depth2_dominated",
                "complement_mirror",
            ):
                object.__setattr__(self, flag, False)

    @classmethod
    def exhaustive(cls) -> "PruneConfig":
        return cls(mode=MODE_EXHAUSTIVE)

    @classmethod
    def optimal_complete(cls, **flags) -> "PruneConfig":
        return cls(mode=MODE_OPTIMAL_COMPLETE, **flags)

    def flag_dict(self) -> dict[str, bool]:
        return {
            "half_index": self.half_index,
            "monotone_max": self.monotone_max,
            "strict_sum": self.strict_sum,
            "depth2_dominated": self.depth2_dominated,
            "complement_mirror": self.complement_mirror,
        }


@dataclass
class SearchStats:
    expansions: int = 0
    children: int = 0
    duplicate_children: int = 0
    pruned_half_index: int = 0
    pruned_flag_restricted: int = 0
    pruned_monotone_max: int = 0
    pruned_depth2: int = 0
    flags_raised: int = 0
    mirror_flags: int = 0
    levels: int = 0
    elapsed: float = 0.0
    complete: bool = True
    budget_reason: "str | None" = None

    def as_dict(self) -> dict:
        return {
            "expansions": self.expansions,
            "children": self.children,
            "duplicate_children": self.duplicate_children,
            "pruned_half_index": self.pruned_half_index,
            "pruned_flag_restricted": self.pruned_flag_restricted,
            "pruned_monotone_max": self.pruned_monotone_max,
            "pruned_depth2": self.pruned_depth2,
            "flags_raised": self.flags_raised,
            "mirror_flags": self.mirror_flags,
            "levels": self.levels,
            "complete": self.complete,
            "budget_reason": self.budget_reason,
        }


@dataclass
class SearchNode:
    """External view of one reached code in the transformation tree."""

    id: int
    code: Code
    parent: "int | None"
    pivot: "Bitstring | None"
    depth: int
    total: int
    max_length: int
    flags: frozenset[Bitstring]
    dominant: bool


def _root_index(sigma: Bitstring) -> "int | None":
    """Index i such that sigma is the root codeword of length i, else None."""
    n = sigma.length
    if n == 1:
        return 1 if sigma == Bitstring("0") else None
    return n if sigma == Bitstring.pack(n, (1 << (n - 1)) | 1) else None


def prune_half_index(sigma: Bitstring, n: int) -> bool:
    """True iff sigma is the root codeword s_i with 2i >= n.

    Such a word is never a proper prefix of a codeword of an optimal code,
    so pivoting on it cannot contribute a shortest transformation to one.
    """
    i = _root_index(sigma)
    return i is not None and 2 * i >= n


def prune_monotone_max(parent: Code, child: Code) -> bool:
    """True iff the child's maximum codeword length exceeds the parent's."""
    return child.max_length() > parent.max_length()


@dataclass(frozen=True)
class SumFlag:
    """Marker that a transformation step failed to decrease the total length.

    The flagged child is not optimal, and neither is any descendant reached
    without a later pivot that extends ``pivot``.
    """

    pivot: Bitstring


def flag_sum_nonincrease(parent: Code, child: Code, pivot: Bitstring) -> "SumFlag | None":
    if child not in double_arrow_all(parent, pivot):
        raise ValueError("child is not a transformation result of parent under this pivot")
    if child.total() >= parent.total():
        return SumFlag(pivot)
    return None


def depth1_children(n: int) -> tuple[tuple[Bitstring, Code], ...]:
    """All (pivot, child) pairs one transformation step below the root code."""
    root = root_code(n)
    out = []
    for sigma in root.words:
        for child in double_arrow_all(root, sigma):
            out.append((sigma, child))
    return tuple(out)


def prune_depth2_dominated(n: int, child: Code) -> bool:
    """True iff this depth-1 child's sequence is dominated by another depth-1
    child's sequence or by the root's."""
    pairs = depth1_children(n)
    if all(child != c for _, c in pairs):
        raise ValueError("code is not a depth-1 child of the root code")
    seqs = {length_sequence(c) for _, c in pairs} | {length_sequence(root_code(n))}
    mine = length_sequence(child)
    return any(dominates(other, mine) for other in seqs if other != mine)


def dominant_filter(codes) -> tuple[tuple[Code, ...], frozenset[LengthSequence]]:
    """Keep every code whose length sequence is dominated by no other distinct
    sequence present; the sequence set is deduplicated."""
    codes = list(codes)
    if not codes:
        return (), frozenset()
    capacities = {c.n for c in codes}
    if len(capacities) > 1:
        raise ValueError(f"mixed capacities: {sorted(capacities)}")
    tagged = [(c, length_sequence(c)) for c in codes]
    distinct = {seq for _, seq in tagged}
    kept = frozenset(
        seq
        for seq in distinct
        if not any(dominates(other, seq) for other in distinct if other != seq)
    )
    kept_codes = tuple(sorted(c for c, seq in tagged if seq in kept))
    return kept_codes, kept


@functools.lru_cache(maxsize=4)
def _neighbor_table(n: int) -> dict[Bitstring, tuple[Bitstring, ...]]:
    """Sorted neighbor tuples per pivot word at cap n (groups are generated in
    canonical order already)."""
    return dict(_prefix_groups(n))


_COUNTERS = (
    "expansions",
    "pruned_half_index",
    "pruned_flag_restricted",
    "pruned_monotone_max",
    "pruned_depth2",
    "flags_raised",
    "mirror_flags",
)

_NO_FLAGS: frozenset = frozenset()


def _expand_words(
    words: tuple[Bitstring, ...],
    flags: frozenset,
    node_total: int,
    node_max: int,
    in_cut_subtree: bool,
    n: int,
    config: PruneConfig,
    nbrs: dict,
):
    """Children of one node as (pivot, child_words, raised) triples, in
    canonical pivot order then canonical tie order, plus counter deltas.

    Pure with respect to shared search state so frontier expansion can run on
    a thread pool; the caller merges the tallies in commit order.
    """
    tally = dict.fromkeys(_COUNTERS, 0)
    if in_cut_subtree:
        tally["pruned_depth2"] = 1
        return [], tally
    tally["expansions"] = 1
    per_pivot = []
    for si, sigma in enumerate(words):
        if config.half_index and prune_half_index(sigma, n):
            tally["pruned_half_index"] += 1
            continue
        if flags and not all(f.is_prefix_of(sigma, strict=True) for f in flags):
            tally["pruned_flag_restricted"] += 1
            continue
        nb = nbrs.get(sigma, ())
        if not nb:
            continue  # pooled set has n-1 words: no children
        # Merge the remaining codewords with the neighbor list (both sorted,
        # disjoint) just far enough to know the boundary cohort.
        merged: list[Bitstring] = []
        total_short = 0
        i = 0
        j = 0
        k = len(words)
        jn = len(nb)
        boundary_len = -1
        while True:
            if i == si:
                i += 1
                continue
            if i < k:
                if j < jn and nb[j] < words[i]:
                    x = nb[j]
                    j += 1
                else:
                    x = words[i]
                    i += 1
            elif j < jn:
                x = nb[j]
                j += 1
            else:
                break
            xlen = x.bit_length() - 1
            if boundary_len < 0:
                merged.append(x)
                if len(merged) < n:
                    total_short += xlen
                else:
                    boundary_len = xlen
            elif xlen == boundary_len:
                merged.append(x)
            else:
                break
        if len(merged) < n:
            continue
        if config.monotone_max and boundary_len > node_max:
            tally["pruned_monotone_max"] += 1
            continue
        split = n - 1
        while split and merged[split - 1].bit_length() - 1 == boundary_len:
            split -= 1
            total_short -= boundary_len
        required = tuple(merged[:split])
        cohort = merged[split:]
        take = n - split
        child_total = total_short + boundary_len * take
        raised = config.strict_sum and child_total >= node_total
        if raised:
            tally["flags_raised"] += 1
        per_pivot.append((sigma, required, cohort, take, raised))
    if config.complement_mirror:
        raised_pivots = {sigma for sigma, _, _, _, raised in per_pivot if raised}
        for idx, (sigma, required, cohort, take, raised) in enumerate(per_pivot):
            if not raised and complement(sigma) in raised_pivots:
                per_pivot[idx] = (sigma, required, cohort, take, True)
                tally["mirror_flags"] += 1
    out = []
    for sigma, required, cohort, take, raised in per_pivot:
        if take == len(cohort):
            out.append((sigma, required + tuple(cohort), raised))
        else:
            for combo in combinations(cohort, take):
                out.append((sigma, required + combo, raised))
    return out, tally


@dataclass
class SearchResult:
    """Deduplicated reached set, dominant subset, and the labeled tree.

    Nodes are stored column-wise (word tuples, parent ids, pivots, level
    boundaries) to keep multi-million-node exhaustive runs affordable;
    :meth:`iter_nodes` materialises row views on demand.
    """

    n: int
    config: PruneConfig
    codes: list[tuple[Bitstring, ...]]
    parents: array
    pivots: list
    node_totals: array
    node_maxes: array
    level_starts: list[int]
    flags_by_id: dict[int, frozenset[Bitstring]]
    dominant_ids: tuple[int, ...]
    dominant_codes: tuple[Code, ...]
    dominant_sequences: frozenset[LengthSequence]
    stats: SearchStats

    @property
    def node_count(self) -> int:
        return len(self.codes)

    @property
    def complete(self) -> bool:
        return self.stats.complete

    @property
    def reached(self) -> Iterator[Code]:
        return (_code_from_canonical(w, self.n) for w in self.codes)

    def code_at(self, node_id: int) -> Code:
        return _code_from_canonical(self.codes[node_id], self.n)

    def depth_of(self, node_id: int) -> int:
        return bisect.bisect_right(self.level_starts, node_id) - 1

    def find(self, code: Code) -> "int | None":
        target = code.words
        for i, words in enumerate(self.codes):
            if words == target:
                return i
        return None

    def node(self, node_id: int) -> SearchNode:
        words = self.codes[node_id]
        parent = self.parents[node_id]
        return SearchNode(
            id=node_id,
            code=_code_from_canonical(words, self.n),
            parent=None if parent < 0 else parent,
            pivot=self.pivots[node_id],
            depth=self.depth_of(node_id),
            total=self.node_totals[node_id],
            max_length=self.node_maxes[node_id],
            flags=self.flags_by_id.get(node_id, _NO_FLAGS),
            dominant=node_id in self._dominant_id_set,
        )

    def iter_nodes(self) -> Iterator[SearchNode]:
        for node_id in range(len(self.codes)):
            yield self.node(node_id)

    @functools.cached_property
    def _dominant_id_set(self) -> frozenset[int]:
        return frozenset(self.dominant_ids)

    def edges(self) -> Iterator[tuple[int, int, Bitstring]]:
        for child_id in range(1, len(self.codes)):
            yield (self.parents[child_id], child_id, self.pivots[child_id])


def search(
    n: int,
    config: PruneConfig = PruneConfig(),
    *,
    node_budget: "int | None" = None,
    time_budget: "float | None" = None,
    threads: int = 1,
) -> SearchResult:
    """Breadth-first closure from the root code with the configured pruning.

    Deterministic for any thread count: the frontier is expanded in discovery
    order and results are committed serially in that order.  Exceeding the
    node budget yields a partial result with ``stats.complete`` False (the
    node budget cuts deterministically; the time budget cannot).
    """
    if not 3 <= n <= 40:
        raise ValueError(f"n must be 3..40, got {n}")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    start = time.monotonic()
    stats = SearchStats()
    nbrs = _neighbor_table(n)
    root = root_code(n)
    root_words = root.words
    root_total = root.total()
    root_max = root.max_length()

    codes: list[tuple[Bitstring, ...]] = [root_words]
    parents = array("q", [-1])
    pivots: list = [None]
    level_starts = [0]
    index: dict[tuple[Bitstring, ...], int] = {root_words: 0}
    flags_by_id: dict[int, frozenset[Bitstring]] = {}
    anc1 = array("q", [-1])
    totals = array("q", [root_total])
    maxes = array("q", [root_max])
    cut_anc1: set[int] = set()

    def out_of_budget() -> "str | None":
        if node_budget is not None and len(codes) >= node_budget:
            return f"node budget {node_budget} reached"
        if time_budget is not None and time.monotonic() - start > time_budget:
            return f"time budget {time_budget}s exceeded"
        return None

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        frontier = [0]
        depth = 0
        while frontier:
            reason = out_of_budget()
            if reason:
                stats.complete = False
                stats.budget_reason = reason
                break
            stats.levels += 1
            level_starts.append(len(codes))

            def job(node_id: int):
                return _expand_words(
                    codes[node_id],
                    flags_by_id.get(node_id, _NO_FLAGS),
                    totals[node_id],
                    maxes[node_id],
                    config.depth2_dominated
                    and depth >= 2
                    and anc1[node_id] in cut_anc1,
                    n,
                    config,
                    nbrs,
                )

            results = executor.map(job, frontier) if executor else map(job, frontier)
            next_frontier: list[int] = []
            stop = False
            for parent_id, (items, tally) in zip(frontier, results):
                for key, delta in tally.items():
                    if delta:
                        setattr(stats, key, getattr(stats, key) + delta)
                for sigma, child_words, raised in items:
                    existing = index.get(child_words)
                    if existing is not None:
                        stats.duplicate_children += 1
                        if existing >= level_starts[-1]:
                            # same-level rediscovery: a node is only as
                            # restricted as the intersection of the flags of
                            # its discovery paths
                            old = flags_by_id.get(existing)
                            if old is not None:
                                new = frozenset((sigma,)) if raised else _NO_FLAGS
                                if old & new:
                                    flags_by_id[existing] = old & new
                                else:
                                    flags_by_id.pop(existing)
                        continue
                    reason = out_of_budget()
                    if reason:
                        stats.complete = False
                        stats.budget_reason = reason
                        stop = True
                        break
                    nid = len(codes)
                    codes.append(child_words)
                    parents.append(parent_id)
                    pivots.append(sigma)
                    totals.append(sum(w.bit_length() - 1 for w in child_words))
                    maxes.append(child_words[-1].bit_length() - 1)
                    anc1.append(nid if depth == 0 else anc1[parent_id])
                    index[child_words] = nid
                    if raised:
                        flags_by_id[nid] = frozenset((sigma,))
                    next_frontier.append(nid)
                    stats.children += 1
                if stop:
                    break
            if stop:
                break
            if depth == 0 and config.depth2_dominated:
                seqs = {
                    LengthSequence(tuple(w.bit_length() - 1 for w in codes[i]))
                    for i in next_frontier
                }
                seqs.add(length_sequence(root))
                for i in next_frontier:
                    mine = LengthSequence(tuple(w.bit_length() - 1 for w in codes[i]))
                    if any(dominates(other, mine) for other in seqs if other != mine):
                        cut_anc1.add(i)
            frontier = next_frontier
            depth += 1
    finally:
        if executor:
            executor.shutdown()
    del index

    # Dominance is decided over distinct sequences, then mapped back to nodes.
    seq_of = [tuple(w.bit_length() - 1 for w in words) for words in codes]
    distinct = {LengthSequence(s) for s in set(seq_of)}
    kept = {
        seq
        for seq in distinct
        if not any(dominates(other, seq) for other in distinct if other != seq)
    }
    kept_raw = {seq.lengths for seq in kept}
    dominant_ids = tuple(i for i, s in enumerate(seq_of) if s in kept_raw)
    dominant_codes = tuple(
        sorted(_code_from_canonical(codes[i], n) for i in dominant_ids)
    )
    stats.elapsed = time.monotonic() - start
    return SearchResult(
        n=n,
        config=config,
        codes=codes,
        parents=parents,
        pivots=pivots,
        node_totals=totals,
        node_maxes=maxes,
        level_starts=level_starts[:-1] if level_starts[-1] == len(codes) else level_starts,
        flags_by_id=flags_by_id,
        dominant_ids=dominant_ids,
        dominant_codes=dominant_codes,
        dominant_sequences=frozenset(kept),
        stats=stats,
    )


def result_to_json(result: SearchResult) -> dict:
    """The document shape used by the CLI and the file outputs."""
    return {
        "n": result.n,
        "mode": result.config.mode,
        "flags": result.config.flag_dict(),
        "nodes": [
            {
                "id": rec.id,
                "words": [str(w) for w in rec.code.words],
                "lengths": [w.length for w in rec.code.words],
                "total": rec.total,
                "dominant": rec.dominant,
            }
            for rec in result.iter_nodes()
        ],
        "edges": [
            {"parent": parent, "child": child, "pivot": str(pivot)}
            for parent, child, pivot in result.edges()
        ],
        "stats": result.stats.as_dict(),
    }


def result_to_dot(result: SearchResult) -> str:
    """DOT rendering of the transformation tree: node label = total length,
    edge label = pivot; dominant nodes drawn bold."""
    lines = ["digraph transformation_tree {"]
    lines.append("  node [shape=circle];")
    for rec in result.iter_nodes():
        style = ", style=bold, peripheries=2" if rec.dominant else ""
        lines.append(f'  n{rec.id} [label="{rec.total}"{style}];')
    for parent, child, pivot in result.edges():
        lines.append(f'  n{parent} -> n{child} [label="{pivot}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- chains -----------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """An alternating record of pivots and codes, starting at the root code."""

    pivots: tuple[Bitstring, ...]
    codes: tuple[Code, ...]

    def __post_init__(self):
        if len(self.codes) != len(self.pivots) + 1:
            raise ValueError("a chain needs exactly one more code than pivots")

    @property
    def final(self) -> Code:
        return self.codes[-1]

    def __len__(self) -> int:
        return len(self.pivots)


def validate_chain(chain: Chain) -> list[str]:
    """Check chain well-formedness; empty list means well-formed."""
    problems = []
    n = chain.codes[0].n
    if chain.codes[0] != root_code(n):
        problems.append("chain must start at the root code")
    for i, sigma in enumerate(chain.pivots):
        if chain.codes[i + 1] not in double_arrow_all(chain.codes[i], sigma):
            problems.append(f"step {i}: not a transformation result under pivot {sigma}")
    return problems


def is_shortest_chain(chain: Chain) -> bool:
    """True iff every pivot is a strict prefix of some codeword of the final
    code; exactly the chains of minimum step count to that code."""
    final_words = chain.final.words
    return all(
        any(p.is_prefix_of(w, strict=True) for w in final_words) for p in chain.pivots
    )


def replay_with_order(target: Code, order) -> "Chain | None":
    """Rebuild a chain from the root code to ``target`` using the given pivot
    order, which must be a permutation of the target's prefix palindromes
    respecting the prefix partial order (ValueError otherwise).

    At each step the tie-break alternative sharing the most words with the
    target is taken, canonically smallest on ties.  Returns None when no
    alternative reaches the target.
    """
    order = tuple(Bitstring(p) for p in order)
    required = prefix_palindromes(target)
    if set(order) != required or len(order) != len(required):
        raise ValueError("order must be a permutation of the target's prefix palindromes")
    for i, later in enumerate(order):
        for j in range(i + 1, len(order)):
            if order[j].is_prefix_of(later, strict=True):
                raise ValueError(
                    f"order violates the prefix partial order: {order[j]} after {later}"
                )
    code = root_code(target.n)
    codes = [code]
    target_words = set(target.words)
    for sigma in order:
        if sigma not in code.words:
            return None
        candidates = double_arrow_all(code, sigma)
        if not candidates:
            return None
        code = min(candidates, key=lambda c: (-len(target_words & set(c.words)), c.words))
        codes.append(code)
    if code != target:
        return None
    return Chain(order, tuple(codes))


def shortest_chains(target: Code):
    """Yield every shortest chain from the root code to ``target``.

    Shortest chains use each prefix palindrome of the target exactly once as
    a pivot; this walks all feasible pivot orders and all tie-break
    alternatives.  Exponential in the prefix set size; meant for small n.
    """
    pool = prefix_palindromes(target)
    root = root_code(target.n)

    def rec(code: Code, used: frozenset, pivots: tuple, codes: tuple):
        if len(used) == len(pool):
            if code == target:
                yield Chain(pivots, codes)
            return
        for sigma in sorted(pool - used):
            if sigma not in code.words:
                continue
            for child in double_arrow_all(code, sigma):
                yield from rec(
                    child, used | {sigma}, pivots + (sigma,), codes + (child,)
                )

    if target == root:
        yield Chain((), (root,))
        return
    yield from rec(root, frozenset(), (), (root,))


@dataclass(frozen=True)
class ConjectureFinding:
    """A hypothesis instance whose claimed conclusion is contradicted by an
    explicit optimality witness."""

    clause: str
    chain: Chain
    step: int
    detail: str


def _witness_optimal(n: int) -> set[Code]:
    """Codes known optimal for some source: the root code, plus every depth-1
    child whose total is below the root's (experimentally these exhaust the
    optimal codes for n <= 10)."""
    root = root_code(n)
    out = {root}
    for _, child in depth1_children(n):
        if child.total() < root.total():
            out.add(child)
    return out


def check_conjecture(n: int) -> list[ConjectureFinding]:
    """Search for counterexamples to the sum-nonincrease subtree conjecture.

    Enumerates, over every reachable code, the shortest chains containing a
    step that fails to decrease the total length, and checks the claimed
    non-optimality conclusions against explicit optimality witnesses.  An
    empty list means no counterexample was found, not a proof.  Cost grows
    steeply with n; intended for n <= 6 interactively, n <= 8 at most.
    """
    if not 3 <= n <= 8:
        raise ValueError(f"conjecture check supports n in 3..8, got {n}")
    witnesses = _witness_optimal(n)
    on_chain_to_witness: set[Code] = set()
    for w in witnesses:
        for chain in shortest_chains(w):
            on_chain_to_witness.update(chain.codes)
    result = search(n, PruneConfig.exhaustive())
    findings: list[ConjectureFinding] = []
    seen: set = set()
    for target in result.reached:
        if not prefix_palindromes(target):
            continue
        for chain in shortest_chains(target):
            for t in range(len(chain.pivots) - 1):
                s_code, s_prime = chain.codes[t], chain.codes[t + 1]
                pivot = chain.pivots[t]
                if s_prime.total() < s_code.total():
                    continue
                prefix = Chain(chain.pivots[: t + 1], chain.codes[: t + 2])
                if not is_shortest_chain(prefix):
                    continue
                if target in witnesses:
                    key = ("main", target, t, chain.pivots)
                    if key not in seen:
                        seen.add(key)
                        findings.append(
                            ConjectureFinding(
                                "main",
                                chain,
                                t,
                                f"target {target} is a witnessed optimal code",
                            )
                        )
                mirrored = complement(pivot)
                if mirrored in s_code.words:
                    for s_pp in double_arrow_all(s_code, mirrored):
                        if s_pp in witnesses:
                            key = ("complement-optimal", s_pp, t, chain.pivots)
                            if key not in seen:
                                seen.add(key)
                                findings.append(
                                    ConjectureFinding(
                                        "complement-optimal",
                                        chain,
                                        t,
                                        f"mirrored child {s_pp} is a witnessed optimal code",
                                    )
                                )
                        if s_pp in on_chain_to_witness:
                            key = ("complement-chain", s_pp, t, chain.pivots)
                            if key not in seen:
                                seen.add(key)
                                findings.append(
                                    ConjectureFinding(
                                        "complement-chain",
                                        chain,
                                        t,
                                        f"mirrored child {s_pp} lies on a shortest chain "
                                        "to a witnessed optimal code",
                                    )
                                )
    return findings
