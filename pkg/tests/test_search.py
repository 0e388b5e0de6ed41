import json

import pytest

from symfix.bitpal import Bitstring, prefix_palindromes, root_code
from symfix.codes import Code, double_arrow_all, double_arrow_canonical, length_sequence
from symfix.search import (
    Chain,
    PruneConfig,
    SumFlag,
    check_conjecture,
    depth1_children,
    dominant_filter,
    flag_sum_nonincrease,
    is_shortest_chain,
    prune_depth2_dominated,
    prune_half_index,
    prune_monotone_max,
    replay_with_order,
    result_to_dot,
    result_to_json,
    search,
    shortest_chains,
    validate_chain,
)

B = Bitstring


class TestPruneConfig:
    def test_exhaustive_forces_flags_off(self):
        cfg = PruneConfig(mode="exhaustive", half_index=True)
        assert not any(cfg.flag_dict().values())

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            PruneConfig(mode="fast")


class TestSearchSmall:
    def test_n5_exhaustive_dominants(self, exhaustive_results):
        res = exhaustive_results(5)
        assert {s.lengths for s in res.dominant_sequences} == {
            (1, 2, 3, 4, 5),
            (2, 2, 3, 3, 4),
        }

    def test_n10_exhaustive_equivalent_count(self, optimal_results):
        assert len(optimal_results(10).dominant_sequences) == 4

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            search(2)
        with pytest.raises(ValueError):
            search(41)

    def test_budget_partial(self):
        res = search(8, PruneConfig.exhaustive(), node_budget=500)
        assert not res.complete
        assert "node budget" in res.stats.budget_reason
        assert res.node_count <= 500

    def test_tree_edges_are_transformation_results(self, exhaustive_results):
        res = exhaustive_results(5)
        for parent_id, child_id, pivot in res.edges():
            parent = res.code_at(parent_id)
            child = res.code_at(child_id)
            assert child in double_arrow_all(parent, pivot)

    def test_depths_consistent(self, exhaustive_results):
        res = exhaustive_results(6)
        for parent_id, child_id, _ in res.edges():
            assert res.depth_of(child_id) == res.depth_of(parent_id) + 1

    def test_dedup_by_canonical_form(self, exhaustive_results):
        res = exhaustive_results(6)
        codes = list(res.codes)
        assert len(codes) == len(set(codes))


class TestDominantFilter:
    def test_mutually_undominated_pair_kept(self):
        codes = [
            root_code(5),
            Code(["00", "11", "010", "101", "0110"]),
            Code(["00", "11", "010", "101", "1001"]),
        ]
        kept_codes, kept_seqs = dominant_filter(codes)
        assert set(kept_codes) == set(codes)
        assert {s.lengths for s in kept_seqs} == {(1, 2, 3, 4, 5), (2, 2, 3, 3, 4)}

    def test_singleton(self):
        kept_codes, kept_seqs = dominant_filter([root_code(5)])
        assert kept_codes == (root_code(5),)
        assert {s.lengths for s in kept_seqs} == {(1, 2, 3, 4, 5)}

    def test_dominated_removed(self):
        a = Code(["0", "11", "101"])       # (1,2,3)
        b = Code(["0", "11", "1001"], 3)   # (1,2,4): dominated by a
        kept_codes, kept_seqs = dominant_filter([a, b])
        assert kept_codes == (a,)
        assert {s.lengths for s in kept_seqs} == {(1, 2, 3)}

    def test_mixed_capacities_rejected(self):
        with pytest.raises(ValueError):
            dominant_filter([root_code(3), root_code(4)])


class TestPruneHalfIndex:
    def test_late_root_words(self):
        assert prune_half_index(B("1" + "0" * 8 + "1"), 20)          # s_10 at n=20
        assert not prune_half_index(B("1" + "0" * 5 + "1"), 20)      # s_7 at n=20
        assert prune_half_index(B("101"), 6)                          # s_3, 3 >= 6/2

    def test_non_root_words_never_pruned(self):
        assert not prune_half_index(B("010"), 4)
        assert not prune_half_index(B("0"), 20)


class TestPruneMonotoneMax:
    def test_trivial(self):
        small = Code(["0", "11", "101"])
        assert not prune_monotone_max(root_code(5), small)
        grown = Code(["0", "11", "10101"], 5)
        assert prune_monotone_max(small, grown)

    def test_no_edge_increases_max_at_20(self, optimal_results):
        res = optimal_results(20)
        for parent_id, child_id, _ in res.edges():
            assert res.codes[child_id][-1].length <= res.codes[parent_id][-1].length


class TestSumFlag:
    def test_no_flag_on_improving_steps_at_20(self):
        root = root_code(20)
        for i in range(7):
            sigma = root.words[i]
            child = double_arrow_canonical(root, sigma)
            assert flag_sum_nonincrease(root, child, sigma) is None

    def test_flag_on_nonimproving_step(self):
        # at n=5, replacing 101 pools {0,11,1001,10001,10101}: total 17 >= 15
        root = root_code(5)
        (child,) = double_arrow_all(root, B("101"))
        assert child == Code(["0", "11", "1001", "10001", "10101"])
        assert flag_sum_nonincrease(root, child, B("101")) == SumFlag(B("101"))

    def test_relation_checked(self):
        with pytest.raises(ValueError):
            flag_sum_nonincrease(root_code(5), root_code(5), B("0"))

    def test_mirror_step_flags_identically(self):
        # pooled length multisets agree for complementary pivots, so the
        # mirrored step raises the same flag on its own
        code = Code(["00", "11", "010", "101", "0110"])
        for sigma, mirrored in [(B("010"), B("101"))]:
            (a,) = double_arrow_all(code, sigma)[:1]
            (b,) = double_arrow_all(code, mirrored)[:1]
            assert (flag_sum_nonincrease(code, a, sigma) is None) == (
                flag_sum_nonincrease(code, b, mirrored) is None
            )


class TestPruneDepth2:
    def test_no_depth1_child_cut_at_20(self):
        root = root_code(20)
        for i in range(7):
            child = double_arrow_canonical(root, root.words[i])
            assert not prune_depth2_dominated(20, child)

    def test_n5_children_of_0_not_dominated(self):
        for child in double_arrow_all(root_code(5), B("0")):
            assert not prune_depth2_dominated(5, child)

    def test_equal_sequences_do_not_dominate(self):
        # both pivot-0 children share one sequence; neither is cut
        children = double_arrow_all(root_code(5), B("0"))
        assert len({length_sequence(c) for c in children}) == 1
        assert not any(prune_depth2_dominated(5, c) for c in children)

    def test_rejects_non_child(self):
        with pytest.raises(ValueError):
            prune_depth2_dominated(5, root_code(5))

    def test_dominated_depth1_child_is_cut(self):
        # at n=5 the pivot-101 child has total 17 > 15: dominated by the root
        (child,) = double_arrow_all(root_code(5), B("101"))
        assert prune_depth2_dominated(5, child)


class TestChains:
    def test_validate_chain(self):
        root = root_code(5)
        child = double_arrow_canonical(root, B("0"))
        ok = Chain((B("0"),), (root, child))
        assert validate_chain(ok) == []
        bad = Chain((B("0"),), (root, root))
        assert validate_chain(bad)

    def test_is_shortest_empty_chain(self):
        assert is_shortest_chain(Chain((), (root_code(5),)))

    def test_figure_path_is_shortest(self):
        root = root_code(20)
        s1 = double_arrow_canonical(root, B("0"))
        s2 = double_arrow_canonical(s1, B("11"))
        assert (s1.total(), s2.total()) == (130, 113)
        chain = Chain((B("0"), B("11")), (root, s1, s2))
        assert is_shortest_chain(chain)

    def test_detects_non_shortest(self):
        # replacing 101 then 0 at n=6 evicts every word extending 101
        root = root_code(6)
        a = Code(["0", "11", "1001", "10001", "10101", "100001"])
        assert a in double_arrow_all(root, B("101"))
        b = double_arrow_canonical(a, B("0"))
        chain = Chain((B("101"), B("0")), (root, a, b))
        assert validate_chain(chain) == []
        assert not any(B("101").is_prefix_of(w, strict=True) for w in b.words)
        assert not is_shortest_chain(chain)


class TestReplay:
    def test_empty_order_for_root(self):
        chain = replay_with_order(root_code(6), [])
        assert chain is not None
        assert chain.codes == (root_code(6),)

    def test_both_orders_replay_at_20(self):
        root = root_code(20)
        target = double_arrow_canonical(double_arrow_canonical(root, B("0")), B("11"))
        assert prefix_palindromes(target) == {B("0"), B("11")}
        for order in ([B("0"), B("11")], [B("11"), B("0")]):
            chain = replay_with_order(target, order)
            assert chain is not None
            assert chain.final == target
            assert validate_chain(chain) == []
            assert is_shortest_chain(chain)

    def test_rejects_wrong_pivot_set(self):
        target = double_arrow_canonical(root_code(5), B("0"))
        with pytest.raises(ValueError):
            replay_with_order(target, [B("11")])

    def test_rejects_prefix_order_violation(self):
        # build a target whose prefix set contains a nested pair
        root = root_code(6)
        a = double_arrow_canonical(root, B("0"))
        target = None
        for sigma in a.words:
            for child in double_arrow_all(a, sigma):
                pool = prefix_palindromes(child)
                nested = [
                    (p, q)
                    for p in pool
                    for q in pool
                    if p.is_prefix_of(q, strict=True)
                ]
                if nested:
                    target = (child, nested[0])
                    break
            if target:
                break
        assert target is not None, "expected a nested prefix pair at n=6"
        child, (p, q) = target
        order = sorted(prefix_palindromes(child))
        order.remove(p)
        order.insert(order.index(q) + 1, p)  # child before parent
        with pytest.raises(ValueError):
            replay_with_order(child, order)

    def test_every_topological_order_replays_for_dominants(self, oracle_reports):
        from itertools import permutations

        for n in (5, 6):
            for code in oracle_reports(n).dominant_codes:
                pool = sorted(prefix_palindromes(code))
                for order in permutations(pool):
                    ok_order = all(
                        not order[j].is_prefix_of(order[i], strict=True)
                        for i in range(len(order))
                        for j in range(i + 1, len(order))
                    )
                    if not ok_order:
                        continue
                    chain = replay_with_order(code, list(order))
                    assert chain is not None, (n, code, order)
                    assert chain.final == code


class TestShortestChains:
    def test_chain_for_balanced5(self):
        target = Code(["00", "11", "010", "101", "0110"])
        chains = list(shortest_chains(target))
        assert chains
        for chain in chains:
            assert chain.final == target
            assert is_shortest_chain(chain)
            assert set(chain.pivots) == prefix_palindromes(target)


class TestConjecture:
    @pytest.mark.parametrize("n", [4, 5])
    def test_no_counterexamples(self, n):
        assert check_conjecture(n) == []

    def test_range(self):
        with pytest.raises(ValueError):
            check_conjecture(9)


class TestDeterminism:
    def test_threads_do_not_change_output(self):
        a = search(10, PruneConfig(), threads=1)
        b = search(10, PruneConfig(), threads=8)
        assert json.dumps(result_to_json(a), sort_keys=True) == json.dumps(
            result_to_json(b), sort_keys=True
        )

    def test_repeat_runs_identical(self):
        a = search(7, PruneConfig())
        b = search(7, PruneConfig())
        assert result_to_json(a) == result_to_json(b)


class TestExports:
    def test_json_shape(self, exhaustive_results):
        doc = result_to_json(exhaustive_results(5))
        assert set(doc) == {"n", "mode", "flags", "nodes", "edges", "stats"}
        assert doc["n"] == 5
        assert doc["nodes"][0]["total"] == 15
        assert len(doc["edges"]) == len(doc["nodes"]) - 1
        assert all(set(e) == {"parent", "child", "pivot"} for e in doc["edges"])

    def test_dot_counts_match_json(self, exhaustive_results):
        res = exhaustive_results(5)
        doc = result_to_json(res)
        dot = result_to_dot(res)
        node_lines = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
        edge_lines = [l for l in dot.splitlines() if "->" in l]
        assert len(node_lines) == len(doc["nodes"])
        assert len(edge_lines) == len(doc["edges"])

    def test_depth1_children_cover_figure_pivots(self):
        pairs = depth1_children(20)
        pivot_values = {str(s) for s, _ in pairs}
        assert {"0", "11", "101", "1001", "10001", "100001", "1000001"} <= pivot_values
