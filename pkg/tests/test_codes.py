import pytest
from hypothesis import given, strategies as st

from symfix.bitpal import Bitstring, neighbors, root_code
from symfix.codes import (
    Code,
    LengthSequence,
    dominates,
    double_arrow_all,
    double_arrow_canonical,
    has_root_prefix_property,
    is_valid,
    length_sequence,
    validate,
    verify_arrow,
)

BALANCED5 = Code(["00", "11", "010", "101", "0110"])


class TestCode:
    def test_canonical_form_and_equality(self):
        a = Code(["101", "0", "11"])
        b = Code(["0", "11", "101"])
        assert a == b
        assert a.words == (Bitstring("0"), Bitstring("11"), Bitstring("101"))
        assert a.n == 3

    def test_capacity_stored(self):
        short = Code(["0", "11"], 3)
        assert short.n == 3
        assert "count" in validate(short)[0]

    def test_total_and_max(self):
        assert BALANCED5.total() == 14
        assert BALANCED5.max_length() == 4


class TestValidate:
    def test_root_code_ok(self):
        assert validate(root_code(6)) == []
        assert is_valid(root_code(6))

    def test_prefix_violation(self):
        out = validate(Code(["0", "00", "11"]))
        assert any("prefix condition" in v for v in out)

    def test_non_palindrome(self):
        out = validate(Code(["0", "10", "11"]))
        assert any("not a palindrome" in v and "10" in v for v in out)

    def test_rejects_single_one(self):
        out = validate(Code(["1", "00", "010"]))
        assert any("not allowed" in v for v in out)

    def test_length_cap(self):
        out = validate(Code(["0", "11", "10101"], 3))
        assert any("exceeds the cap" in v for v in out)


class TestLengthSequence:
    def test_root_code(self):
        assert length_sequence(root_code(4)).lengths == (1, 2, 3, 4)

    def test_balanced(self):
        seq = length_sequence(BALANCED5)
        assert seq.lengths == (2, 2, 3, 3, 4)
        assert seq.prefix_sums == (2, 4, 7, 10, 14)
        assert seq.total == 14

    def test_root_total_20(self):
        assert length_sequence(root_code(20)).total == 210

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            LengthSequence((0, 1))


class TestDominates:
    def test_componentwise(self):
        assert dominates(LengthSequence((1, 2, 3)), LengthSequence((1, 2, 4)))
        assert not dominates(LengthSequence((1, 2, 4)), LengthSequence((1, 2, 3)))

    def test_mutually_incomparable(self):
        root = LengthSequence((1, 2, 3, 4, 5))
        balanced = LengthSequence((2, 2, 3, 3, 4))
        assert not dominates(root, balanced)  # first prefix sum 1 < 2
        assert not dominates(balanced, root)  # last prefix sum 14 < 15

    def test_irreflexive(self):
        seq = LengthSequence((1, 2, 3))
        assert not dominates(seq, seq)

    def test_count_mismatch(self):
        with pytest.raises(ValueError):
            dominates(LengthSequence((1, 2)), LengthSequence((1, 2, 3)))

    @given(
        st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=7),
        st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=7),
    )
    def test_antisymmetric(self, a, b):
        if len(a) != len(b):
            a = (a + b)[: len(b)] or a
            b = b[: len(a)]
        if len(a) != len(b):
            return
        sa, sb = LengthSequence(tuple(a)), LengthSequence(tuple(b))
        assert not (dominates(sa, sb) and dominates(sb, sa))


class TestDoubleArrow:
    def test_root5_pivot0_all(self):
        results = double_arrow_all(root_code(5), Bitstring("0"))
        assert len(results) == 2
        assert set(results) == {
            Code(["00", "11", "010", "101", "0110"]),
            Code(["00", "11", "010", "101", "1001"]),
        }
        assert {length_sequence(c).lengths for c in results} == {(2, 2, 3, 3, 4)}

    def test_root5_pivot0_canonical(self):
        assert double_arrow_canonical(root_code(5), Bitstring("0")) == BALANCED5

    def test_empty_when_no_neighbors_fit(self):
        # the shortest palindrome extending 101 has length 5 > 4
        assert double_arrow_all(root_code(4), Bitstring("101")) == ()
        with pytest.raises(ValueError):
            double_arrow_canonical(root_code(4), Bitstring("101"))

    def test_requires_member_pivot(self):
        with pytest.raises(ValueError):
            double_arrow_all(root_code(5), Bitstring("010"))

    def test_figure_totals_at_20(self):
        root = root_code(20)
        expected = {1: 130, 2: 136, 3: 145, 4: 161, 5: 177, 6: 191, 7: 202}
        for i, total in expected.items():
            sigma = root.words[i - 1]
            children = double_arrow_all(root, sigma)
            assert children, sigma
            assert {c.total() for c in children} == {total}

    def test_children_all_valid(self):
        for sigma in root_code(6).words:
            for child in double_arrow_all(root_code(6), sigma):
                assert is_valid(child)

    def test_shared_length_sequence_across_ties(self):
        for sigma in root_code(7).words:
            children = double_arrow_all(root_code(7), sigma)
            assert len({length_sequence(c) for c in children}) <= 1


class TestVerifyArrow:
    def test_accepts_replacement(self):
        assert verify_arrow(root_code(5), BALANCED5, Bitstring("0"))

    def test_rejects_retained_pivot(self):
        assert not verify_arrow(root_code(5), root_code(5), Bitstring("0"))

    def test_every_transformation_result_verifies(self):
        for n in (5, 6):
            root = root_code(n)
            for sigma in root.words:
                for child in double_arrow_all(root, sigma):
                    assert verify_arrow(root, child, sigma)


class TestRootPrefixProperty:
    def test_root_code(self):
        assert has_root_prefix_property(root_code(7))

    def test_balanced(self):
        assert has_root_prefix_property(BALANCED5)
