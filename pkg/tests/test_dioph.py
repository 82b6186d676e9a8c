"""Feasible-set enumeration tests.

The worked 4x7 example pins the exact 7-member feasible set; everything
else is cross-checked against the exhaustive-scan oracle or stated as a
structural property (negation closure, budget monotonicity, equation-order
independence).
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cils import (
    Alphabet,
    IntMatrix,
    hermite_normal_form,
    oracle_F,
    solve_diophantine_sparse,
    solve_single_equation,
    tree_leaves,
)
from cils.dioph import SolutionTree, _expand_free, _states_of_tree, _tree_from_states
from conftest import A_ROWS, FEASIBLE_7, X_A_ROWS

S3 = Alphabet((-1, 0, 1))


def brute_force(A: IntMatrix, alphabet: Alphabet, max_nonzeros: int):
    out = []
    for x in itertools.product(alphabet.values, repeat=A.cols):
        if sum(1 for v in x if v) > max_nonzeros:
            continue
        if all(sum(a * v for a, v in zip(row, x)) == 0 for row in A.entries):
            out.append(x)
    return out


class TestAlphabet:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Alphabet(())

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            Alphabet((1, 0))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            Alphabet((0, 0, 1))

    def test_membership(self):
        s = Alphabet((-2, 0, 3))
        assert 3 in s and -2 in s and 1 not in s


class TestSingleEquation:
    def test_two_term_equation(self):
        # -18 x6 + 18 x7 = 0 forces x6 = x7
        tree = solve_single_equation((-18, 18), SolutionTree.empty(), 0, S3, 4)
        assert tree_leaves(tree) == [(-1, -1), (0, 0), (1, 1)]

    def test_unit_equation(self):
        tree = solve_single_equation((1,), SolutionTree.empty(), 0, S3, 4)
        assert tree_leaves(tree) == [(0,)]

    def test_extension_matches_brute_force(self):
        base = solve_single_equation((-18, 18), SolutionTree.empty(), 0, S3, 4)
        ext = solve_single_equation((0, 1, 0, 1, 0, -19, 21), base, 1, S3, 4)
        got = tree_leaves(ext)
        base_pairs = {(-1, -1), (0, 0), (1, 1)}
        want = sorted(
            x
            for x in itertools.product(S3.values, repeat=6)
            if (x[4], x[5]) in base_pairs
            and x[0] + x[2] - 19 * x[4] + 21 * x[5] == 0
            and sum(1 for v in x if v) <= 4
        )
        assert got == want

    def test_budget_prunes_partial_paths(self):
        # with budget 0 only the all-zero assignment can survive
        tree = solve_single_equation((-18, 18), SolutionTree.empty(), 0, S3, 0)
        assert tree_leaves(tree) == [(0, 0)]

    def test_consistency_mode_filters_covered_tree(self):
        base = solve_single_equation((-18, 18), SolutionTree.empty(), 0, S3, 4)
        filtered = solve_single_equation((1, -1), base, 0, S3, 4)
        assert filtered.depth == base.depth
        assert tree_leaves(filtered) == [(-1, -1), (0, 0), (1, 1)]
        killed = solve_single_equation((1, 1), base, 0, S3, 4)
        assert tree_leaves(killed) == [(0, 0)]

    def test_zero_before_pivot_required(self):
        with pytest.raises(ValueError):
            solve_single_equation((1, 2), SolutionTree.empty(), 1, S3, 4)

    def test_zero_pivot_rejected(self):
        with pytest.raises(ValueError):
            solve_single_equation((0, 1), SolutionTree.empty(), 0, S3, 4)


class TestWorkedExample:
    def test_exactly_seven_leaves(self, ex_A, s3):
        tree, stats = solve_diophantine_sparse(ex_A, s3, 4)
        leaves = tree_leaves(tree)
        assert len(leaves) == 7
        assert stats.leaves == 7
        assert stats.nodes_visited >= 7

    def test_leaf_set_pinned(self, ex_A, s3):
        leaves = tree_leaves(solve_diophantine_sparse(ex_A, s3, 4)[0])
        assert leaves == FEASIBLE_7

    def test_contains_planted_rows_and_negations(self, ex_A, s3):
        leaves = set(tree_leaves(solve_diophantine_sparse(ex_A, s3, 4)[0]))
        for row in X_A_ROWS:
            assert row in leaves
            assert tuple(-v for v in row) in leaves
        assert (0,) * 7 in leaves

    def test_matches_oracle(self, ex_A, s3):
        assert tree_leaves(solve_diophantine_sparse(ex_A, s3, 4)[0]) == oracle_F(ex_A, s3, 4)


class TestSolveDiophantine:
    def test_single_sum_equation(self):
        tree, _ = solve_diophantine_sparse(IntMatrix(((1, 1),)), S3, 2)
        assert tree_leaves(tree) == [(-1, 1), (0, 0), (1, -1)]

    def test_budget_above_length_rejected(self):
        with pytest.raises(ValueError):
            solve_diophantine_sparse(IntMatrix(((1, 1),)), S3, 3)

    def test_zero_matrix_gives_budgeted_product(self):
        tree, _ = solve_diophantine_sparse(IntMatrix.zeros(2, 3), S3, 1)
        want = sorted(
            x for x in itertools.product(S3.values, repeat=3) if sum(1 for v in x if v) <= 1
        )
        assert tree_leaves(tree) == want

    def test_alphabet_without_zero_can_be_empty(self):
        tree, _ = solve_diophantine_sparse(IntMatrix(((1, 0), (0, 1))), Alphabet((1, 2)), 2)
        assert tree_leaves(tree) == []

    def test_empty_tree_has_no_leaves(self):
        assert tree_leaves(SolutionTree.empty()) == []
        assert tree_leaves(_tree_from_states([], 3)) == []

    @given(
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=2, max_value=6),
        st.data(),
    )
    @settings(max_examples=40)
    def test_oracle_equivalence(self, p, l, data):
        rows = data.draw(
            st.lists(
                st.lists(st.integers(min_value=-4, max_value=4), min_size=l, max_size=l),
                min_size=p,
                max_size=p,
            )
        )
        A = IntMatrix(tuple(tuple(r) for r in rows))
        k = data.draw(st.integers(min_value=0, max_value=l))
        got = tree_leaves(solve_diophantine_sparse(A, S3, k)[0])
        assert got == brute_force(A, S3, k)

    @given(st.data())
    @settings(max_examples=25)
    def test_negation_closure_and_zero_membership(self, data):
        l = data.draw(st.integers(min_value=2, max_value=5))
        p = data.draw(st.integers(min_value=1, max_value=3))
        rows = data.draw(
            st.lists(
                st.lists(st.integers(min_value=-5, max_value=5), min_size=l, max_size=l),
                min_size=p,
                max_size=p,
            )
        )
        k = data.draw(st.integers(min_value=0, max_value=l))
        leaves = set(tree_leaves(solve_diophantine_sparse(IntMatrix(tuple(tuple(r) for r in rows)), S3, k)[0]))
        assert (0,) * l in leaves
        for v in leaves:
            assert tuple(-u for u in v) in leaves

    def test_monotone_budget_pruning(self, ex_A, s3):
        tree, _ = solve_diophantine_sparse(ex_A, s3, 4)
        # every partial path must respect the nonzero budget
        def walk(node, count):
            assert count <= 4
            for child in node.children:
                walk(child, count + (child.value != 0))
        walk(tree.root, 0)

    def test_node_count_grows_with_alphabet(self, ex_A):
        _, small = solve_diophantine_sparse(ex_A, S3, 4)
        _, wide = solve_diophantine_sparse(ex_A, Alphabet((-2, -1, 0, 1, 2)), 4)
        assert wide.nodes_visited > small.nodes_visited


class TestEquationOrder:
    """The leaf set must not depend on the order equations are folded in."""

    @given(st.data())
    @settings(max_examples=20)
    def test_any_row_order_gives_same_leaves(self, data):
        p = data.draw(st.integers(min_value=2, max_value=4))
        l = data.draw(st.integers(min_value=3, max_value=6))
        rows = data.draw(
            st.lists(
                st.lists(st.integers(min_value=-3, max_value=3), min_size=l, max_size=l),
                min_size=p,
                max_size=p,
            )
        )
        A = IntMatrix(tuple(tuple(r) for r in rows))
        k = data.draw(st.integers(min_value=1, max_value=l))
        H = hermite_normal_form(A).H
        ref = tree_leaves(solve_diophantine_sparse(A, S3, k)[0])
        pivot_rows = [
            (i, next(j for j, v in enumerate(H.row(i)) if v != 0))
            for i in range(H.rows)
            if any(H.row(i))
        ]
        order = data.draw(st.permutations(pivot_rows))
        tree = SolutionTree.empty()
        for i, pivot in order:
            tree = solve_single_equation(H.row(i), tree, pivot, S3, k)
        states = _states_of_tree(tree)
        depth = tree.depth
        while depth < l:
            states, _ = _expand_free(states, S3, k)
            depth += 1
        got = sorted(tuple(reversed(path)) for path, _ in states)
        assert got == ref
