import numpy as np
import pytest

from amaldup.algebra import duplicate
from amaldup.errors import NotAProperIdeal
from amaldup.ideals import (block_subspace, coset_direction_grid,
                            ideal_generated, is_ideal, is_maximal_left_ideal,
                            maximality_direction_oracle, product_ideal_test,
                            project_components)
from amaldup.linalg import Subspace, subspace_equal

from conftest import pointwise_algebra


def span(vectors, ambient):
    return Subspace.from_spanning([np.asarray(v, dtype=complex) for v in vectors],
                                  ambient)


class TestIsIdeal:
    def test_zero_and_full(self, triangular):
        dup = duplicate(*triangular)
        for side in ("left", "right", "two_sided"):
            assert is_ideal(dup, Subspace.zero(3), side)
            assert is_ideal(dup, Subspace.full(3), side)

    def test_triangular_module_two_sided(self, triangular):
        dup = duplicate(*triangular)  # basis (E12; E11, E22)
        assert is_ideal(dup, span([[1, 0, 0]], 3), "two_sided")

    def test_pointwise_axis(self):
        alg = pointwise_algebra(2)
        assert is_ideal(alg, span([[1, 0]], 2), "two_sided")

    def test_non_ideal_detected(self, triangular):
        dup = duplicate(*triangular)
        # span{E11} is a left ideal but not a right ideal: E11 E12 = E12
        assert is_ideal(dup, span([[0, 1, 0]], 3), "left")
        assert not is_ideal(dup, span([[0, 1, 0]], 3), "right")


class TestProductIdealTest:
    def test_whole_space(self, lau_unital):
        a, f, act = lau_unital
        report = product_ideal_test(a, f, act, Subspace.full(1), Subspace.full(1))
        assert report.conjunction and report.direct

    def test_first_factor_is_ideal(self, module_extension):
        a, f, act = module_extension
        report = product_ideal_test(a, f, act, Subspace.full(1), Subspace.zero(1))
        assert report.conjunction and report.direct

    def test_lau_zero_times_f_fails(self, lau_unital):
        a, f, act = lau_unital
        report = product_ideal_test(a, f, act, Subspace.zero(1), Subspace.full(1))
        assert not report.a_dot_j_inside_i
        assert not report.direct
        assert report.conjunction == report.direct

    def test_agreement_on_fixtures(self, lau_unital, module_extension, triangular):
        rng = np.random.default_rng(3)
        for a, f, act in (lau_unital, module_extension, triangular):
            for _ in range(25):
                i_vecs = rng.standard_normal((a.dim, rng.integers(0, a.dim + 1)))
                j_vecs = rng.standard_normal((f.dim, rng.integers(0, f.dim + 1)))
                report = product_ideal_test(a, f, act,
                                            span(i_vecs.T, a.dim),
                                            span(j_vecs.T, f.dim))
                assert report.conjunction == report.direct


class TestProjections:
    def test_rectangular_block(self):
        i_sub = span([[1, 0]], 2)
        j_sub = span([[1]], 1)
        n_sub = block_subspace(i_sub, j_sub)
        i_n, j_n = project_components(2, 1, n_sub)
        assert subspace_equal(i_n, i_sub) and subspace_equal(j_n, j_sub)

    def test_diagonal_line_projects_onto_both(self, lau_unital):
        n_sub = span([[1.0, 1.0]], 2)
        i_n, j_n = project_components(1, 1, n_sub)
        assert i_n.dim == 1 and j_n.dim == 1
        assert n_sub.dim == 1  # strictly smaller than I_N x J_N

    def test_ideal_containing_second_factor_is_block(self, lau_unital):
        a, f, act = lau_unital
        dup = duplicate(a, f, act)
        n_sub = ideal_generated(dup, [np.array([0.0, 1.0])], "left")
        assert is_ideal(dup, n_sub, "left")
        i_n, j_n = project_components(1, 1, n_sub)
        assert subspace_equal(n_sub, block_subspace(i_n, Subspace.full(1)))


class TestIdealGenerated:
    def test_zero_seed(self):
        alg = pointwise_algebra(2)
        assert ideal_generated(alg, [np.zeros(2)]).dim == 0

    def test_unit_seed_generates_everything(self):
        alg = pointwise_algebra(3)
        assert ideal_generated(alg, [alg.unit]).dim == 3

    def test_triangular_e11_left_ideal(self, triangular):
        dup = duplicate(*triangular)  # (E12; E11, E22)
        left_ideal = ideal_generated(dup, [np.array([0.0, 1.0, 0.0])], "left")
        # x E11 over the basis: E11 E11 = E11, E22 E11 = 0, E12 E11 = 0
        assert left_ideal.dim == 1
        assert subspace_equal(left_ideal, span([[0, 1, 0]], 3))

    def test_monotone_idempotent(self, triangular):
        dup = duplicate(*triangular)
        rng = np.random.default_rng(5)
        for _ in range(10):
            seeds = [rng.standard_normal(3) + 1j * rng.standard_normal(3)]
            first = ideal_generated(dup, seeds, "left")
            again = ideal_generated(dup, [first.basis[:, c] for c in
                                          range(first.dim)], "left")
            assert subspace_equal(first, again)
            assert first.residual(seeds) <= 1e-9


class TestMaximality:
    def test_codim_one_ideal_maximal(self, triangular):
        dup = duplicate(*triangular)
        assert is_maximal_left_ideal(dup, span([[1, 0, 0], [0, 1, 0]], 3))

    def test_zero_not_maximal_in_pointwise(self):
        alg = pointwise_algebra(2)
        assert not is_maximal_left_ideal(alg, Subspace.zero(2))

    def test_axis_maximal_in_pointwise(self):
        alg = pointwise_algebra(2)
        assert is_maximal_left_ideal(alg, span([[1, 0]], 2))

    def test_improper_rejected(self):
        alg = pointwise_algebra(2)
        with pytest.raises(NotAProperIdeal):
            is_maximal_left_ideal(alg, Subspace.full(2))
        with pytest.raises(NotAProperIdeal):
            # span{e1 + e2} is not an ideal of the pointwise product
            is_maximal_left_ideal(alg, span([[1, 1]], 2))

    def test_direction_oracle_agrees(self, triangular):
        dup = duplicate(*triangular)
        cases = [
            (dup, span([[1, 0, 0], [0, 1, 0]], 3)),
            (dup, span([[1, 0, 0]], 3)),
            (pointwise_algebra(2), Subspace.zero(2)),
            (pointwise_algebra(2), span([[1, 0]], 2)),
        ]
        for alg, ideal in cases:
            grid = coset_direction_grid(alg, ideal, 200)
            assert (maximality_direction_oracle(alg, ideal, grid)
                    == is_maximal_left_ideal(alg, ideal))
