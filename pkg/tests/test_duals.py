import numpy as np
import pytest

from amaldup.algebra import duplicate, natural_action
from amaldup.duals import (arens_action_extensions, arens_products,
                           assemble_duplication_dual, canonical_embedding,
                           duplication_dual_blocks, duplication_nth_dual,
                           essentiality, first_adjoint, nth_dual_bimodule,
                           second_adjoint, second_dual_duplication_defect,
                           topological_centres)

from conftest import pointwise_algebra, scalar_algebra


class TestAdjoints:
    def test_three_applications_are_identity(self):
        rng = np.random.default_rng(0)
        t = rng.standard_normal((3, 3, 3)) + 1j * rng.standard_normal((3, 3, 3))
        for adj in (first_adjoint, second_adjoint):
            assert np.array_equal(adj(adj(adj(t))), t)

    def test_first_adjoint_pairing_identity(self):
        # <m*(z', x), y> = <z', m(x, y)> on random data
        rng = np.random.default_rng(1)
        m = rng.standard_normal((2, 3, 4))
        x, y, zp = rng.standard_normal(2), rng.standard_normal(3), rng.standard_normal(4)
        lhs = np.einsum("c,a,cab,b->", zp, x, first_adjoint(m), y)
        rhs = np.einsum("c,a,b,abc->", zp, x, y, m)
        assert lhs == pytest.approx(rhs)

    def test_second_adjoint_pairing_identity(self):
        rng = np.random.default_rng(2)
        m = rng.standard_normal((2, 3, 4))
        x, y, zp = rng.standard_normal(2), rng.standard_normal(3), rng.standard_normal(4)
        lhs = np.einsum("b,c,bca,a->", y, zp, second_adjoint(m), x)
        rhs = np.einsum("c,a,b,abc->", zp, x, y, m)
        assert lhs == pytest.approx(rhs)


class TestDualTower:
    def test_level0_matches_multiplication(self, lau_unital):
        dup = duplicate(*lau_unital)
        bim = nth_dual_bimodule(dup, 0)
        x = np.array([1.0, 2.0])
        y = np.array([3.0, 4.0])
        assert np.allclose(np.einsum("i,ikj,j->k", x, bim.left_ops, y),
                           dup.multiply(x, y))

    def test_double_transpose_returns(self, triangular):
        dup = duplicate(*triangular)
        b0 = nth_dual_bimodule(dup, 0)
        b2 = nth_dual_bimodule(dup, 2)
        assert np.array_equal(b0.left_ops, b2.left_ops)
        assert np.array_equal(b0.right_ops, b2.right_ops)

    def test_block_formulas_match_recursion(self, lau_unital, module_extension,
                                            triangular):
        for triple in (lau_unital, module_extension, triangular):
            for n in range(4):
                duplication_nth_dual(*triple, n)  # raises on mismatch

    def test_odd_level_blocks_lower_triangular(self, triangular):
        a, f, act = triangular
        bim = duplication_nth_dual(a, f, act, 1)
        da = a.dim
        # A-indexed left operators must not leak F-dual into A-dual at odd level
        assert np.max(np.abs(bim.left_ops[:da, :da, da:])) == 0.0

    def test_assemble_matches_level0_product(self, module_extension):
        a, f, act = module_extension
        blocks = duplication_dual_blocks(a, f, act, 0)
        bim = assemble_duplication_dual(blocks)
        dup = duplicate(a, f, act)
        assert np.allclose(bim.left_ops, nth_dual_bimodule(dup, 0).left_ops)


class TestArens:
    def test_dim1_trivial(self):
        st = arens_products(scalar_algebra())
        assert np.array_equal(st.first, st.second)

    def test_fixture_duplications(self, lau_unital, zero_pair, triangular):
        for triple in (lau_unital, zero_pair, triangular):
            dup = duplicate(*triple)
            st = arens_products(dup)
            assert np.max(np.abs(st.first - dup.mult)) <= 1e-10
            assert np.max(np.abs(st.second - dup.mult)) <= 1e-10

    def test_action_extensions_collapse(self, lau_unital):
        a, f, act = lau_unital
        ext = arens_action_extensions(a, f, act)
        assert np.array_equal(ext.bullet.left, act.left)
        assert np.array_equal(ext.blacktriangle.right, act.right)

    def test_second_dual_duplication_identity(self, lau_unital, module_extension,
                                              triangular):
        for triple in (lau_unital, module_extension, triangular):
            assert second_dual_duplication_defect(*triple) <= 1e-10


class TestCentres:
    def test_all_full(self, lau_unital):
        cents = topological_centres(*lau_unital)
        assert cents["Zt_dup"].dim == 2
        assert cents["Zt_A"].dim == 1
        assert cents["Z_F_on_A"].dim == 1

    def test_triangular_full(self, triangular):
        cents = topological_centres(*triangular)
        assert cents["Zt_dup"].dim == 3

    def test_zero_pair_full(self, zero_pair):
        cents = topological_centres(*zero_pair)
        assert all(s.dim == s.ambient_dim for s in cents.values())


class TestEmbedding:
    def test_identity_on_coordinates(self):
        alg = pointwise_algebra(2)
        assert np.array_equal(canonical_embedding(alg, [0.0, 0.0]), [0.0, 0.0])
        assert np.array_equal(canonical_embedding(alg, alg.unit), alg.unit)
        v = np.array([1.0 + 2.0j, -3.0])
        assert np.array_equal(canonical_embedding(alg, v), v)


class TestEssentiality:
    def test_unital_always_essential(self, lau_unital):
        a, f, act = lau_unital
        for n in (0, 2):
            assert essentiality(a, f, act, n, "algebra_left")
            assert essentiality(a, f, act, n, "algebra_right")

    def test_zero_product_not_essential(self, zero_pair):
        a, f, act = zero_pair
        assert not essentiality(a, f, act, 0, "algebra_left")

    def test_identity_action_essential(self, module_extension):
        a, f, act = module_extension
        assert essentiality(a, f, act, 0, "action_right")
        assert not essentiality(a, f, act, 0, "algebra_left")

    def test_natural_action_mode(self):
        alg = pointwise_algebra(2)
        assert essentiality(alg, alg, natural_action(alg), 2, "action_left")
