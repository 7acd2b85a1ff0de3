import numpy as np
import pytest

from amaldup.algebra import (BimoduleAction, FinDimAlgebra, duplicate,
                             natural_action, span_products)
from amaldup.errors import CommutativityRequired, NotACharacter
from amaldup.spectrum import (characters, characters_match,
                              duplication_spectrum, gelfand_semisimple,
                              multiplicativity_defect, tilde)

from conftest import pointwise_algebra, scalar_algebra, zero_algebra


def local_algebra_dim3():
    """Unital with a 2-dim square-zero radical: basis (1, x, y)."""
    c = np.zeros((3, 3, 3))
    c[0, 0, 0] = 1.0
    c[0, 1, 1] = c[1, 0, 1] = 1.0
    c[0, 2, 2] = c[2, 0, 2] = 1.0
    return FinDimAlgebra.from_mult(c, ("one", "x", "y"))


def left_scalar_algebra(mu):
    """e_i e_j = mu_i e_j: left multiplication acts by scalars everywhere."""
    mu = np.asarray(mu, dtype=complex)
    d = mu.size
    c = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            c[i, j, j] = mu[i]
    return FinDimAlgebra.from_mult(c)


class TestCharacters:
    def test_scalar_idempotent(self):
        chars = characters(scalar_algebra())
        assert len(chars) == 1
        assert np.allclose(chars[0].phi, [1.0], atol=1e-9)

    def test_zero_product_has_none(self):
        assert characters(zero_algebra(1)) == []
        assert characters(zero_algebra(3)) == []

    def test_pointwise_coordinates(self):
        chars = characters(pointwise_algebra(2))
        assert len(chars) == 2
        got = sorted(tuple(np.round(c.phi.real, 6)) for c in chars)
        assert got == [(0.0, 1.0), (1.0, 0.0)]

    def test_lau_duplication_two_characters(self, lau_unital):
        dup = duplicate(*lau_unital)
        chars = characters(dup)
        # chi1(a, b) = a + b and chi2(a, b) = b, from the 2-variable
        # multiplicativity system solved by hand
        assert characters_match([c.phi for c in chars],
                                [np.array([1.0, 1.0]), np.array([0.0, 1.0])],
                                1e-8)

    def test_residuals_recorded(self):
        for c in characters(pointwise_algebra(3)):
            assert c.residual <= 1e-9

    def test_local_algebra_single_character(self):
        # every generic element has a repeated eigenvalue here, so this
        # exercises the subspace-splitting path
        chars = characters(local_algebra_dim3())
        assert len(chars) == 1
        assert np.allclose(chars[0].phi, [1.0, 0.0, 0.0], atol=1e-8)

    def test_left_scalar_algebra_extraction(self):
        # left multiplications are scalar on the whole space: the splitting
        # never isolates rays and the leftover-extraction path must fire
        mu = np.array([0.5, -0.25])
        chars = characters(left_scalar_algebra(mu))
        assert len(chars) == 1
        assert np.allclose(chars[0].phi, mu, atol=1e-8)

    def test_seed_stability(self):
        dup_chars = [
            [c.phi for c in characters(pointwise_algebra(3), seed=s)]
            for s in (0, 1, 12345)
        ]
        assert characters_match(dup_chars[0], dup_chars[1], 1e-7)
        assert characters_match(dup_chars[0], dup_chars[2], 1e-7)

    def test_truncated_polynomials(self):
        c = np.zeros((3, 3, 3))
        for i in range(3):
            for j in range(3):
                if i + j < 3:
                    c[i, j, i + j] = 1.0
        chars = characters(FinDimAlgebra.from_mult(c))
        assert len(chars) == 1
        assert np.allclose(chars[0].phi, [1.0, 0.0, 0.0], atol=1e-8)


class TestTilde:
    def test_lau_identity_companion(self, lau_unital):
        a, f, act = lau_unital
        phi = characters(a)[0]
        assert np.allclose(tilde(phi, a, f, act), [1.0], atol=1e-9)

    def test_zero_action_companion_zero(self, zero_pair):
        a, f, act = zero_pair
        alg = scalar_algebra()
        out = tilde(np.array([1.0]), alg, f, BimoduleAction.zero(1, 1))
        assert np.allclose(out, [0.0])

    def test_module_extension_vacuous(self, module_extension):
        a, _, _ = module_extension
        assert characters(a) == []  # zero product: nothing to feed tilde

    def test_rejects_non_character(self, lau_unital):
        a, f, act = lau_unital
        with pytest.raises(NotACharacter):
            tilde(np.array([2.0]), a, f, act)

    def test_companion_nonzero_under_full_action_span(self, lau_unital):
        a, f, act = lau_unital
        assert span_products(a, "right_action", act).dim == a.dim
        for phi in characters(a):
            assert np.max(np.abs(tilde(phi, a, f, act))) > 1e-9

    def test_companion_nonzero_under_full_action_span_random(self):
        from amaldup.sampling import random_triple
        rng = np.random.default_rng(40)
        seen = 0
        for _ in range(60):
            a, f, act, _ = random_triple(rng)
            full = (span_products(a, "left_action", act).dim == a.dim
                    or span_products(a, "right_action", act).dim == a.dim)
            if not full:
                continue
            for phi in characters(a):
                seen += 1
                assert np.max(np.abs(tilde(phi, a, f, act))) > 1e-7
        assert seen > 5  # the draw must actually exercise the claim


class TestDuplicationSpectrum:
    def test_lau_fixture(self, lau_unital):
        e_list, f_list, sigma = duplication_spectrum(*lau_unital)
        assert len(e_list) == 1 and len(f_list) == 1 and len(sigma) == 2
        assert characters_match(e_list, [np.array([1.0, 1.0])], 1e-8)
        assert characters_match(f_list, [np.array([0.0, 1.0])], 1e-8)

    def test_module_extension_fixture(self, module_extension):
        e_list, f_list, sigma = duplication_spectrum(*module_extension)
        assert e_list == []
        assert len(f_list) == 1 and len(sigma) == 1
        assert characters_match(f_list, [np.array([0.0, 1.0])], 1e-8)

    def test_zero_pair_empty(self, zero_pair):
        e_list, f_list, sigma = duplication_spectrum(*zero_pair)
        assert e_list == [] and f_list == [] and sigma == []

    def test_natural_self_action(self):
        alg = pointwise_algebra(2)
        e_list, f_list, sigma = duplication_spectrum(alg, alg, natural_action(alg))
        assert len(sigma) == len(e_list) + len(f_list) == 4


class TestSemisimple:
    def test_pointwise_true(self):
        assert gelfand_semisimple(pointwise_algebra(2))

    def test_zero_product_false(self):
        assert not gelfand_semisimple(zero_algebra(2))

    def test_lau_duplication_true(self, lau_unital):
        assert gelfand_semisimple(duplicate(*lau_unital))

    def test_radical_detected(self):
        assert not gelfand_semisimple(local_algebra_dim3())

    def test_noncommutative_rejected(self, triangular):
        with pytest.raises(CommutativityRequired):
            gelfand_semisimple(duplicate(*triangular))


class TestDefect:
    def test_defect_of_true_character_zero(self):
        alg = pointwise_algebra(2)
        assert multiplicativity_defect(alg, np.array([1.0, 0.0])) == 0.0

    def test_defect_of_sum_positive(self):
        alg = pointwise_algebra(2)
        assert multiplicativity_defect(alg, np.array([1.0, 1.0])) > 0.5
