import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from amaldup.errors import InvalidMatrix, ShapeError
from amaldup.linalg import (Subspace, rank_nullspace, solve_affine,
                            subspace_contains, subspace_equal,
                            subspace_intersect, subspace_sum)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestRankNullspace:
    def test_identity(self):
        rank, null = rank_nullspace(np.eye(2), 1e-9)
        assert rank == 2
        assert null.dim == 0

    def test_zero_matrix(self):
        rank, null = rank_nullspace(np.zeros((2, 2)))
        assert rank == 0
        assert null.dim == 2

    def test_rank_one(self):
        # SVD of [[1,1],[1,1]] by hand: singular values (2, 0), kernel (1,-1)/sqrt(2)
        rank, null = rank_nullspace(np.array([[1.0, 1.0], [1.0, 1.0]]))
        assert rank == 1
        assert null.dim == 1
        v = null.basis[:, 0]
        expected = np.array([1.0, -1.0]) / np.sqrt(2.0)
        phase = v[0] / expected[0]
        assert abs(abs(phase) - 1.0) < 1e-12
        assert np.allclose(v, phase * expected, atol=1e-12)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidMatrix):
            rank_nullspace(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    @given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
    @settings(max_examples=60, deadline=None)
    def test_rank_plus_nullity(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        m = random_complex(rng, rows, cols)
        if seed % 3 == 0 and cols > 1:  # force rank deficiency sometimes
            m[:, -1] = m[:, 0]
        rank, null = rank_nullspace(m)
        assert rank + null.dim == cols
        if null.dim:
            assert np.max(np.abs(m @ null.basis)) < 1e-9 * max(1, np.max(np.abs(m)))


class TestSolveAffine:
    def test_identity_system(self):
        x = solve_affine(np.eye(2), np.array([3.0, 4.0j]))
        assert np.allclose(x, [3.0, 4.0j], atol=1e-12)

    def test_zero_zero(self):
        x = solve_affine(np.zeros((2, 2)), np.zeros(2))
        assert np.allclose(x, 0.0)

    def test_inconsistent_returns_none(self):
        # b = (1, 2) is outside the column span of [[1,1],[1,1]]
        assert solve_affine(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([1.0, 2.0])) is None

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            solve_affine(np.eye(2), np.zeros(3))

    @given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_residual_certificate(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        a = random_complex(rng, rows, cols)
        b = random_complex(rng, rows)
        tol = 1e-9
        x = solve_affine(a, b, tol)
        if x is not None:
            assert np.linalg.norm(a @ x - b) <= tol * (1 + np.linalg.norm(b))


class TestSubspace:
    def test_contains_full(self):
        full = Subspace.full(3)
        s = Subspace.from_spanning([np.array([1.0, 2.0, 3.0])])
        assert subspace_contains(full, s)

    def test_orthogonal_intersection_is_zero(self):
        e1 = Subspace.from_spanning([np.array([1.0, 0.0])])
        e2 = Subspace.from_spanning([np.array([0.0, 1.0])])
        assert subspace_intersect(e1, e2).dim == 0

    def test_sum_spans_plane(self):
        s1 = Subspace.from_spanning([np.array([1.0, 1.0])])
        s2 = Subspace.from_spanning([np.array([1.0, -1.0])])
        total = subspace_sum(s1, s2)
        assert total.dim == 2
        assert subspace_equal(total, Subspace.full(2))

    def test_dependent_vectors_dropped(self):
        s = Subspace.from_spanning(
            [np.array([1.0, 0.0]), np.array([2.0, 0.0]), np.array([0.0, 0.0])])
        assert s.dim == 1

    def test_ambient_mismatch(self):
        with pytest.raises(ShapeError):
            subspace_sum(Subspace.full(2), Subspace.full(3))

    @given(st.integers(0, 10**6), st.integers(1, 6), st.integers(0, 6))
    @settings(max_examples=60, deadline=None)
    def test_projector_idempotent(self, seed, ambient, nvec):
        rng = np.random.default_rng(seed)
        s = Subspace.from_spanning(random_complex(rng, ambient, nvec), ambient)
        v = random_complex(rng, ambient)
        once = s.project(v)
        assert np.linalg.norm(s.project(once) - once) < 1e-10

    @given(st.integers(0, 10**6), st.integers(1, 5))
    @settings(max_examples=40, deadline=None)
    def test_intersection_contained_in_both(self, seed, ambient):
        rng = np.random.default_rng(seed)
        s1 = Subspace.from_spanning(random_complex(rng, ambient, 2), ambient)
        s2 = Subspace.from_spanning(random_complex(rng, ambient, 2), ambient)
        inter = subspace_intersect(s1, s2)
        assert subspace_contains(s1, inter, 1e-8)
        assert subspace_contains(s2, inter, 1e-8)
