"""Shared canonical fixtures.

Four small triples cover the construction's corner cases:

  zero_pair        -- both factors C with the zero product, zero action;
                      the duplication is the 2-dim zero-product algebra.
  lau_unital       -- both factors C with identity products, action scaled
                      by the identity character; the duplication is unital.
  module_extension -- first factor C with the zero product, second factor
                      C unital acting as the identity on it.
  triangular       -- module-extension form of the 2x2 upper-triangular
                      matrix algebra, basis (E12; E11, E22).
"""

import numpy as np
import pytest

from amaldup.algebra import (BimoduleAction, FinDimAlgebra,
                             canonical_construction)


def scalar_algebra(label="e"):
    """C with e^2 = e."""
    return FinDimAlgebra.from_mult(np.ones((1, 1, 1)), (label,))


def zero_algebra(dim=1, prefix="z"):
    return FinDimAlgebra.from_mult(np.zeros((dim,) * 3),
                                   tuple(f"{prefix}{i}" for i in range(dim)))


def pointwise_algebra(dim=2):
    c = np.zeros((dim,) * 3)
    for i in range(dim):
        c[i, i, i] = 1.0
    return FinDimAlgebra.from_mult(c)


@pytest.fixture
def zero_pair():
    a = zero_algebra(1, "a")
    f = zero_algebra(1, "f")
    return a, f, BimoduleAction.zero(1, 1)


@pytest.fixture
def lau_unital():
    a = scalar_algebra("e")
    f = scalar_algebra("f")
    return canonical_construction("lau", a=a, f=f, theta=np.array([1.0]))


@pytest.fixture
def module_extension():
    f = scalar_algebra("f")
    eye = np.ones((1, 1, 1))
    return canonical_construction("module_extension", f=f, left=eye, right=eye,
                                  labels=("x",))


@pytest.fixture
def triangular():
    corner_a = scalar_algebra("p")
    corner_b = scalar_algebra("q")
    eye = np.ones((1, 1, 1))
    return canonical_construction("triangular", corner_a=corner_a,
                                  corner_b=corner_b, m_left=eye, m_right=eye)
