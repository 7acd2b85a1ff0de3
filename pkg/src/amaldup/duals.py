"""Dual bimodule towers, Arens products and topological centres.

Everything here works in coordinates with the bilinear pairing
``<x', x> = sum_i x'_i x_i``, under which the n-th dual of C^d is C^d
again and dualizing an operator is a plain (unconjugated) transpose.

A bilinear map ``m: X x Y -> Z`` is a 3-tensor ``m[a, b, c]``.  Its two
extension adjoints are pure axis permutations:

    first_adjoint(m):  Z' x X -> Y'   <m*(z', x), y> = <z', m(x, y)>
    second_adjoint(m): Y x Z' -> X'   <m~(y, z'), x> = <z', m(x, y)>

Iterating ``first_adjoint`` three times on a multiplication tensor is the
literal three-step construction of the first extended product on the
second dual; ``second_adjoint`` gives the second one.  Both return to the
original tensor, which is the coordinate form of reflexivity: the two
extended products coincide in finite dimension, and the tests pin that
down to 1e-10.

The same permutations drive the dual tower of a bimodule,

    L_{n+1}(c) = R_n(c)^T,   R_{n+1}(c) = L_n(c)^T,

and the blockwise tower of a duplication, whose mixing blocks swap sides
with the parity of the level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BimoduleAction, FinDimAlgebra, duplicate
from .errors import ArensDefect, InternalInconsistency
from .linalg import (DEFAULT_TOL, Subspace, as_cvector, rank_nullspace,
                     subspace_equal, subspace_intersect)

_CONSISTENCY_TOL = 1e-10


def first_adjoint(tensor: np.ndarray) -> np.ndarray:
    return np.transpose(tensor, (2, 0, 1))


def second_adjoint(tensor: np.ndarray) -> np.ndarray:
    return np.transpose(tensor, (1, 2, 0))


@dataclass(frozen=True)
class DualBimodule:
    """Operator families of an algebra acting on the n-th dual of a module."""

    level: int
    left_ops: np.ndarray = field(repr=False)   # (alg_dim, d, d), op of e_i
    right_ops: np.ndarray = field(repr=False)
    convention: str = "first"

    @property
    def module_dim(self) -> int:
        return self.left_ops.shape[1]

    def raised(self) -> "DualBimodule":
        return DualBimodule(self.level + 1,
                            np.transpose(self.right_ops, (0, 2, 1)),
                            np.transpose(self.left_ops, (0, 2, 1)),
                            self.convention)


def algebra_bimodule(alg: FinDimAlgebra, convention: str = "first") -> DualBimodule:
    """The algebra acting on itself (level 0)."""
    left = np.transpose(alg.mult, (0, 2, 1))   # L(e_i)[k, j] = mult[i, j, k]
    right = np.transpose(alg.mult, (1, 2, 0))  # R(e_j)[k, i] = mult[i, j, k]
    return DualBimodule(0, left, right, convention)


def nth_dual_bimodule(alg: FinDimAlgebra, n: int,
                      convention: str = "first") -> DualBimodule:
    """Action operators on the n-th dual, by the transpose recursion.

    The ``convention`` tag records which extended product the caller pairs
    this with; the canonical recursion itself does not depend on it.
    """
    if n < 0:
        raise ValueError("dual level must be nonnegative")
    bim = algebra_bimodule(alg, convention)
    for _ in range(n):
        bim = bim.raised()
    return bim


@dataclass(frozen=True)
class ArensStructure:
    """Extended products on the second dual plus extended actions, if any."""

    first: np.ndarray = field(repr=False)
    second: np.ndarray = field(repr=False)
    bullet: BimoduleAction | None = None
    blacktriangle: BimoduleAction | None = None


def arens_products(alg: FinDimAlgebra, tol: float = _CONSISTENCY_TOL) -> ArensStructure:
    """Both three-step extended products on the second dual.

    Each is evaluated literally by iterating its adjoint three times, and
    both are asserted equal to the original multiplication tensor (the
    finite-dimensional collapse); disagreement raises :class:`ArensDefect`
    and indicates a bug, not a property of the input.
    """
    m = alg.mult
    first = first_adjoint(first_adjoint(first_adjoint(m)))
    second = second_adjoint(second_adjoint(second_adjoint(m)))
    d1 = float(np.max(np.abs(first - m))) if m.size else 0.0
    d2 = float(np.max(np.abs(second - m))) if m.size else 0.0
    if max(d1, d2) > tol:
        raise ArensDefect(f"extended products differ from the original "
                          f"tensor by {max(d1, d2):.3g}")
    return ArensStructure(first, second)


def arens_action_extensions(a: FinDimAlgebra, f: FinDimAlgebra,
                            act: BimoduleAction,
                            tol: float = _CONSISTENCY_TOL) -> ArensStructure:
    """Extended products together with both extended actions on second duals.

    The first-convention extension of the right action sends
    ``A'' x F'' -> A''`` and of the left action ``F'' x A'' -> A''``; the
    second-convention ones likewise.  All four are computed by literal
    triple adjoints and verified to collapse onto the original tensors.
    """
    base = arens_products(duplicate(a, f, act, validate=False), tol)
    bullet = BimoduleAction(
        first_adjoint(first_adjoint(first_adjoint(act.left))),
        first_adjoint(first_adjoint(first_adjoint(act.right))))
    black = BimoduleAction(
        second_adjoint(second_adjoint(second_adjoint(act.left))),
        second_adjoint(second_adjoint(second_adjoint(act.right))))
    defect = max(
        float(np.max(np.abs(bullet.left - act.left))) if act.left.size else 0.0,
        float(np.max(np.abs(bullet.right - act.right))) if act.right.size else 0.0,
        float(np.max(np.abs(black.left - act.left))) if act.left.size else 0.0,
        float(np.max(np.abs(black.right - act.right))) if act.right.size else 0.0)
    if defect > tol:
        raise ArensDefect(f"extended actions differ from the originals by {defect:.3g}")
    return ArensStructure(base.first, base.second, bullet, black)


def second_dual_duplication_defect(a: FinDimAlgebra, f: FinDimAlgebra,
                                   act: BimoduleAction) -> float:
    """Gap between the dup's extended product and the dup of the extensions."""
    dup = duplicate(a, f, act, validate=False)
    direct = arens_products(dup).first
    ext = arens_action_extensions(a, f, act)
    a2 = FinDimAlgebra.from_mult(arens_products(a).first, a.labels, detect_unit=False)
    f2 = FinDimAlgebra.from_mult(arens_products(f).first, f.labels, detect_unit=False)
    assembled = duplicate(a2, f2, ext.bullet, validate=False)
    return float(np.max(np.abs(direct - assembled.mult)))


# ---------------------------------------------------------------------------
# blockwise dual tower of a duplication


@dataclass(frozen=True)
class DualActionBlocks:
    """All operator families of the level-n dual structure of a duplication.

    ``a_left/a_right`` and ``f_left/f_right`` are the factors' own towers.
    ``act_left/act_right`` are F acting on the n-th dual of A.  The mixing
    families are indexed by A-basis elements and swap shape with parity:
    at even levels they map F-dual to A-dual (``(da, da, df)``), at odd
    levels A-dual to F-dual (``(da, df, da)``).
    """

    level: int
    a_left: np.ndarray = field(repr=False)
    a_right: np.ndarray = field(repr=False)
    f_left: np.ndarray = field(repr=False)
    f_right: np.ndarray = field(repr=False)
    act_left: np.ndarray = field(repr=False)
    act_right: np.ndarray = field(repr=False)
    mix_left: np.ndarray = field(repr=False)
    mix_right: np.ndarray = field(repr=False)

    @property
    def parity(self) -> str:
        return "even" if self.level % 2 == 0 else "odd"

    @staticmethod
    def level0(a: FinDimAlgebra, f: FinDimAlgebra,
               act: BimoduleAction) -> "DualActionBlocks":
        return DualActionBlocks(
            level=0,
            a_left=np.transpose(a.mult, (0, 2, 1)),
            a_right=np.transpose(a.mult, (1, 2, 0)),
            f_left=np.transpose(f.mult, (0, 2, 1)),
            f_right=np.transpose(f.mult, (1, 2, 0)),
            act_left=np.transpose(act.left, (0, 2, 1)),
            act_right=np.transpose(act.right, (1, 2, 0)),
            mix_left=np.transpose(act.right, (0, 2, 1)),   # a acting on F-dual
            mix_right=np.transpose(act.left, (1, 2, 0)))

    def raised(self) -> "DualActionBlocks":
        t = lambda fam: np.transpose(fam, (0, 2, 1))
        return DualActionBlocks(
            level=self.level + 1,
            a_left=t(self.a_right), a_right=t(self.a_left),
            f_left=t(self.f_right), f_right=t(self.f_left),
            act_left=t(self.act_right), act_right=t(self.act_left),
            mix_left=t(self.mix_right), mix_right=t(self.mix_left))


def duplication_dual_blocks(a: FinDimAlgebra, f: FinDimAlgebra,
                            act: BimoduleAction, n: int) -> DualActionBlocks:
    blocks = DualActionBlocks.level0(a, f, act)
    for _ in range(n):
        blocks = blocks.raised()
    return blocks


def assemble_duplication_dual(blocks: DualActionBlocks) -> DualBimodule:
    """Glue the block families into operators on the duplication's dual."""
    da = blocks.a_left.shape[0]
    df = blocks.f_left.shape[0]
    n = da + df
    left = np.zeros((n, n, n), dtype=complex)
    right = np.zeros((n, n, n), dtype=complex)
    even = blocks.level % 2 == 0
    for j in range(da):
        left[j, :da, :da] = blocks.a_left[j]
        right[j, :da, :da] = blocks.a_right[j]
        if even:
            left[j, :da, da:] = blocks.mix_left[j]
            right[j, :da, da:] = blocks.mix_right[j]
        else:
            left[j, da:, :da] = blocks.mix_left[j]
            right[j, da:, :da] = blocks.mix_right[j]
    for p in range(df):
        left[da + p, :da, :da] = blocks.act_left[p]
        right[da + p, :da, :da] = blocks.act_right[p]
        left[da + p, da:, da:] = blocks.f_left[p]
        right[da + p, da:, da:] = blocks.f_right[p]
    return DualBimodule(blocks.level, left, right)


def duplication_nth_dual(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                         n: int, tol: float = _CONSISTENCY_TOL) -> DualBimodule:
    """Level-n dual bimodule of the duplication, built blockwise.

    Cross-checked against the generic transpose recursion applied to the
    assembled duplication; a mismatch raises InternalInconsistency.
    """
    assembled = assemble_duplication_dual(duplication_dual_blocks(a, f, act, n))
    generic = nth_dual_bimodule(duplicate(a, f, act, validate=False), n)
    defect = max(float(np.max(np.abs(assembled.left_ops - generic.left_ops))),
                 float(np.max(np.abs(assembled.right_ops - generic.right_ops))))
    if defect > tol:
        raise InternalInconsistency(
            f"blockwise dual structure deviates from the recursion by {defect:.3g}")
    return assembled


# ---------------------------------------------------------------------------
# topological centres, embedding, essentiality


def _centre_of_difference(diff: np.ndarray, over: str,
                          tol: float) -> Subspace:
    """Nullspace of a tensor contracted against its first or second slot.

    A difference tensor below tol in absolute size counts as zero; the
    relative rank threshold would otherwise promote float noise to rank.
    """
    dim = diff.shape[0] if over == "first" else diff.shape[1]
    if diff.size == 0 or float(np.max(np.abs(diff))) <= tol:
        return Subspace.full(dim, tol)
    if over == "first":
        system = np.transpose(diff, (1, 2, 0)).reshape(-1, dim)
    else:
        system = np.transpose(diff, (0, 2, 1)).reshape(-1, dim)
    _, null = rank_nullspace(system, tol)
    return null


def topological_centres(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                        tol: float = DEFAULT_TOL) -> dict[str, Subspace]:
    """All five centres, plus a consistency check of the product formula.

    Each centre is the solution set of ``z * w = z (*') w`` for the two
    extended products or actions; in finite dimension the extensions
    coincide, so every centre is full and the check validates that the
    assembled formulas agree, not any genuine irregularity.
    """
    dup = duplicate(a, f, act, validate=False)
    ext = arens_action_extensions(a, f, act)

    def centre(alg: FinDimAlgebra) -> Subspace:
        st = arens_products(alg)
        return _centre_of_difference(st.first - st.second, "first", tol)

    zt_dup = centre(dup)
    zt_a = centre(a)
    zt_f = centre(f)
    z_f_on_a = _centre_of_difference(ext.bullet.right - ext.blacktriangle.right,
                                     "first", tol)
    z_a_on_f = _centre_of_difference(ext.bullet.left - ext.blacktriangle.left,
                                     "first", tol)

    left_block = subspace_intersect(zt_a, z_f_on_a)
    right_block = subspace_intersect(zt_f, z_a_on_f)
    product = _block_product(left_block, right_block)
    if not subspace_equal(zt_dup, product, 10 * tol):
        raise InternalInconsistency("centre product formula fails")
    return {"Zt_dup": zt_dup, "Zt_A": zt_a, "Zt_F": zt_f,
            "Z_F_on_A": z_f_on_a, "Z_A_on_F": z_a_on_f}


def _block_product(s1: Subspace, s2: Subspace) -> Subspace:
    da, df = s1.ambient_dim, s2.ambient_dim
    basis = np.zeros((da + df, s1.dim + s2.dim), dtype=complex)
    basis[:da, :s1.dim] = s1.basis
    basis[da:, s1.dim:] = s2.basis
    return Subspace(da + df, basis, s1.tol)


def canonical_embedding(alg: FinDimAlgebra, x) -> np.ndarray:
    """Embedding into the second dual; the identity on coordinates."""
    return as_cvector(x, alg.dim).copy()


def essentiality(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                 n: int, mode: str = "algebra_left",
                 tol: float = DEFAULT_TOL) -> bool:
    """Whether basis actions span the full n-th dual of A.

    Modes: ``algebra_left``/``algebra_right`` use A's own dual actions
    (the hypotheses of the odd-level sufficiency result, with even n);
    ``action_left``/``action_right`` use F's dual actions on A.
    """
    blocks = duplication_dual_blocks(a, f, act, n)
    fam = {"algebra_left": blocks.a_left, "algebra_right": blocks.a_right,
           "action_left": blocks.act_left, "action_right": blocks.act_right}
    try:
        ops = fam[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None
    da = a.dim
    vectors = np.transpose(ops, (1, 0, 2)).reshape(da, -1)
    rank, _ = rank_nullspace(vectors.T, tol)
    return rank == da
