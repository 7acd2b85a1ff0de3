"""Derivations into dual towers, cohomology, and amenability predicates.

A derivation ``D`` from an algebra into a bimodule X is stored as a
matrix ``(dim X, dim alg)`` with columns ``D(e_i)``; its vectorization is
row-major.  Z1, the inner space B1, and the cyclic subspace at level one
are all single nullspace or span computations.

On a duplication, a derivation into the level-n dual splits into four
blocks whose characterizing identities depend on the parity of n; the
identities are assembled from the blockwise dual tower both as residual
checks (:func:`decompose_derivation`) and as an independent linear
system whose solution dimension must equal ``dim Z1`` of the duplication
(:func:`derivation_quadruple_space`).

Weak amenability at level n means H1 into the n-th dual vanishes;
cyclic amenability means every cyclic derivation into the first dual is
inner.  The quotient for the cyclic group uses ``B1 intersect Z1_cyclic``
as denominator, since inner derivations need not be cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BimoduleAction, FinDimAlgebra, duplicate, span_products
from .duals import (DualActionBlocks, DualBimodule, duplication_dual_blocks,
                    duplication_nth_dual, essentiality, nth_dual_bimodule)
from .errors import DecompositionDefect, HypothesisNotMet, UnitRequired
from .linalg import (DEFAULT_TOL, Subspace, rank_nullspace, solve_affine,
                     subspace_intersect)


# ---------------------------------------------------------------------------
# generic derivation machinery


def derivation_constraints(mult: np.ndarray, bim: DualBimodule) -> np.ndarray:
    """Leibniz constraint matrix over vec(D), rows for every basis pair."""
    n = mult.shape[0]
    dx = bim.module_dim
    eye = np.eye(n)
    blocks = []
    for i in range(n):
        for j in range(n):
            block = np.kron(np.eye(dx), mult[i, j][None, :])
            block = block - np.kron(bim.right_ops[j], eye[i][None, :])
            block = block - np.kron(bim.left_ops[i], eye[j][None, :])
            blocks.append(block)
    return np.vstack(blocks) if blocks else np.zeros((0, dx * n))


def derivation_space(alg: FinDimAlgebra, bim: DualBimodule,
                     tol: float = DEFAULT_TOL) -> Subspace:
    """All derivations of the algebra into the bimodule, as vec'd matrices."""
    _, null = rank_nullspace(derivation_constraints(alg.mult, bim), tol)
    return null


def derivation_defect(mult: np.ndarray, bim: DualBimodule, d: np.ndarray) -> float:
    """Worst Leibniz residual of a candidate derivation matrix."""
    n = mult.shape[0]
    worst = 0.0
    for i in range(n):
        for j in range(n):
            resid = d @ mult[i, j] - bim.right_ops[j] @ d[:, i] \
                - bim.left_ops[i] @ d[:, j]
            worst = max(worst, float(np.max(np.abs(resid))) if resid.size else 0.0)
    return worst


def inner_derivation(bim: DualBimodule, x: np.ndarray) -> np.ndarray:
    """The matrix of ``c -> c.x - x.c``."""
    return np.einsum("ckm,m->kc", bim.left_ops - bim.right_ops, x)


def inner_space(alg: FinDimAlgebra, bim: DualBimodule,
                tol: float = DEFAULT_TOL) -> Subspace:
    vectors = [inner_derivation(bim, e).reshape(-1)
               for e in np.eye(bim.module_dim)]
    return Subspace.from_spanning(vectors, bim.module_dim * alg.dim, tol)


def _antisymmetry_rows(n: int) -> np.ndarray:
    """Rows expressing D[i, j] + D[j, i] = 0 over vec(D) for square D."""
    rows = []
    for i in range(n):
        for j in range(i, n):
            r = np.zeros(n * n)
            r[i * n + j] += 1.0
            r[j * n + i] += 1.0
            rows.append(r)
    return np.vstack(rows)


def cyclic_derivation_space(alg: FinDimAlgebra, tol: float = DEFAULT_TOL) -> Subspace:
    """Derivations into the first dual with antisymmetric pairing matrix."""
    bim = nth_dual_bimodule(alg, 1)
    system = np.vstack([derivation_constraints(alg.mult, bim),
                        _antisymmetry_rows(alg.dim)])
    _, null = rank_nullspace(system, tol)
    return null


@dataclass(frozen=True)
class CohomologyReport:
    level: int
    dim_z1: int
    dim_b1: int
    dim_h1: int
    dim_z1_cyclic: int | None = None
    dim_h1_cyclic: int | None = None

    @property
    def weakly_amenable(self) -> bool:
        return self.dim_h1 == 0

    @property
    def cyclically_amenable(self) -> bool | None:
        return None if self.dim_h1_cyclic is None else self.dim_h1_cyclic == 0


def cohomology(alg: FinDimAlgebra, n: int, convention: str = "first",
               tol: float = DEFAULT_TOL) -> CohomologyReport:
    """Dimensions of Z1, B1 and H1 into the n-th dual (cyclic ones at n=1)."""
    bim = nth_dual_bimodule(alg, n, convention)
    z1 = derivation_space(alg, bim, tol)
    b1 = inner_space(alg, bim, tol)
    h1 = z1.dim - subspace_intersect(b1, z1, tol).dim
    z1c_dim = h1c = None
    if n == 1:
        z1c = cyclic_derivation_space(alg, tol)
        z1c_dim = z1c.dim
        h1c = z1c.dim - subspace_intersect(b1, z1c, tol).dim
    return CohomologyReport(n, z1.dim, b1.dim, h1, z1c_dim, h1c)


# ---------------------------------------------------------------------------
# block structure on a duplication


@dataclass(frozen=True)
class DerivationQuadruple:
    """Blocks of a derivation of a duplication into its level-n dual.

    ``d1_a: A -> A^(n)``, ``d1_f: F -> A^(n)``, ``d2_a: A -> F^(n)``,
    ``d2_f: F -> F^(n)``; ``parity`` records which identity set applies.
    """

    d1_a: np.ndarray = field(repr=False)
    d1_f: np.ndarray = field(repr=False)
    d2_a: np.ndarray = field(repr=False)
    d2_f: np.ndarray = field(repr=False)
    level: int = 1

    @property
    def parity(self) -> str:
        return "even" if self.level % 2 == 0 else "odd"

    def assemble(self) -> np.ndarray:
        da = self.d1_a.shape[0]
        df = self.d2_f.shape[0]
        out = np.zeros((da + df, da + df), dtype=complex)
        out[:da, :da] = self.d1_a
        out[:da, da:] = self.d1_f
        out[da:, :da] = self.d2_a
        out[da:, da:] = self.d2_f
        return out

    @staticmethod
    def split(a_dim: int, d: np.ndarray, level: int) -> "DerivationQuadruple":
        return DerivationQuadruple(d[:a_dim, :a_dim], d[:a_dim, a_dim:],
                                   d[a_dim:, :a_dim], d[a_dim:, a_dim:], level)


def quadruple_condition_defects(a: FinDimAlgebra, f: FinDimAlgebra,
                                act: BimoduleAction, q: DerivationQuadruple
                                ) -> dict[str, float]:
    """Residuals of every identity characterizing derivation quadruples."""
    blocks = duplication_dual_blocks(a, f, act, q.level)
    ca, cf = a.mult, f.mult
    d1a, d1f, d2a, d2f = q.d1_a, q.d1_f, q.d2_a, q.d2_f
    da, df = a.dim, f.dim
    out: dict[str, float] = {}

    def put(name, lhs, rhs):
        out[name] = float(np.max(np.abs(lhs - rhs))) if np.size(lhs) else 0.0

    # shared: the factor blocks derive into their own towers
    put("d1f_leibniz",
        np.einsum("pqm,km->pqk", cf, d1f),
        np.einsum("qkm,mp->pqk", blocks.act_right, d1f)
        + np.einsum("pkm,mq->pqk", blocks.act_left, d1f))
    put("d2f_leibniz",
        np.einsum("pqm,km->pqk", cf, d2f),
        np.einsum("qkm,mp->pqk", blocks.f_right, d2f)
        + np.einsum("pkm,mq->pqk", blocks.f_left, d2f))

    if q.parity == "odd":
        put("d1a_leibniz",
            np.einsum("ijm,km->ijk", ca, d1a),
            np.einsum("jkm,mi->ijk", blocks.a_right, d1a)
            + np.einsum("ikm,mj->ijk", blocks.a_left, d1a))
        put("d1a_left_action",
            np.einsum("pim,km->pik", act.left, d1a),
            np.einsum("ikm,mp->pik", blocks.a_right, d1f)
            + np.einsum("pkm,mi->pik", blocks.act_left, d1a))
        put("d1a_right_action",
            np.einsum("ipm,km->ipk", act.right, d1a),
            np.einsum("ikm,mp->ipk", blocks.a_left, d1f)
            + np.einsum("pkm,mi->ipk", blocks.act_right, d1a))
        put("d2a_left_action",
            np.einsum("pim,km->pik", act.left, d2a),
            np.einsum("ikm,mp->pik", blocks.mix_right, d1f)
            + np.einsum("pkm,mi->pik", blocks.f_left, d2a))
        put("d2a_right_action",
            np.einsum("ipm,km->ipk", act.right, d2a),
            np.einsum("ikm,mp->ipk", blocks.mix_left, d1f)
            + np.einsum("pkm,mi->ipk", blocks.f_right, d2a))
        put("d2a_products",
            np.einsum("ijm,km->ijk", ca, d2a),
            np.einsum("jkm,mi->ijk", blocks.mix_right, d1a)
            + np.einsum("ikm,mj->ijk", blocks.mix_left, d1a))
    else:
        put("d1a_leibniz",
            np.einsum("ijm,km->ijk", ca, d1a),
            np.einsum("jkm,mi->ijk", blocks.a_right, d1a)
            + np.einsum("jkm,mi->ijk", blocks.mix_right, d2a)
            + np.einsum("ikm,mj->ijk", blocks.a_left, d1a)
            + np.einsum("ikm,mj->ijk", blocks.mix_left, d2a))
        put("d1a_left_action",
            np.einsum("pim,km->pik", act.left, d1a),
            np.einsum("ikm,mp->pik", blocks.a_right, d1f)
            + np.einsum("ikm,mp->pik", blocks.mix_right, d2f)
            + np.einsum("pkm,mi->pik", blocks.act_left, d1a))
        put("d1a_right_action",
            np.einsum("ipm,km->ipk", act.right, d1a),
            np.einsum("ikm,mp->ipk", blocks.a_left, d1f)
            + np.einsum("ikm,mp->ipk", blocks.mix_left, d2f)
            + np.einsum("pkm,mi->ipk", blocks.act_right, d1a))
        out["d2a_products"] = float(np.max(np.abs(
            np.einsum("ijm,km->ijk", ca, d2a)))) if ca.size else 0.0
        put("d2a_left_module",
            np.einsum("pim,km->pik", act.left, d2a),
            np.einsum("pkm,mi->pik", blocks.f_left, d2a))
        put("d2a_right_module",
            np.einsum("ipm,km->ipk", act.right, d2a),
            np.einsum("pkm,mi->ipk", blocks.f_right, d2a))
    return out


def decompose_derivation(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                         d: np.ndarray, n: int, tol: float = DEFAULT_TOL
                         ) -> DerivationQuadruple:
    """Blocks of a derivation into the level-n dual, identities verified."""
    d = np.asarray(d, dtype=complex)
    q = DerivationQuadruple.split(a.dim, d, n)
    defects = quadruple_condition_defects(a, f, act, q)
    worst = max(defects.values()) if defects else 0.0
    scale = max(1.0, float(np.max(np.abs(d))) if d.size else 1.0)
    if worst > 10 * tol * scale:
        bad = max(defects, key=defects.get)
        raise DecompositionDefect(
            f"derivation block identity {bad!r} fails with defect {worst:.3g}")
    return q


def derivation_quadruple_space(a: FinDimAlgebra, f: FinDimAlgebra,
                               act: BimoduleAction, n: int,
                               tol: float = DEFAULT_TOL) -> Subspace:
    """Solutions of the block identities, independent of the direct Z1.

    Coordinates are ``vec(D1A) + vec(D1F) + vec(D2A) + vec(D2F)``; the
    dimension equals ``dim Z1(duplication, level n)`` when both the block
    identities and the direct Leibniz computation are right.
    """
    blocks = duplication_dual_blocks(a, f, act, n)
    ca, cf = a.mult, f.mult
    da, df = a.dim, f.dim
    sizes = [da * da, da * df, df * da, df * df]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    rows: list[np.ndarray] = []
    eye_a, eye_f = np.eye(da), np.eye(df)

    def fn(slot, out_vec, in_vec):
        r = np.zeros(offs[-1], dtype=complex)
        r[offs[slot]:offs[slot + 1]] = np.outer(out_vec, in_vec).reshape(-1)
        return r

    odd = n % 2 == 1
    # D1F and D2F derive into their towers (all parities)
    for p in range(df):
        for qq in range(df):
            for k in range(da):
                rows.append(fn(1, eye_a[k], cf[p, qq])
                            - fn(1, blocks.act_right[qq][k], eye_f[p])
                            - fn(1, blocks.act_left[p][k], eye_f[qq]))
            for k in range(df):
                rows.append(fn(3, eye_f[k], cf[p, qq])
                            - fn(3, blocks.f_right[qq][k], eye_f[p])
                            - fn(3, blocks.f_left[p][k], eye_f[qq]))
    if odd:
        for i in range(da):
            for j in range(da):
                for k in range(da):  # D1A Leibniz
                    rows.append(fn(0, eye_a[k], ca[i, j])
                                - fn(0, blocks.a_right[j][k], eye_a[i])
                                - fn(0, blocks.a_left[i][k], eye_a[j]))
                for k in range(df):  # D2A on products
                    rows.append(fn(2, eye_f[k], ca[i, j])
                                - fn(0, blocks.mix_right[j][k], eye_a[i])
                                - fn(0, blocks.mix_left[i][k], eye_a[j]))
        for p in range(df):
            for i in range(da):
                for k in range(da):
                    rows.append(fn(0, eye_a[k], act.left[p, i])
                                - fn(1, blocks.a_right[i][k], eye_f[p])
                                - fn(0, blocks.act_left[p][k], eye_a[i]))
                    rows.append(fn(0, eye_a[k], act.right[i, p])
                                - fn(1, blocks.a_left[i][k], eye_f[p])
                                - fn(0, blocks.act_right[p][k], eye_a[i]))
                for k in range(df):
                    rows.append(fn(2, eye_f[k], act.left[p, i])
                                - fn(1, blocks.mix_right[i][k], eye_f[p])
                                - fn(2, blocks.f_left[p][k], eye_a[i]))
                    rows.append(fn(2, eye_f[k], act.right[i, p])
                                - fn(1, blocks.mix_left[i][k], eye_f[p])
                                - fn(2, blocks.f_right[p][k], eye_a[i]))
    else:
        for i in range(da):
            for j in range(da):
                for k in range(da):  # D1A mixed Leibniz
                    rows.append(fn(0, eye_a[k], ca[i, j])
                                - fn(0, blocks.a_right[j][k], eye_a[i])
                                - fn(2, blocks.mix_right[j][k], eye_a[i])
                                - fn(0, blocks.a_left[i][k], eye_a[j])
                                - fn(2, blocks.mix_left[i][k], eye_a[j]))
                for k in range(df):  # D2A kills products
                    rows.append(fn(2, eye_f[k], ca[i, j]))
        for p in range(df):
            for i in range(da):
                for k in range(da):
                    rows.append(fn(0, eye_a[k], act.left[p, i])
                                - fn(1, blocks.a_right[i][k], eye_f[p])
                                - fn(3, blocks.mix_right[i][k], eye_f[p])
                                - fn(0, blocks.act_left[p][k], eye_a[i]))
                    rows.append(fn(0, eye_a[k], act.right[i, p])
                                - fn(1, blocks.a_left[i][k], eye_f[p])
                                - fn(3, blocks.mix_left[i][k], eye_f[p])
                                - fn(0, blocks.act_right[p][k], eye_a[i]))
                for k in range(df):  # D2A is a bimodule map
                    rows.append(fn(2, eye_f[k], act.left[p, i])
                                - fn(2, blocks.f_left[p][k], eye_a[i]))
                    rows.append(fn(2, eye_f[k], act.right[i, p])
                                - fn(2, blocks.f_right[p][k], eye_a[i]))
    _, null = rank_nullspace(np.vstack(rows), tol)
    return null


def cyclic_quadruple_space(a: FinDimAlgebra, f: FinDimAlgebra,
                           act: BimoduleAction,
                           tol: float = DEFAULT_TOL) -> Subspace:
    """Level-one quadruples that are blockwise cyclic.

    On top of the odd block identities: the diagonal blocks carry
    antisymmetric pairing matrices and the off-diagonal blocks balance
    transposedly.  The solution dimension must equal the dimension of
    the cyclic derivation space of the duplication.
    """
    da, df = a.dim, f.dim
    sizes = [da * da, da * df, df * da, df * df]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    rows = [np.zeros((0, offs[-1]))]

    def unit_row(slot, out, inp, out_dim, in_dim):
        r = np.zeros(offs[-1])
        r[offs[slot] + out * in_dim + inp] = 1.0
        return r

    for i in range(da):
        for j in range(i, da):  # D1A pairing antisymmetric
            rows.append(unit_row(0, i, j, da, da) + unit_row(0, j, i, da, da))
    for p in range(df):
        for qq in range(p, df):  # D2F pairing antisymmetric
            rows.append(unit_row(3, p, qq, df, df) + unit_row(3, qq, p, df, df))
    for k in range(da):
        for p in range(df):  # D1F = -(D2A transposed)
            rows.append(unit_row(1, k, p, da, df) + unit_row(2, p, k, df, da))
    base = derivation_quadruple_space(a, f, act, 1, tol)
    system = np.vstack([np.vstack(rows),
                        np.eye(offs[-1]) - base.projector()])
    _, null = rank_nullspace(system, tol)
    return null


def quadruple_from_coords(a_dim: int, f_dim: int, coords,
                          level: int) -> DerivationQuadruple:
    sizes = [a_dim * a_dim, a_dim * f_dim, f_dim * a_dim, f_dim * f_dim]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    coords = np.asarray(coords, dtype=complex).reshape(-1)
    return DerivationQuadruple(
        coords[offs[0]:offs[1]].reshape(a_dim, a_dim),
        coords[offs[1]:offs[2]].reshape(a_dim, f_dim),
        coords[offs[2]:offs[3]].reshape(f_dim, a_dim),
        coords[offs[3]:offs[4]].reshape(f_dim, f_dim), level)


def is_inner_match(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                   q: DerivationQuadruple, tol: float = DEFAULT_TOL
                   ) -> tuple[np.ndarray, np.ndarray] | None:
    """Witness ``(x, phi)`` in the level-n dual with blockwise ad = q, or None.

    The characterizing identities are linear in the witness pair; they are
    solved jointly, and the residual certificate of the solver decides
    innerness.
    """
    blocks = duplication_dual_blocks(a, f, act, q.level)
    da, df = a.dim, f.dim
    rows: list[np.ndarray] = []
    rhs: list[complex] = []

    def eq(coeff_x: np.ndarray, coeff_phi: np.ndarray, value: np.ndarray):
        for k in range(value.size):
            rows.append(np.concatenate([coeff_x[k], coeff_phi[k]]))
            rhs.append(value[k])

    zero_xf = np.zeros((df, da))
    zero_pa = np.zeros((da, df))
    zero_pf = np.zeros((df, df))
    if q.parity == "odd":
        for i in range(da):
            eq(blocks.a_left[i] - blocks.a_right[i], zero_pa, q.d1_a[:, i])
            eq(blocks.mix_left[i] - blocks.mix_right[i], zero_pf, q.d2_a[:, i])
        for p in range(df):
            eq(blocks.act_left[p] - blocks.act_right[p], zero_pa, q.d1_f[:, p])
            eq(zero_xf, blocks.f_left[p] - blocks.f_right[p], q.d2_f[:, p])
    else:
        if q.d2_a.size and float(np.max(np.abs(q.d2_a))) > 10 * tol:
            return None
        for i in range(da):
            eq(blocks.a_left[i] - blocks.a_right[i],
               blocks.mix_left[i] - blocks.mix_right[i], q.d1_a[:, i])
        for p in range(df):
            eq(blocks.act_left[p] - blocks.act_right[p], zero_pa, q.d1_f[:, p])
            eq(zero_xf, blocks.f_left[p] - blocks.f_right[p], q.d2_f[:, p])
    solution = solve_affine(np.vstack(rows), np.array(rhs), tol)
    if solution is None:
        return None
    return solution[:da], solution[da:]


@dataclass(frozen=True)
class AugmentedDerivationReport:
    is_derivation: bool
    derivation_defect: float
    inner_witness: np.ndarray | None


def corollary_dt_check(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                       t_block: np.ndarray, n: int, tol: float = DEFAULT_TOL
                       ) -> AugmentedDerivationReport:
    """Checks that ``(a, b) -> (0, T(a))`` derives, and whether it is inner.

    ``t_block`` maps A into the level-n dual of F (n odd); it must be a
    left module map vanishing on the span of products, else
    :class:`HypothesisNotMet`.  Innerness needs a witness in A's dual
    that is annihilated by both ad-actions and realizes T.
    """
    if n % 2 == 0:
        raise ValueError("this construction lives at odd dual levels")
    t_block = np.asarray(t_block, dtype=complex)
    blocks = duplication_dual_blocks(a, f, act, n)
    da, df = a.dim, f.dim
    mod_defect = float(np.max(np.abs(
        np.einsum("pim,km->pik", act.left, t_block)
        - np.einsum("pkm,mi->pik", blocks.f_left, t_block)))) if df else 0.0
    prod_defect = float(np.max(np.abs(
        np.einsum("ijm,km->ijk", a.mult, t_block)))) if da else 0.0
    if max(mod_defect, prod_defect) > tol:
        raise HypothesisNotMet(
            f"map is not a module map vanishing on products "
            f"(defects {mod_defect:.3g}, {prod_defect:.3g})")
    d = DerivationQuadruple(np.zeros((da, da)), np.zeros((da, df)),
                            t_block, np.zeros((df, df)), n).assemble()
    dup = duplicate(a, f, act, validate=False)
    bim = duplication_nth_dual(a, f, act, n)
    defect = derivation_defect(dup.mult, bim, d)

    rows: list[np.ndarray] = []
    rhs: list[complex] = []
    for i in range(da):
        rows.extend(blocks.a_left[i] - blocks.a_right[i])
        rhs.extend(np.zeros(da))
        rows.extend(blocks.mix_left[i] - blocks.mix_right[i])
        rhs.extend(t_block[:, i])
    for p in range(df):
        rows.extend(blocks.act_left[p] - blocks.act_right[p])
        rhs.extend(np.zeros(da))
    witness = solve_affine(np.vstack(rows), np.array(rhs), tol)
    return AugmentedDerivationReport(defect <= 10 * tol, defect, witness)


def module_derivation_space(a: FinDimAlgebra, f: FinDimAlgebra,
                            act: BimoduleAction, n: int,
                            tol: float = DEFAULT_TOL) -> Subspace:
    """Derivations A -> A^(n) commuting with the F-action (n even)."""
    if n % 2 == 1:
        raise ValueError("module derivations live at even dual levels")
    blocks = duplication_dual_blocks(a, f, act, n)
    da, df = a.dim, f.dim
    a_bim = DualBimodule(n, blocks.a_left, blocks.a_right)
    parts = [derivation_constraints(a.mult, a_bim)]
    eye_a = np.eye(da)
    extra = []
    for p in range(df):
        for i in range(da):
            lhs = np.kron(np.eye(da), act.left[p, i][None, :]) \
                - np.kron(blocks.act_left[p], eye_a[i][None, :])
            rhs = np.kron(np.eye(da), act.right[i, p][None, :]) \
                - np.kron(blocks.act_right[p], eye_a[i][None, :])
            extra.extend([lhs, rhs])
    if extra:
        parts.append(np.vstack(extra))
    _, null = rank_nullspace(np.vstack(parts), tol)
    return null


@dataclass(frozen=True)
class UnitalFormReport:
    level: int
    checked: int
    max_defect: float
    passed: bool


def unital_form_check(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                      n: int, tol: float = DEFAULT_TOL) -> UnitalFormReport:
    """With A unital, the off-diagonal blocks are determined by D1A (odd n)
    or vanish against D2F corrections (even n); verified on a Z1 basis."""
    if a.unit is None:
        raise UnitRequired("first factor has no unit")
    e = a.unit
    blocks = duplication_dual_blocks(a, f, act, n)
    mix_l = np.einsum("i,ikm->km", e, blocks.mix_left)
    mix_r = np.einsum("i,ikm->km", e, blocks.mix_right)
    dup = duplicate(a, f, act, validate=False)
    bim = duplication_nth_dual(a, f, act, n)
    space = derivation_space(dup, bim, tol)
    worst = 0.0
    da, df = a.dim, f.dim
    for col in range(space.dim):
        d = space.basis[:, col].reshape(dup.dim, dup.dim)
        q = DerivationQuadruple.split(da, d, n)
        for p in range(df):
            e_dot_b = act.right_act(e, np.eye(df)[p])
            b_dot_e = act.left_act(np.eye(df)[p], e)
            if n % 2 == 1:
                worst = max(worst, _gap(q.d1_f[:, p], q.d1_a @ e_dot_b))
                worst = max(worst, _gap(q.d1_f[:, p], q.d1_a @ b_dot_e))
            else:
                worst = max(worst, _gap(q.d1_f[:, p],
                                        q.d1_a @ e_dot_b - mix_r @ q.d2_f[:, p]))
                worst = max(worst, _gap(q.d1_f[:, p],
                                        q.d1_a @ b_dot_e - mix_l @ q.d2_f[:, p]))
        for i in range(da):
            if n % 2 == 1:
                worst = max(worst, _gap(q.d2_a[:, i], mix_r @ q.d1_a[:, i]))
                worst = max(worst, _gap(q.d2_a[:, i], mix_l @ q.d1_a[:, i]))
            else:
                worst = max(worst, float(np.max(np.abs(q.d2_a[:, i])))
                            if q.d2_a.size else 0.0)
    return UnitalFormReport(n, space.dim, worst, worst <= 100 * tol)


def _gap(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.max(np.abs(x - y))) if np.size(x) else 0.0


def property_h(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
               n: int = 0, tol: float = DEFAULT_TOL) -> bool:
    """Whether every derivation of A into its (2n+1)-th dual extends.

    Extension means a compatible pair (D1F derivation, D2A linear)
    satisfying the odd block identities exists.  The identities are
    linear in D1A, so solvability on a basis of Z1 decides the property.
    """
    level = 2 * n + 1
    blocks = duplication_dual_blocks(a, f, act, level)
    da = a.dim
    a_bim = DualBimodule(level, blocks.a_left, blocks.a_right)
    z1 = derivation_space(a, a_bim, tol)
    system, rhs_of = _extension_system(a, f, act, blocks)
    for col in range(z1.dim):
        d1a = z1.basis[:, col].reshape(da, da)
        if solve_affine(system, rhs_of(d1a), tol) is None:
            return False
    return True


def _extension_system(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                      blocks: DualActionBlocks):
    """Linear system for (D1F, D2A) given D1A, per the odd block identities.

    Returns the coefficient matrix over ``vec(D1F) + vec(D2A)`` and a
    builder mapping a D1A matrix to the right-hand side.
    """
    da, df = a.dim, f.dim
    offs = [0, da * df, da * df + df * da]
    eye_a, eye_f = np.eye(da), np.eye(df)
    rows: list[np.ndarray] = []
    builders = []  # one scalar-valued callable of d1a per row

    def fn(slot, out_vec, in_vec):
        r = np.zeros(offs[-1], dtype=complex)
        r[offs[slot]:offs[slot + 1]] = np.outer(out_vec, in_vec).reshape(-1)
        return r

    zero_rhs = lambda d1a: 0.0
    for p in range(df):
        for qq in range(df):
            for k in range(da):  # D1F Leibniz
                rows.append(fn(0, eye_a[k], f.mult[p, qq])
                            - fn(0, blocks.act_right[qq][k], eye_f[p])
                            - fn(0, blocks.act_left[p][k], eye_f[qq]))
                builders.append(zero_rhs)
    for p in range(df):
        for i in range(da):
            for k in range(da):
                rows.append(fn(0, blocks.a_right[i][k], eye_f[p]))
                builders.append(lambda d1a, p=p, i=i, k=k: complex(
                    (d1a @ act.left[p, i] - blocks.act_left[p] @ d1a[:, i])[k]))
                rows.append(fn(0, blocks.a_left[i][k], eye_f[p]))
                builders.append(lambda d1a, p=p, i=i, k=k: complex(
                    (d1a @ act.right[i, p] - blocks.act_right[p] @ d1a[:, i])[k]))
            for k in range(df):
                rows.append(fn(1, eye_f[k], act.left[p, i])
                            - fn(0, blocks.mix_right[i][k], eye_f[p])
                            - fn(1, blocks.f_left[p][k], eye_a[i]))
                builders.append(zero_rhs)
                rows.append(fn(1, eye_f[k], act.right[i, p])
                            - fn(0, blocks.mix_left[i][k], eye_f[p])
                            - fn(1, blocks.f_right[p][k], eye_a[i]))
                builders.append(zero_rhs)
    for i in range(da):
        for j in range(da):
            for k in range(df):
                rows.append(fn(1, eye_f[k], a.mult[i, j]))
                builders.append(lambda d1a, i=i, j=j, k=k: complex(
                    (blocks.mix_right[j] @ d1a[:, i]
                     + blocks.mix_left[i] @ d1a[:, j])[k]))
    system = np.vstack(rows)

    def rhs_of(d1a: np.ndarray) -> np.ndarray:
        return np.array([b(d1a) for b in builders], dtype=complex)

    return system, rhs_of


def weak_amenability(alg: FinDimAlgebra, n: int, tol: float = DEFAULT_TOL) -> bool:
    return cohomology(alg, n, tol=tol).dim_h1 == 0


def cyclic_amenability(alg: FinDimAlgebra, tol: float = DEFAULT_TOL) -> bool:
    report = cohomology(alg, 1, tol=tol)
    return bool(report.cyclically_amenable)


@dataclass(frozen=True)
class AmenabilityRow:
    level: int
    a_weakly_amenable: bool
    f_weakly_amenable: bool
    dup_weakly_amenable: bool


@dataclass(frozen=True)
class AmenabilityTable:
    rows: tuple
    a_cyclically_amenable: bool
    f_cyclically_amenable: bool
    dup_cyclically_amenable: bool
    a_squares_full: bool
    a_essential_even_levels: dict
    property_h_odd_levels: dict


def amenability_predicates(a: FinDimAlgebra, f: FinDimAlgebra,
                           act: BimoduleAction, n_max: int = 2,
                           tol: float = DEFAULT_TOL) -> AmenabilityTable:
    """Weak amenability per level for both factors and the duplication,
    cyclic amenability for all three, and the audit hypotheses."""
    dup = duplicate(a, f, act, validate=False)
    rows = tuple(
        AmenabilityRow(n, weak_amenability(a, n, tol), weak_amenability(f, n, tol),
                       weak_amenability(dup, n, tol))
        for n in range(n_max + 1))
    return AmenabilityTable(
        rows=rows,
        a_cyclically_amenable=cyclic_amenability(a, tol),
        f_cyclically_amenable=cyclic_amenability(f, tol),
        dup_cyclically_amenable=cyclic_amenability(dup, tol),
        a_squares_full=span_products(a, "squares", tol=tol).dim == a.dim,
        a_essential_even_levels={
            2 * k: essentiality(a, f, act, 2 * k, "algebra_left", tol)
            or essentiality(a, f, act, 2 * k, "algebra_right", tol)
            for k in range((n_max + 1) // 2 + 1)},
        property_h_odd_levels={
            2 * k + 1: property_h(a, f, act, k, tol)
            for k in range((n_max + 1) // 2 + 1)})


def cyclic_quadruple_defects(a: FinDimAlgebra, f: FinDimAlgebra,
                             act: BimoduleAction, q: DerivationQuadruple
                             ) -> dict[str, float]:
    """Extra identities a cyclic derivation's blocks satisfy at level one.

    On top of the odd identities: D1A and D2F antisymmetric, and the
    transposed A-to-F block balancing the F-to-A block.
    """
    base = quadruple_condition_defects(a, f, act, q)
    base["d1a_antisymmetric"] = float(np.max(np.abs(q.d1_a + q.d1_a.T))) \
        if q.d1_a.size else 0.0
    base["d2f_antisymmetric"] = float(np.max(np.abs(q.d2_f + q.d2_f.T))) \
        if q.d2_f.size else 0.0
    base["cross_blocks_balance"] = float(np.max(np.abs(q.d1_f + q.d2_a.T))) \
        if q.d1_f.size else 0.0
    return base
