"""Randomized verification of the structure theorems, at desk scale.

Each audit draws seeded random validated triples and checks one claim:
spectra assemble from the factors, semisimplicity and amenability
transfer as stated, multiplier and derivation spaces match their
block-system dimensions, and maximal ideals agree with a direction
oracle.  A violation is shrunk and serialized into the returned row;
since every claim is a theorem for valid inputs, any failure indicates
an implementation bug rather than a mathematical discovery.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import FinDimAlgebra, duplicate, span_products, validate_algebra
from .bundles import bundle_from_triple, bundle_to_obj
from .derivations import (cyclic_amenability, derivation_quadruple_space,
                          derivation_space, decompose_derivation,
                          inner_derivation, is_inner_match, property_h,
                          weak_amenability)
from .duals import (arens_products, duplication_nth_dual, essentiality,
                    nth_dual_bimodule, second_dual_duplication_defect,
                    topological_centres)
from .errors import InternalInconsistency, SpectrumTheoremViolation
from .ideals import (block_subspace, coset_direction_grid, ideal_generated,
                     is_ideal, is_maximal_left_ideal,
                     maximality_direction_oracle, product_ideal_test,
                     project_components)
from .linalg import DEFAULT_TOL, Subspace, subspace_equal
from .multipliers import (decompose_multiplier, left_multiplier_space,
                          quadruple_space)
from .sampling import (random_left_ideal, random_triple, random_unitary,
                       shrink_triple, _commutative_cores,
                       _noncommutative_cores, _transform_core)
from .spectrum import duplication_spectrum, gelfand_semisimple


@dataclass(frozen=True)
class AuditRow:
    id: str
    status: str               # "pass" or "fail"
    trials: int
    defect: float = 0.0
    witness: dict | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _row(check_id, trials, failures, defect=0.0):
    if failures:
        return AuditRow(check_id, "fail", trials, defect, failures[0])
    return AuditRow(check_id, "pass", trials, defect)


def _witness(a, f, act, recipe, note, shrink_with=None):
    if shrink_with is not None:
        a, f, act, recipe = shrink_triple(a, f, act, recipe, shrink_with)
    bundle = bundle_from_triple(a, f, act, name=f"violation:{note}",
                                recipe=str(recipe))
    return {"note": note, "bundle": bundle_to_obj(bundle)}


def audit_associativity(trials: int = 200, seed: int = 0,
                        tol: float = 1e-10) -> AuditRow:
    """Duplications of validated triples stay associative (bound 1e-10)."""
    rng = np.random.default_rng(seed)
    worst, failures = 0.0, []

    def violated(a, f, act):
        rep = validate_algebra(duplicate(a, f, act, validate=False))
        return rep.associativity_defect > tol

    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        report = validate_algebra(duplicate(a, f, act))
        worst = max(worst, report.associativity_defect)
        if report.associativity_defect > tol:
            failures.append(_witness(a, f, act, recipe, "associativity",
                                     shrink_with=violated))
    return _row("duplication-associativity", trials, failures, worst)


def audit_spectrum(trials: int = 100, seed: int = 0, tol: float = DEFAULT_TOL,
                   match_tol: float = 1e-7) -> list[AuditRow]:
    """Direct spectra match the assembled families; the families are disjoint."""
    rng = np.random.default_rng(seed)
    union_failures, ss_failures = [], []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng, commutative_symmetric=True)
        try:
            duplication_spectrum(a, f, act, tol, seed=0, match_tol=match_tol)
        except SpectrumTheoremViolation as exc:
            union_failures.append(_witness(a, f, act, recipe,
                                           f"spectrum: {exc}"))
            continue
        dup = duplicate(a, f, act)
        transfer = (gelfand_semisimple(a, tol) and gelfand_semisimple(f, tol))
        if gelfand_semisimple(dup, tol) != transfer:
            ss_failures.append(_witness(a, f, act, recipe, "semisimplicity"))
    return [_row("spectrum-union-and-disjoint", trials, union_failures),
            _row("semisimplicity-transfer", trials, ss_failures)]


def audit_arens(trials: int = 50, seed: int = 0, tol: float = 1e-10) -> AuditRow:
    """Both extended products collapse; second duals assemble blockwise."""
    rng = np.random.default_rng(seed)
    worst, failures = 0.0, []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        defect = 0.0
        for alg in (a, f, dup):
            st = arens_products(alg)  # raises ArensDefect beyond 1e-10
            defect = max(defect,
                         float(np.max(np.abs(st.first - alg.mult))),
                         float(np.max(np.abs(st.second - alg.mult))))
        defect = max(defect, second_dual_duplication_defect(a, f, act))
        worst = max(worst, defect)
        if defect > tol:
            failures.append(_witness(a, f, act, recipe, "arens"))
    return _row("arens-collapse-and-second-dual", trials, failures, worst)


def audit_centres(trials: int = 25, seed: int = 0,
                  tol: float = DEFAULT_TOL) -> AuditRow:
    """Centre product formula consistent; all centres full at desk scale."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        try:
            cents = topological_centres(a, f, act, tol)
        except InternalInconsistency as exc:
            failures.append(_witness(a, f, act, recipe, f"centres: {exc}"))
            continue
        if any(s.dim != s.ambient_dim for s in cents.values()):
            failures.append(_witness(a, f, act, recipe, "centre not full"))
    return _row("topological-centre-formula", trials, failures)


def audit_multipliers(trials: int = 100, seed: int = 0,
                      tol: float = DEFAULT_TOL) -> list[AuditRow]:
    """dim LM(dup) equals the block-system dimension; blocks reassemble."""
    rng = np.random.default_rng(seed)
    dim_failures, round_failures = [], []
    worst = 0.0
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        space = left_multiplier_space(dup, tol)
        blockwise = quadruple_space(a, f, act, tol)
        if space.dim != blockwise.dim:
            dim_failures.append(_witness(
                a, f, act, recipe,
                f"dim LM {space.dim} vs quadruples {blockwise.dim}"))
            continue
        for col in range(space.dim):
            t_op = space.basis[:, col].reshape(dup.dim, dup.dim)
            q = decompose_multiplier(a, f, act, t_op, tol)
            gap = float(np.max(np.abs(q.assemble() - t_op)))
            worst = max(worst, gap)
            if gap > 1e-10:
                round_failures.append(_witness(a, f, act, recipe, "roundtrip"))
    return [_row("multiplier-dimension", trials, dim_failures),
            _row("multiplier-roundtrip", trials, round_failures, worst)]


def audit_derivations(trials: int = 50, seed: int = 0, tol: float = DEFAULT_TOL,
                      levels=(0, 1, 2)) -> list[AuditRow]:
    """dim Z1 equals the quadruple dimension; inner witnesses roundtrip."""
    rng = np.random.default_rng(seed)
    dim_failures, inner_failures = [], []
    worst = 0.0
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        for n in levels:
            direct = derivation_space(dup, nth_dual_bimodule(dup, n), tol).dim
            blockwise = derivation_quadruple_space(a, f, act, n, tol).dim
            if direct != blockwise:
                dim_failures.append(_witness(
                    a, f, act, recipe,
                    f"level {n}: Z1 {direct} vs quadruples {blockwise}"))
                continue
            bim = duplication_nth_dual(a, f, act, n)
            w = rng.standard_normal(dup.dim) + 1j * rng.standard_normal(dup.dim)
            d = inner_derivation(bim, w)
            q = decompose_derivation(a, f, act, d, n, tol)
            witness = is_inner_match(a, f, act, q, tol)
            if witness is None:
                inner_failures.append(_witness(a, f, act, recipe,
                                               f"level {n}: ad not matched"))
                continue
            recovered = inner_derivation(bim, np.concatenate(witness))
            gap = float(np.max(np.abs(recovered - d)))
            worst = max(worst, gap)
            if gap > 1e-9:
                inner_failures.append(_witness(a, f, act, recipe,
                                               f"level {n}: witness gap {gap:.3g}"))
    return [_row("derivation-dimension", trials, dim_failures),
            _row("inner-witness-roundtrip", trials, inner_failures, worst)]


def audit_transfers(trials: int = 100, seed: int = 0,
                    tol: float = DEFAULT_TOL) -> list[AuditRow]:
    """Amenability transfer between the factors and the duplication.

    (a) duplication (2n+1)-weakly amenable forces it for F (n in {0,1});
    (b) plus the extension property, for A as well;
    (c) cyclic amenability of both factors with full product span forces
        it for the duplication, and conversely the duplication's cyclic
        amenability forces F's;
    (d) with A unital, n-weak amenability of the duplication is
        equivalent to that of both factors (n <= 2);
    (e) both factors (2n+1)-weakly amenable plus dual essentiality
        forces the duplication (n = 1).
    """
    rng = np.random.default_rng(seed)
    fail = {k: [] for k in "abcde"}

    def v_a(level):
        return lambda a, f, act: (
            weak_amenability(duplicate(a, f, act, validate=False), level, tol)
            and not weak_amenability(f, level, tol))

    def v_b(level, n):
        return lambda a, f, act: (
            weak_amenability(duplicate(a, f, act, validate=False), level, tol)
            and property_h(a, f, act, n, tol)
            and not weak_amenability(a, level, tol))

    def v_c(a, f, act):
        dup = duplicate(a, f, act, validate=False)
        return (cyclic_amenability(a, tol) and cyclic_amenability(f, tol)
                and span_products(a, "squares", tol=tol).dim == a.dim
                and not cyclic_amenability(dup, tol))

    def v_d(level):
        return lambda a, f, act: (
            weak_amenability(duplicate(a, f, act, validate=False), level, tol)
            != (weak_amenability(a, level, tol)
                and weak_amenability(f, level, tol)))

    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        for n in (0, 1):
            level = 2 * n + 1
            if weak_amenability(dup, level, tol):
                if not weak_amenability(f, level, tol):
                    fail["a"].append(_witness(a, f, act, recipe,
                                              f"(a) level {level}", v_a(level)))
                if property_h(a, f, act, n, tol) \
                        and not weak_amenability(a, level, tol):
                    fail["b"].append(_witness(a, f, act, recipe,
                                              f"(b) level {level}",
                                              v_b(level, n)))
        ca, cf = cyclic_amenability(a, tol), cyclic_amenability(f, tol)
        cdup = cyclic_amenability(dup, tol)
        squares_full = span_products(a, "squares", tol=tol).dim == a.dim
        if ca and cf and squares_full and not cdup:
            fail["c"].append(_witness(a, f, act, recipe, "(c) sufficiency", v_c))
        if cdup and not cf:
            fail["c"].append(_witness(a, f, act, recipe, "(c) necessity for F"))
        if cdup and property_h(a, f, act, 0, tol) and not ca:
            fail["c"].append(_witness(a, f, act, recipe, "(c) necessity for A"))
        if weak_amenability(a, 3, tol) and weak_amenability(f, 3, tol) \
                and (essentiality(a, f, act, 2, "algebra_left", tol)
                     or essentiality(a, f, act, 2, "algebra_right", tol)) \
                and not weak_amenability(dup, 3, tol):
            fail["e"].append(_witness(a, f, act, recipe, "(e) sufficiency"))
    rng_u = np.random.default_rng(seed + 1)
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng_u, unital_a=True)
        dup = duplicate(a, f, act)
        for n in (0, 1, 2):
            both = weak_amenability(a, n, tol) and weak_amenability(f, n, tol)
            if weak_amenability(dup, n, tol) != both:
                fail["d"].append(_witness(a, f, act, recipe, f"(d) level {n}",
                                          v_d(n)))
    return [
        _row("transfer-odd-weak-to-F", trials, fail["a"]),
        _row("transfer-odd-weak-to-A-with-extension", trials, fail["b"]),
        _row("transfer-cyclic", trials, fail["c"]),
        _row("transfer-unital-iff", trials, fail["d"]),
        _row("transfer-odd-sufficiency", trials, fail["e"]),
    ]


def audit_ideals(trials: int = 60, seed: int = 0,
                 tol: float = DEFAULT_TOL) -> list[AuditRow]:
    """Block criterion for product ideals; projection identities."""
    rng = np.random.default_rng(seed)
    crit_failures, proj_failures = [], []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        i_sub = random_left_ideal(rng, a, tol)
        j_sub = random_left_ideal(rng, f, tol)
        report = product_ideal_test(a, f, act, i_sub, j_sub, tol)
        if report.conjunction != report.direct:
            crit_failures.append(_witness(a, f, act, recipe, "block criterion"))
        dup = duplicate(a, f, act)
        f_embedded = block_subspace(Subspace.zero(a.dim, tol),
                                    Subspace.full(f.dim, tol))
        seeds = [f_embedded.basis[:, c] for c in range(f_embedded.dim)]
        seeds.append(np.concatenate([
            rng.standard_normal(a.dim) + 1j * rng.standard_normal(a.dim),
            np.zeros(f.dim)]))
        n_sub = ideal_generated(dup, seeds, "left", tol)
        i_n, _ = project_components(a.dim, f.dim, n_sub)
        if not (is_ideal(a, i_n, "left", tol)
                and subspace_equal(n_sub, block_subspace(
                    i_n, Subspace.full(f.dim, tol)), 10 * tol)):
            proj_failures.append(_witness(a, f, act, recipe, "projection"))
    return [_row("ideal-block-criterion", trials, crit_failures),
            _row("ideal-projection-identity", trials, proj_failures)]


def audit_cyclic_blocks(trials: int = 40, seed: int = 0,
                        tol: float = DEFAULT_TOL) -> AuditRow:
    """Cyclic derivations are exactly the blockwise-cyclic quadruples.

    Checked as exact dimension equality between the direct cyclic space
    of the duplication and the constrained quadruple system, plus
    residual checks of the block identities on a direct basis.
    """
    from .derivations import (cyclic_derivation_space, cyclic_quadruple_defects,
                              cyclic_quadruple_space, DerivationQuadruple)
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        direct = cyclic_derivation_space(dup, tol)
        blockwise = cyclic_quadruple_space(a, f, act, tol)
        if direct.dim != blockwise.dim:
            failures.append(_witness(
                a, f, act, recipe,
                f"cyclic dims {direct.dim} vs {blockwise.dim}"))
            continue
        for col in range(direct.dim):
            d = direct.basis[:, col].reshape(dup.dim, dup.dim)
            q = DerivationQuadruple.split(a.dim, d, 1)
            worst = max(cyclic_quadruple_defects(a, f, act, q).values())
            if worst > 100 * tol:
                failures.append(_witness(a, f, act, recipe,
                                         f"cyclic identity defect {worst:.3g}"))
                break
    return _row("cyclic-block-characterization", trials, failures)


def audit_unital_form(trials: int = 30, seed: int = 0,
                      tol: float = DEFAULT_TOL) -> AuditRow:
    """With A unital, every duplication derivation takes the stated form."""
    from .derivations import unital_form_check
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng, unital_a=True)
        for n in (0, 1, 2):
            rep = unital_form_check(a, f, act, n, tol)
            if not rep.passed:
                failures.append(_witness(
                    a, f, act, recipe,
                    f"level {n} defect {rep.max_defect:.3g}"))
    return _row("unital-derivation-form", trials, failures)


def audit_splitting(trials: int = 60, seed: int = 0,
                    tol: float = DEFAULT_TOL) -> AuditRow:
    """A x {0} is a two-sided ideal and {0} x F a subalgebra, always."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        a_block = block_subspace(Subspace.full(a.dim, tol), Subspace.zero(f.dim, tol))
        if not is_ideal(dup, a_block, "two_sided", tol):
            failures.append(_witness(a, f, act, recipe, "A-block not an ideal"))
            continue
        f_block = block_subspace(Subspace.zero(a.dim, tol), Subspace.full(f.dim, tol))
        products = []
        for i in range(f_block.dim):
            for j in range(f_block.dim):
                products.append(dup.multiply(f_block.basis[:, i],
                                             f_block.basis[:, j]))
        if f_block.residual(products) > tol:
            failures.append(_witness(a, f, act, recipe, "F-block not closed"))
            continue
        # the quotient by the A-block multiplies exactly like F
        da = a.dim
        if float(np.max(np.abs(dup.mult[da:, da:, da:] - f.mult))) > tol \
                or float(np.max(np.abs(dup.mult[da:, da:, :da]))) > tol:
            failures.append(_witness(a, f, act, recipe, "quotient tensor"))
    return _row("splitting-extension", trials, failures)


def audit_maximal_blocks(trials: int = 40, seed: int = 0,
                         tol: float = DEFAULT_TOL) -> AuditRow:
    """Maximality of block ideals reduces to the factors as characterized."""
    rng = np.random.default_rng(seed)
    failures = []
    checked = 0
    for _ in range(trials):
        a, f, act, recipe = random_triple(rng)
        dup = duplicate(a, f, act)
        full_a = Subspace.full(a.dim, tol)
        full_f = Subspace.full(f.dim, tol)
        j_sub = random_left_ideal(rng, f, tol)
        if j_sub.dim < f.dim:
            checked += 1
            lhs = is_maximal_left_ideal(f, j_sub, tol)
            rhs = is_maximal_left_ideal(dup, block_subspace(full_a, j_sub), tol)
            if lhs != rhs:
                failures.append(_witness(a, f, act, recipe, "A x J maximality"))
        i_sub = random_left_ideal(rng, a, tol)
        block = block_subspace(i_sub, full_f)
        if i_sub.dim < a.dim and is_ideal(dup, block, "left", tol):
            checked += 1
            lhs = is_maximal_left_ideal(a, i_sub, tol)
            rhs = is_maximal_left_ideal(dup, block, tol)
            if lhs != rhs:
                failures.append(_witness(a, f, act, recipe, "I x F maximality"))
        j2 = random_left_ideal(rng, f, tol)
        block = block_subspace(i_sub, j2)
        if block.dim < dup.dim and is_ideal(dup, block, "left", tol) \
                and is_maximal_left_ideal(dup, block, tol):
            checked += 1
            first = i_sub.dim == a.dim and j2.dim < f.dim \
                and is_maximal_left_ideal(f, j2, tol)
            second = j2.dim == f.dim and i_sub.dim < a.dim \
                and is_maximal_left_ideal(a, i_sub, tol)
            if not (first or second):
                failures.append(_witness(a, f, act, recipe,
                                         "maximal I x J shape"))
    return _row("ideal-maximal-blocks", checked, failures)


def maximality_pool(count: int = 20, seed: int = 0) -> list[FinDimAlgebra]:
    """A fixed pool of dim-3 algebras built from transformed cores."""
    cores = [c for c in _commutative_cores() + _noncommutative_cores()
             if c.dim == 3]
    rng = np.random.default_rng(seed)
    pool = []
    while len(pool) < count:
        core = cores[len(pool) % len(cores)]
        s = random_unitary(rng, 3)
        pool.append(FinDimAlgebra.from_mult(_transform_core(core, s).mult))
    return pool


def audit_maximality(pool_count: int = 20, per_instance: int = 5,
                     grid_points: int = 1000, seed: int = 0,
                     tol: float = DEFAULT_TOL) -> AuditRow:
    """Burnside maximality against the direction-grid oracle."""
    failures = []
    checked = 0
    rng = np.random.default_rng(seed)
    for idx, alg in enumerate(maximality_pool(pool_count, seed)):
        found = 0
        for _ in range(40):
            if found >= per_instance:
                break
            cand = random_left_ideal(rng, alg, tol)
            if cand.dim > 2 or cand.dim >= alg.dim:
                continue
            if not is_ideal(alg, cand, "left", tol):
                continue
            found += 1
            checked += 1
            grid = coset_direction_grid(alg, cand, grid_points,
                                        seed=seed + checked)
            burnside = is_maximal_left_ideal(alg, cand, tol)
            oracle = maximality_direction_oracle(alg, cand, grid, tol=tol)
            if burnside != oracle:
                failures.append({"note": f"pool {idx} ideal dim {cand.dim}: "
                                         f"burnside {burnside} oracle {oracle}",
                                 "bundle": None})
    return _row("maximality-burnside-vs-oracle", checked, failures)


def run_full_audit(trials: int = 40, seed: int = 0,
                   tol: float = DEFAULT_TOL) -> list[AuditRow]:
    rows = [audit_associativity(trials, seed)]
    rows += audit_spectrum(trials, seed, tol)
    rows.append(audit_arens(max(10, trials // 2), seed, 1e-10))
    rows.append(audit_centres(max(10, trials // 2), seed, tol))
    rows += audit_multipliers(trials, seed, tol)
    rows += audit_derivations(max(10, trials // 2), seed, tol)
    rows += audit_transfers(trials, seed, tol)
    rows.append(audit_cyclic_blocks(max(10, trials // 2), seed, tol))
    rows.append(audit_unital_form(max(10, trials // 3), seed, tol))
    rows += audit_ideals(trials, seed, tol)
    rows.append(audit_splitting(trials, seed, tol))
    rows.append(audit_maximal_blocks(trials, seed, tol))
    rows.append(audit_maximality(10, 3, 200, seed, tol))
    return rows
