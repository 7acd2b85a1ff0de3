"""Characters, companion functionals and the spectrum of a duplication.

A character is a nonzero multiplicative linear functional, stored as a
coordinate covector.  The search routine exploits that every character
``chi`` is an eigenvector of the transpose of any left-multiplication
operator ``L_g`` with eigenvalue ``chi(g)``:

  1. draw a seeded generic element ``g`` and split the covector space
     into the kernels of ``L_g^T - lambda`` over the eigenvalues of
     ``L_g^T``;
  2. pieces of dimension one are candidate rays; larger pieces are split
     again by fresh generic elements (distinct characters disagree on a
     generic element, so collisions die off);
  3. every candidate ray is scaled into a multiplicative functional,
     polished by Gauss-Newton, stripped of its components on the
     Jacobson radical (where true characters vanish but eigenvector
     extraction is only eps^(1/3)-accurate), and verified against the
     full multiplicativity system -- false positives are impossible at
     the working tolerance.

Pieces that survive all rounds with a nonzero eigenvalue path occur for
algebras whose regular representation acts by scalars there; the single
character such a piece can contain is recovered directly and verified.
An unverifiable leftover raises :class:`DegenerateSpectrum`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BimoduleAction, FinDimAlgebra, duplicate, join_element
from .errors import (CommutativityRequired, DegenerateSpectrum, NotACharacter,
                     IncompatibleAction, SpectrumTheoremViolation)
from .linalg import DEFAULT_TOL, Subspace, as_cvector, rank_nullspace

_SPLIT_BUDGET = 6


@dataclass(frozen=True)
class Character:
    """A verified multiplicative functional, with its companion if computed."""

    phi: np.ndarray = field(repr=False)
    residual: float
    tilde: np.ndarray | None = field(default=None, repr=False)

    def __call__(self, x) -> complex:
        return complex(self.phi @ as_cvector(x, self.phi.size))


def multiplicativity_defect(alg: FinDimAlgebra, chi: np.ndarray) -> float:
    """max_ij |chi(e_i e_j) - chi(e_i) chi(e_j)|."""
    chi = as_cvector(chi, alg.dim)
    values = np.einsum("ijk,k->ij", alg.mult, chi)
    return float(np.max(np.abs(values - np.outer(chi, chi))))


def characters(alg: FinDimAlgebra, tol: float = DEFAULT_TOL,
               seed: int = 0) -> list[Character]:
    """All characters of ``alg``, deterministic for a given seed."""
    n = alg.dim
    rng = np.random.default_rng(seed)
    probes = [rng.standard_normal(n) + 1j * rng.standard_normal(n)
              for _ in range(_SPLIT_BUDGET + 2)]

    found: list[np.ndarray] = []
    rays: list[np.ndarray] = []
    # each active piece: (basis matrix, max |eigenvalue| seen along its path)
    active: list[tuple[np.ndarray, float]] = [(np.eye(n, dtype=complex), 0.0)]
    for g in probes[:_SPLIT_BUDGET]:
        if not active:
            break
        op = alg.left_op(g).T
        lams = _clustered_eigenvalues(op, tol)
        next_active: list[tuple[np.ndarray, float]] = []
        for basis, path_mag in active:
            for lam in lams:
                reduced = (op - lam * np.eye(n)) @ basis
                _, coeff_null = rank_nullspace(reduced, max(tol, 1e-12))
                if coeff_null.dim == 0:
                    continue
                piece = basis @ coeff_null.basis
                mag = max(path_mag, abs(lam))
                if piece.shape[1] == 1:
                    rays.append(piece[:, 0])
                else:
                    next_active.append((piece, mag))
        active = next_active

    rad = radical_subspace(alg, tol)
    for ray in rays:
        chi = _normalize_ray(alg, ray, probes, tol)
        if chi is not None:
            chi = _refine(alg, chi, rad)
            if _accept_candidate(alg, chi, tol):
                _record(found, chi, tol)

    for basis, path_mag in active:
        if path_mag <= max(100 * tol, 1e-7):
            continue  # no character can sit at a persistently tiny eigenvalue
        chi = _extract_scalar_block_character(alg, basis, probes, tol)
        if chi is None:
            raise DegenerateSpectrum(
                f"{basis.shape[1]}-dim joint eigenspace with nonzero "
                "eigenvalues could not be resolved into characters")
        chi = _refine(alg, chi, rad)
        if _accept_candidate(alg, chi, tol):
            _record(found, chi, tol)

    found.sort(key=_sort_key)
    return [Character(chi, multiplicativity_defect(alg, chi)) for chi in found]


def _clustered_eigenvalues(op: np.ndarray, tol: float) -> list[complex]:
    lams = np.linalg.eigvals(op)
    scale = max(1.0, float(np.max(np.abs(lams))) if lams.size else 1.0)
    ctol = max(1e3 * tol, 1e-8) * scale
    reps: list[complex] = []
    for lam in sorted(lams, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
        if all(abs(lam - r) > ctol for r in reps):
            reps.append(complex(lam))
    return reps


def _accept_candidate(alg, chi, tol) -> bool:
    """Scale-aware multiplicativity test with a nonzero floor.

    An absolute defect bound alone would accept any covector scaled
    close enough to zero (the defect of ``c v`` shrinks like ``c^2``):
    near-zero covectors on a nilpotent algebra can look multiplicative
    to absurd precision while approximating only the excluded zero
    functional.  A candidate therefore must (a) sit clearly above the
    set-matching scale ``10 tol`` and (b) keep its defect small relative
    to its own size.
    """
    size = float(np.max(np.abs(chi)))
    if size <= 10 * tol:
        return False  # indistinguishable from the zero functional
    return multiplicativity_defect(alg, chi) <= tol * max(1.0, size) * size


def radical_subspace(alg: FinDimAlgebra, tol: float = DEFAULT_TOL) -> Subspace:
    """The Jacobson radical, from the characteristic-zero trace criterion.

    An element x is in the radical exactly when ``tr(L_x) = 0`` and
    ``tr(L_{x y}) = 0`` for every basis y (the trace form of the regular
    representation of the unitization); one nullspace computation.
    """
    t0 = np.einsum("ijj->i", alg.mult)
    t2 = np.einsum("ijm,m->ij", alg.mult, t0)
    system = np.vstack([t0[None, :], t2.T])
    scale = max(1.0, alg.dim * float(np.max(np.abs(alg.mult))))
    _, null = rank_nullspace(system, tol, atol=tol * scale ** 2)
    return null


def _refine(alg, chi: np.ndarray, rad: Subspace, steps: int = 8) -> np.ndarray:
    """Polish an approximate character: Gauss-Newton plus radical cleanup.

    Characters sitting over a nontrivial radical are multiple roots of
    the multiplicativity system (eigenvector extraction locates them only
    to about eps^(1/3) along radical directions, and Newton stalls there
    because the near-singular Jacobian amplifies round-off).  Newton
    therefore only polishes the well-conditioned directions, and the
    radical components -- on which every true character vanishes -- are
    projected away exactly.
    """
    n = alg.dim
    eye = np.eye(n)
    for _ in range(steps):
        resid = (np.einsum("ijm,m->ij", alg.mult, chi)
                 - np.outer(chi, chi)).reshape(-1)
        if np.max(np.abs(resid)) < 1e-14 * max(1.0, float(np.max(np.abs(chi)))):
            break
        jac = (alg.mult
               - np.einsum("im,j->ijm", eye, chi)
               - np.einsum("i,jm->ijm", chi, eye)).reshape(n * n, n)
        step = np.linalg.lstsq(jac, -resid, rcond=1e-7)[0]
        chi = chi + step
        if np.max(np.abs(step)) < 1e-15:
            break
    if rad.dim:
        chi = chi - rad.basis.conj() @ (rad.basis.T @ chi)
    return chi


def _normalize_ray(alg, ray, probes, tol) -> np.ndarray | None:
    """Scale an eigen-ray into a multiplicative functional, or reject it."""
    nrm = np.linalg.norm(ray)
    if nrm == 0:
        return None
    v = ray / nrm
    for p in probes:
        vp = v @ p
        if abs(vp) < 1e-3:  # keep the quotient below well-conditioned
            continue
        c = (v @ alg.multiply(p, p)) / vp ** 2
        if abs(c) < 1e-9:
            return None  # chi(p) != 0 would force chi(p^2) != 0
        chi = c * v
        return chi if _accept_candidate(alg, chi, tol) else None
    return None


def _extract_scalar_block_character(alg, basis, probes, tol) -> np.ndarray | None:
    """Character inside a joint eigenspace on which multiplication is scalar."""
    w = basis[:, 0]
    for p in probes:
        wp = w @ p
        if abs(wp) < 1e-3:
            continue
        mu = np.array([(w @ alg.multiply(e, p)) / wp
                       for e in np.eye(alg.dim)])
        return mu if _accept_candidate(alg, mu, tol) else None
    return None


def _record(found: list[np.ndarray], chi: np.ndarray, tol: float) -> None:
    for known in found:
        if np.max(np.abs(known - chi)) <= 10 * tol:
            return
    found.append(chi)


def _sort_key(chi: np.ndarray):
    return tuple((round(z.real, 7), round(z.imag, 7)) for z in chi)


def characters_match(first, second, match_tol: float) -> bool:
    """Greedy set matching of covector lists at sup-norm distance match_tol."""
    if len(first) != len(second):
        return False
    unused = list(range(len(second)))
    for chi in first:
        hit = None
        for idx in unused:
            if np.max(np.abs(np.asarray(chi) - np.asarray(second[idx]))) <= match_tol:
                hit = idx
                break
        if hit is None:
            return False
        unused.remove(hit)
    return True


def tilde(phi: Character | np.ndarray, a: FinDimAlgebra, f: FinDimAlgebra,
          act: BimoduleAction, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The companion functional of a character of A on F.

    Defined by ``tilde(b) = phi(b . a0)`` for any ``a0`` with
    ``phi(a0) = 1``; the result is independent of ``a0``, multiplicative
    or zero, and satisfies ``phi(x . b) = phi(b . x) = phi(x) tilde(b)``.
    All three facts are rechecked numerically here.
    """
    vec = phi.phi if isinstance(phi, Character) else as_cvector(phi, a.dim)
    if multiplicativity_defect(a, vec) > tol or np.max(np.abs(vec)) <= tol:
        raise NotACharacter("input functional is not a character of A")
    a0 = vec.conj() / (vec @ vec.conj())  # phi(a0) = 1
    out = np.einsum("i,pik,k->p", a0, act.left, vec)

    # independence of the normalizing element, when the kernel is nonzero
    if a.dim > 1:
        _, ker = rank_nullspace(vec.reshape(1, -1), tol)
        a1 = a0 + ker.basis @ np.ones(ker.dim)
        out2 = np.einsum("i,pik,k->p", a1, act.left, vec)
        if np.max(np.abs(out - out2)) > 10 * tol * max(1.0, np.max(np.abs(out))):
            raise IncompatibleAction(
                "companion functional depends on the normalizing element")

    # phi(x . b) = phi(b . x) = phi(x) tilde(b) on all basis pairs
    left_vals = np.einsum("pik,k->pi", act.left, vec)
    right_vals = np.einsum("ipk,k->pi", act.right, vec)
    expected = np.outer(out, vec)
    defect = max(float(np.max(np.abs(left_vals - expected))),
                 float(np.max(np.abs(right_vals - expected))))
    if defect > 10 * tol:
        raise IncompatibleAction(
            f"companion identity fails with defect {defect:.3g}")

    if np.max(np.abs(out)) > tol and multiplicativity_defect(f, out) > 10 * tol:
        raise IncompatibleAction("companion functional is neither zero "
                                 "nor multiplicative")
    return out


def duplication_spectrum(a: FinDimAlgebra, f: FinDimAlgebra, act: BimoduleAction,
                         tol: float = DEFAULT_TOL, seed: int = 0,
                         match_tol: float | None = None):
    """Assembled and direct spectra of the duplication, cross-checked.

    Returns ``(e_list, f_list, sigma)`` where ``e_list`` lifts each
    character of A with its companion, ``f_list`` lifts each character
    of F with zero A-part, and ``sigma`` is computed directly on the
    duplication.  Raises :class:`SpectrumTheoremViolation` when the two
    routes disagree -- that signals a bug, not a property of the input.
    """
    if match_tol is None:
        match_tol = 10 * tol
    e_list = []
    for phi in characters(a, tol, seed):
        e_list.append(join_element(phi.phi, tilde(phi, a, f, act, tol)))
    f_list = [join_element(np.zeros(a.dim), psi.phi)
              for psi in characters(f, tol, seed)]

    dup = duplicate(a, f, act, tol)
    sigma = [chi.phi for chi in characters(dup, tol, seed)]

    for e_chi in e_list:
        for f_chi in f_list:
            if np.max(np.abs(e_chi - f_chi)) <= match_tol:
                raise SpectrumTheoremViolation(
                    "lifted character families intersect")
    if not characters_match(e_list + f_list, sigma, match_tol):
        raise SpectrumTheoremViolation(
            f"direct spectrum ({len(sigma)} characters) does not match the "
            f"assembled one ({len(e_list)} + {len(f_list)})")
    return e_list, f_list, sigma


def gelfand_semisimple(alg: FinDimAlgebra, tol: float = DEFAULT_TOL,
                       seed: int = 0) -> bool:
    """True when the characters jointly separate points.

    Only defined for commutative algebras; equivalent to the coordinate
    matrix of all characters having a trivial nullspace.
    """
    if not alg.is_commutative(tol):
        raise CommutativityRequired("algebra is not commutative at tol")
    chars = characters(alg, tol, seed)
    if not chars:
        return False
    stack = np.array([chi.phi for chi in chars])
    _, null = rank_nullspace(stack, tol)
    return null.dim == 0
