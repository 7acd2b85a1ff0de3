"""Command-line surface: bundle validation, computations and the audit.

Every subcommand reads an algebra bundle (see :mod:`amaldup.bundles`),
runs one family of computations, and emits a report whose rows carry a
stable schema: ``id``, ``status`` (pass / fail / info), ``defect``,
``value`` and ``witness``.  Exit code 0 means no row failed, 1 means at
least one did (including unreadable input), 2 is a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import audit as audit_mod
from .algebra import duplicate, span_products, validate_action, validate_algebra
from .bundles import AlgebraBundle, algebra_to_obj, parse_bundle
from .derivations import (cohomology, derivation_quadruple_space, property_h,
                          weak_amenability)
from .duals import (arens_products, essentiality,
                    second_dual_duplication_defect, topological_centres)
from .errors import DuplicateEntry, ParseError
from .ideals import is_ideal, product_ideal_test, project_components
from .linalg import Subspace
from .multipliers import (corollary_form_check, left_multiplier_space,
                          quadruple_space)
from .spectrum import duplication_spectrum

ARENS_TOL = 1e-10


def main(argv=None) -> int:
    code, report = run_command(sys.argv[1:] if argv is None else argv)
    if report:
        print(report)
    return code


def run_command(argv) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code) if exc.code else 0), ""
    try:
        rows = args.handler(args)
    except (ParseError, DuplicateEntry, IndexError, OSError) as exc:
        rows = [_row("input", "fail", value=str(exc))]
    except ValueError as exc:
        rows = [_row(args.command, "fail", value=str(exc))]
    if args.command == "duplicate" and all(r["status"] != "fail" for r in rows):
        return 0, rows[0]["value"]
    report = emit_report(rows, args.format)
    code = 1 if any(r["status"] == "fail" for r in rows) else 0
    return code, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9,
                        help="comparison tolerance (default 1e-9)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized computations")

    parser = argparse.ArgumentParser(
        prog="amaldup",
        description="Amalgamated duplications of finite-dimensional "
                    "complex algebras: structure computations and "
                    "property audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, helptext, bundle=True):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if bundle:
            p.add_argument("bundle", help="path to an algebra bundle (JSON)")
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate, "check algebra and action axioms")
    add("duplicate", cmd_duplicate,
        "emit the duplication as a single-algebra JSON document")
    add("spectrum", cmd_spectrum,
        "characters of the duplication, tagged by originating family")
    add("semisimple", cmd_semisimple,
        "joint point-separation of the character sets")
    p = add("ideals", cmd_ideals, "ideal tests for a duplication subspace")
    p.add_argument("--subspace", required=True,
                   help="JSON file with a 'vectors' list over the duplication")
    add("multipliers", cmd_multipliers,
        "left multiplier dimension and its block decomposition")
    add("arens", cmd_arens, "extended products on second duals")
    add("centres", cmd_centres, "topological centres")
    p = add("derivations", cmd_derivations, "derivation space dimensions")
    p.add_argument("--level", type=int, default=1, help="dual level n")
    add("cyclic", cmd_cyclic, "cyclic derivations at the first dual")
    p = add("property-h", cmd_property_h,
            "extension property of the pair at an odd dual level")
    p.add_argument("--n", type=int, default=0, help="check level 2n+1")
    p = add("amenability", cmd_amenability,
            "weak and cyclic amenability per dual level")
    p.add_argument("--max-level", type=int, default=2)
    p = sub.add_parser("check-paper", parents=[common],
                       help="randomized audit of the structure theorems")
    p.add_argument("bundle", nargs="?",
                   help="optional bundle to include as a deterministic case")
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(handler=cmd_check)
    return parser


def _row(check_id, status, defect=None, value=None, witness=None):
    return {"id": check_id, "status": status, "defect": defect,
            "value": value, "witness": witness}


def _load(args) -> AlgebraBundle:
    with open(args.bundle, "rb") as fh:
        return parse_bundle(fh.read())


def _thresh(defect, tol):
    return "pass" if defect <= tol else "fail"


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    bundle = _load(args)
    rows = []
    for tag, alg in (("algebra-a", bundle.algebra_a), ("algebra-f", bundle.algebra_f)):
        rep = validate_algebra(alg, args.tol)
        rows.append(_row(f"{tag}-associativity", _thresh(rep.associativity_defect,
                                                         args.tol),
                         rep.associativity_defect))
        rows.append(_row(f"{tag}-unit", _thresh(rep.unit_defect, args.tol),
                         rep.unit_defect,
                         value="unital" if alg.unit is not None else "non-unital"))
        rows.append(_row(f"{tag}-l1-growth", "info",
                         value=rep.submultiplicativity_constant))
    act_rep = validate_action(bundle.algebra_a, bundle.algebra_f,
                              bundle.action, args.tol)
    for name, defect in act_rep.defects.items():
        rows.append(_row(f"action-{name.replace('_', '-')}",
                         _thresh(defect, args.tol), defect))
    rows.append(_row("action-symmetric", "info", value=act_rep.symmetric))
    return rows


def cmd_duplicate(args):
    bundle = _load(args)
    dup = duplicate(bundle.algebra_a, bundle.algebra_f, bundle.action, args.tol)
    return [_row("duplication", "pass",
                 value=json.dumps(algebra_to_obj(dup), indent=2))]


def cmd_spectrum(args):
    bundle = _load(args)
    e_list, f_list, sigma = duplication_spectrum(
        bundle.algebra_a, bundle.algebra_f, bundle.action, args.tol, args.seed)
    rows = [_row("character-count", "info", value=len(sigma))]
    for k, chi in enumerate(sigma):
        if any(np.max(np.abs(chi - e)) <= 1e-6 for e in e_list):
            family = "A-lifted"
        elif any(np.max(np.abs(chi - f)) <= 1e-6 for f in f_list):
            family = "F-lifted"
        else:
            family = "unmatched"
        rows.append(_row(f"character[{k}]", "info",
                         value={"family": family,
                                "coords": [[float(z.real), float(z.imag)]
                                           for z in chi]}))
    rows.append(_row("spectrum-assembles", "pass",
                     value=f"{len(e_list)} lifted from A, {len(f_list)} from F"))
    return rows


def cmd_semisimple(args):
    from .spectrum import gelfand_semisimple
    bundle = _load(args)
    a, f = bundle.algebra_a, bundle.algebra_f
    dup = duplicate(a, f, bundle.action, args.tol)
    rows = []
    flags = {}
    for tag, alg in (("a", a), ("f", f), ("duplication", dup)):
        if not alg.is_commutative(args.tol):
            rows.append(_row(f"semisimple-{tag}", "info",
                             value="not commutative; skipped"))
            continue
        flags[tag] = gelfand_semisimple(alg, args.tol, args.seed)
        rows.append(_row(f"semisimple-{tag}", "info", value=flags[tag]))
    if len(flags) == 3:
        ok = flags["duplication"] == (flags["a"] and flags["f"])
        rows.append(_row("semisimplicity-transfer", "pass" if ok else "fail",
                         value=flags))
    return rows


def _load_subspace(path, ambient, tol) -> Subspace:
    with open(path, "rb") as fh:
        obj = json.loads(fh.read().decode("utf-8"))
    vectors = []
    for vec in obj.get("vectors", []):
        vectors.append(np.array([complex(p[0], p[1]) for p in vec]))
    return Subspace.from_spanning(vectors, ambient, tol)


def cmd_ideals(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    sub = _load_subspace(args.subspace, dup.dim, args.tol)
    rows = [_row("subspace-dim", "info", value=sub.dim)]
    for side in ("left", "right", "two_sided"):
        rows.append(_row(f"is-{side.replace('_', '-')}-ideal", "info",
                         value=is_ideal(dup, sub, side, args.tol)))
    i_n, j_n = project_components(a.dim, f.dim, sub)
    rows.append(_row("projection-dims", "info",
                     value={"onto-A": i_n.dim, "onto-F": j_n.dim}))
    report = product_ideal_test(a, f, act, i_n, j_n, args.tol)
    rows.append(_row("block-criterion", "info", value=vars(report)))
    agree = report.conjunction == report.direct
    rows.append(_row("block-criterion-consistent", "pass" if agree else "fail"))
    return rows


def cmd_multipliers(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    direct = left_multiplier_space(dup, args.tol).dim
    blockwise = quadruple_space(a, f, act, args.tol).dim
    rows = [_row("dim-left-multipliers", "info", value=direct),
            _row("dim-block-system", "info", value=blockwise),
            _row("dimensions-agree", "pass" if direct == blockwise else "fail")]
    rep = corollary_form_check(a, f, act, args.tol)
    rows.append(_row("span-hypothesis", "info", value=rep.hypothesis_held))
    if rep.hypothesis_held:
        rows.append(_row("simplified-form", "pass" if rep.conclusion_verified
                         else "fail"))
    return rows


def cmd_arens(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    rows = []
    for tag, alg in (("a", a), ("f", f), ("duplication", dup)):
        st = arens_products(alg)
        defect = max(float(np.max(np.abs(st.first - alg.mult))),
                     float(np.max(np.abs(st.second - alg.mult))))
        rows.append(_row(f"extended-products-collapse-{tag}",
                         _thresh(defect, ARENS_TOL), defect))
    iso = second_dual_duplication_defect(a, f, act)
    rows.append(_row("second-dual-duplication", _thresh(iso, ARENS_TOL), iso))
    return rows


def cmd_centres(args):
    bundle = _load(args)
    cents = topological_centres(bundle.algebra_a, bundle.algebra_f,
                                bundle.action, args.tol)
    rows = [_row(f"centre-{name}", "info",
                 value={"dim": s.dim, "ambient": s.ambient_dim})
            for name, s in cents.items()]
    full = all(s.dim == s.ambient_dim for s in cents.values())
    rows.append(_row("centres-full", "pass" if full else "fail",
                     value="expected at finite dimension"))
    return rows


def cmd_derivations(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    n = args.level
    rows = []
    for tag, alg in (("a", a), ("f", f), ("duplication", dup)):
        rep = cohomology(alg, n, tol=args.tol)
        rows.append(_row(f"cohomology-{tag}", "info",
                         value={"Z1": rep.dim_z1, "B1": rep.dim_b1,
                                "H1": rep.dim_h1}))
    blockwise = derivation_quadruple_space(a, f, act, n, args.tol).dim
    direct = cohomology(dup, n, tol=args.tol).dim_z1
    rows.append(_row("block-system-dim", "info", value=blockwise))
    rows.append(_row("dimensions-agree",
                     "pass" if blockwise == direct else "fail"))
    return rows


def cmd_cyclic(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    rows = []
    for tag, alg in (("a", a), ("f", f), ("duplication", dup)):
        rep = cohomology(alg, 1, tol=args.tol)
        rows.append(_row(f"cyclic-{tag}", "info",
                         value={"Z1_cyclic": rep.dim_z1_cyclic,
                                "H1_cyclic": rep.dim_h1_cyclic,
                                "cyclically_amenable": rep.cyclically_amenable}))
    return rows


def cmd_property_h(args):
    bundle = _load(args)
    holds = property_h(bundle.algebra_a, bundle.algebra_f, bundle.action,
                       args.n, args.tol)
    return [_row(f"extension-property-level-{2 * args.n + 1}", "info",
                 value=holds)]


def cmd_amenability(args):
    bundle = _load(args)
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    dup = duplicate(a, f, act, args.tol)
    rows = []
    for n in range(args.max_level + 1):
        rows.append(_row(f"weakly-amenable-level-{n}", "info", value={
            "a": weak_amenability(a, n, args.tol),
            "f": weak_amenability(f, n, args.tol),
            "duplication": weak_amenability(dup, n, args.tol)}))
    for tag, alg in (("a", a), ("f", f), ("duplication", dup)):
        rep = cohomology(alg, 1, tol=args.tol)
        rows.append(_row(f"cyclically-amenable-{tag}", "info",
                         value=rep.cyclically_amenable))
    rows.append(_row("hypothesis-flags", "info", value={
        "squares-span-a": span_products(a, "squares", tol=args.tol).dim == a.dim,
        "essential-level-2": essentiality(a, f, act, 2, "algebra_left", args.tol),
        "extension-property-level-1": property_h(a, f, act, 0, args.tol)}))
    return rows


def cmd_check(args):
    rows = []
    if args.bundle:
        bundle = _load(args)
        rows.extend(_bundle_checks(bundle, args.tol))
    for res in audit_mod.run_full_audit(args.trials, args.seed, args.tol):
        rows.append(_row(res.id, res.status, res.defect,
                         value=f"{res.trials} trials",
                         witness=res.witness))
    return rows


def _bundle_checks(bundle: AlgebraBundle, tol: float):
    a, f, act = bundle.algebra_a, bundle.algebra_f, bundle.action
    rows = []
    dup = duplicate(a, f, act, tol)
    rep = validate_algebra(dup, tol)
    rows.append(_row("bundle-duplication-associative",
                     _thresh(rep.associativity_defect, tol),
                     rep.associativity_defect))
    try:
        duplication_spectrum(a, f, act, tol)
        rows.append(_row("bundle-spectrum-assembles", "pass"))
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        rows.append(_row("bundle-spectrum-assembles", "fail", value=str(exc)))
    direct = left_multiplier_space(dup, tol).dim
    blockwise = quadruple_space(a, f, act, tol).dim
    rows.append(_row("bundle-multiplier-dimension",
                     "pass" if direct == blockwise else "fail",
                     value={"direct": direct, "blocks": blockwise}))
    for n in (0, 1, 2):
        dz = cohomology(dup, n, tol=tol).dim_z1
        bz = derivation_quadruple_space(a, f, act, n, tol).dim
        rows.append(_row(f"bundle-derivation-dimension-level-{n}",
                         "pass" if dz == bz else "fail",
                         value={"direct": dz, "blocks": bz}))
    return rows


# ---------------------------------------------------------------------------
# rendering


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, dict):
        return json.dumps(value, default=_json_default)
    return str(value)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def emit_report(rows, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"results": rows}, indent=2, default=_json_default)
    if not rows:
        return "no results"
    width = max(len(r["id"]) for r in rows)
    lines = []
    for r in rows:
        defect = "" if r["defect"] is None else f"  defect={r['defect']:.12g}"
        value = "" if r["value"] is None else f"  {_fmt(r['value'])}"
        lines.append(f"{r['id']:<{width}}  {r['status']:<4}{defect}{value}")
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
