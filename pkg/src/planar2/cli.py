"""Command-line front end.

Subcommands: check, audit, surface, semifield, problem27, fields. All
reports are deterministic JSON (or CSV) embedding the modulus, tool
version, budgets and seed, so identical invocations produce identical
bytes. Exit codes separate tool failures from mathematical findings:
0 = ran to completion (extras in a converse audit are findings, not
errors), 1 = bad arguments, 2 = internal disagreement between planarity
criteria, 3 = budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, kernels, planar, semifields, surfaces
from .fields import BudgetError, tower
from .planar import DOPoly, FamilyParams


def _meta(t, args) -> dict:
    return {
        "version": __version__,
        "backend": kernels.backend(),
        "modulus": f"{t.spec.modulus:x}",
        "n": t.spec.n, "m": t.m, "k": t.k,
        "budget": args.budget,
        "seed": args.seed,
        "threads": args.threads,
    }


def _emit(args, payload: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(args, obj: dict):
    _emit(args, json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _family_poly(args, t) -> DOPoly:
    coeffs = [t.fe(int(c, 16)) for c in args.coeffs.split(",")] if args.coeffs else []
    return planar.family_coeffs(FamilyParams(args.family, tuple(coeffs), t))


def cmd_check(args) -> int:
    t = tower(args.m, args.k)
    f = DOPoly.parse(args.terms, t)
    brute = planar.is_planar_bruteforce(f, budget=args.budget)
    linear = planar.is_planar_linearized(f)
    crit = planar.planar_by_criterion(f)
    verdicts = [v for v in (brute, linear, crit) if v is not None]
    agree = len(set(verdicts)) == 1
    report = {
        "poly": f.to_json(),
        "planar": brute,
        "criteria": {
            "bruteforce": brute,
            "linearized_rank": linear,
            "coefficient_criterion": crit,
        },
        "agree": agree,
        **_meta(t, args),
    }
    _emit_json(args, report)
    return 0 if agree else 2


def cmd_audit(args) -> int:
    t = tower(args.m, args.k)
    report = planar.family_audit(args.family, t, args.mode,
                                 budget=args.budget, threads=args.threads)
    report.meta = _meta(t, args)
    if args.format == "csv":
        _emit(args, report.to_csv())
    else:
        _emit_json(args, report.to_json())
    return 0


def cmd_surface(args) -> int:
    t = tower(args.m, args.k)
    f = _family_poly(args, t)
    shape = "P4b" if args.family == "P4b" else args.family
    g = surfaces.build_G(f, t, shape=shape)
    factors, remainder = surfaces.linear_factor_search(g, budget=args.budget)
    psi = surfaces.specialize_normal(g, t)
    psi_h = psi.homogenize()
    affine = surfaces.count_points_affine(psi_h, budget=args.budget)
    projective = surfaces.count_points_projective(psi_h, budget=args.budget)
    lw = surfaces.langweil_check(psi_h, certified_irreducible=False, budget=args.budget)
    report = {
        "family": args.family,
        "poly": f.to_json(),
        "companion": g.to_json(),
        "orbit_has_zero": surfaces.orbit_has_zero(g, t),
        "planar": planar.is_planar_bruteforce(f, budget=args.budget),
        "factors": [{"coeffs": [f"{c:x}" for c in form.coeffs], "multiplicity": mult}
                    for form, mult in factors],
        "remainder": remainder.to_json(),
        "specialized_affine_zeros": affine,
        "specialized_projective_zeros": projective,
        "pointcount_bound": lw,
        **_meta(t, args),
    }
    _emit_json(args, report)
    return 0


def cmd_semifield(args) -> int:
    t = tower(args.m, args.k)
    f = _family_poly(args, t)
    pre = semifields.presemifield_from_planar(f)
    e = t.fe(int(args.e, 16))
    semi = semifields.to_semifield(pre, e, construction=args.construction)
    rep = semifields.nuclei(semi)
    rep.meta = {"family": args.family, "e": args.e,
                "construction": args.construction, **_meta(t, args)}
    if args.dump_table:
        semi.dump_table(args.dump_table)
    _emit_json(args, rep.to_json())
    return 0


def cmd_problem27(args) -> int:
    t = tower(args.m, 2)
    rep = planar.offdiagonal_search(t, args.support,
                                    budget=args.budget, threads=args.threads)
    out = {
        "tested": rep["tested"],
        "support": rep["support"],
        "planar": [[f"{c:x}" for c in v] for v in rep["planar"]],
        "candidates": [[f"{c:x}" for c in v] for v in rep["candidates"]],
        "in_shape": [[f"{c:x}" for c in v] for v in rep["in_shape"]],
        **_meta(t, args),
    }
    _emit_json(args, out)
    return 0


def cmd_fields(args) -> int:
    from .fields import smallest_irreducible

    rows = [{"n": n, "modulus": f"{smallest_irreducible(n):x}"}
            for n in range(1, args.max_n + 1)]
    payload = {"version": __version__, "moduli": rows}
    _emit_json(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planar2",
        description="planar functions over GF(2^n): checks, audits, surfaces, semifields")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, k_default=None):
        p.add_argument("--m", type=int, required=True, help="base degree, q = 2^m")
        if k_default is not None:
            p.add_argument("--k", type=int, default=k_default, help="tower degree")
        p.add_argument("--budget", type=int, default=1 << 22)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("check", help="planarity of an explicit polynomial")
    p.add_argument("--terms", required=True,
                   help='terms "(coeff_hex,u,v);(coeff_hex,u,v);..."')
    common(p, k_default=2)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("audit", help="sweep a family (sufficiency or converse)")
    p.add_argument("--family", required=True, choices=planar.FAMILIES)
    p.add_argument("--mode", choices=("sufficiency", "converse"), default="sufficiency")
    common(p, k_default=None)
    p.add_argument("--k", type=int, default=None,
                   help="tower degree (defaults to the family's natural k)")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser("surface", help="companion polynomial analysis of a family instance")
    p.add_argument("--family", required=True, choices=("P1", "P2", "P3", "P4a", "P4b"))
    p.add_argument("--coeffs", required=True,
                   help="comma-separated hex family parameters (s | u,v | a | s1 | s2)")
    common(p, k_default=None)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("semifield", help="nuclei of the semifield of a family instance")
    p.add_argument("--family", required=True, choices=planar.FAMILIES)
    p.add_argument("--coeffs", default="",
                   help="comma-separated hex family parameters (empty for parameter-free families)")
    p.add_argument("--e", default="1", help="isotope base point (hex)")
    p.add_argument("--construction", choices=("isotope", "left-division"),
                   default="isotope")
    p.add_argument("--dump-table", default=None,
                   help="write the raw multiplication table (uint16, row-major)")
    common(p, k_default=None)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(fn=cmd_semifield)

    p = sub.add_parser("problem27", help="sparse planar vectors off the conjectured shape (k=2)")
    p.add_argument("--support", type=int, default=2)
    common(p)
    p.set_defaults(fn=cmd_problem27)

    p = sub.add_parser("fields", help="print the canonical modulus table")
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_fields)

    return ap


_FAMILY_K = {"P1": 2, "P2": 3, "P3": 3, "P4a": 4, "P4b": 4,
             "SZ-monomial": 2, "SZ-generalized": 2, "ScherrZieve": 3,
             "Hu2": 3, "Hu3": 3}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if getattr(args, "k", None) is None and hasattr(args, "k"):
        fam = getattr(args, "family", None)
        if fam in _FAMILY_K:
            args.k = _FAMILY_K[fam]
        elif fam == "Knuth":
            print("error: the Knuth family needs an explicit odd --k (it is viewed with m=1)",
                  file=sys.stderr)
            return 1
        else:
            args.k = 2
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
