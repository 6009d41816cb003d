"""Command-line interface: deterministic JSON/text reports.

Exit codes: 0 = command ran (and any verification passed), 1 = a verification
command found a violation, 2 = bad usage or malformed input.  All output is
byte-deterministic for fixed inputs and flags: JSON is emitted with sorted
keys, rationals as "p/q" strings, and every report embeds a sha256 digest of
the input it was computed from.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import catalog
from .coadjoint import (
    FlowConfig,
    bform,
    frobenius_test,
    isotropy_algebra,
    minus_one_probe,
    open_component_census,
    orbit_dimension,
)
from .exact import ModeError, format_scalar, parse_scalar
from .groupoids import (
    AxiomError,
    NotInvariant,
    action_from_json,
    algebra_profile,
    classify,
    equivalence_bimodule_verify,
    groupoid_from_json,
    orbits_isotropy,
    piecewise_decompose,
    pullback_isomorphism_verify,
    regular_representation_faithful,
    transformation_groupoid,
    validate_groupoid,
)
from .lie import (
    AntisymmetryError,
    FieldError,
    JacobiError,
    algebra_from_json,
    algebra_to_json,
    structure_series,
    validate_lie_algebra,
)
from .rootsystems import build_root_system, cascade_classification, open_orbit_rank_test
from .strata import coadjoint_stratification
from .weights import SolvabilityError, algebra_is_exponential, algebra_roots


class InputError(Exception):
    """Malformed or missing input: exit code 2."""


def _jsonable(x):
    if isinstance(x, Fraction) or hasattr(x, "re"):
        return format_scalar(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_json_file(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw.decode("utf-8")), _digest(raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_algebra(args):
    if args.name:
        if args.name not in catalog.LIE_CATALOG:
            raise InputError(
                f"unknown algebra {args.name!r}; available: "
                + ", ".join(sorted(catalog.LIE_CATALOG))
            )
        L = catalog.LIE_CATALOG[args.name]()
        canonical = json.dumps(algebra_to_json(L), sort_keys=True).encode()
        return L, {"name": args.name, "sha256": _digest(canonical)}
    if args.infile:
        doc, digest = _load_json_file(args.infile)
        try:
            return algebra_from_json(doc), {"path": args.infile, "sha256": digest}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad algebra document: {exc}") from exc
    raise InputError("provide --name or --in")


def _load_groupoid(args, wrap_axioms: bool = True):
    """Load from the catalog or a JSON document (action or explicit tables).

    Axiom violations are wrapped into InputError (exit 2) unless the caller
    is the validation command itself, which reports them as findings.
    """
    if args.name:
        if args.name not in catalog.GROUPOID_CATALOG:
            raise InputError(
                f"unknown groupoid {args.name!r}; available: "
                + ", ".join(sorted(catalog.GROUPOID_CATALOG))
            )
        G = catalog.GROUPOID_CATALOG[args.name]()
        meta = {"name": args.name}
        return G, meta
    if args.infile:
        doc, digest = _load_json_file(args.infile)
        kind = doc.get("kind") if isinstance(doc, dict) else None
        try:
            if kind == "group_action":
                G = transformation_groupoid(action_from_json(doc))
            elif kind == "groupoid":
                G = groupoid_from_json(doc)
            else:
                raise InputError(f"unknown document kind {kind!r}")
        except AxiomError:
            if wrap_axioms:
                raise InputError("groupoid document violates an axiom") from None
            raise
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad groupoid document: {exc}") from exc
        return G, {"path": args.infile, "sha256": digest}
    raise InputError("provide --name or --in")


def _parse_point(text: str, dim: int):
    try:
        parts = [parse_scalar(p.strip()) for p in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc
    if len(parts) != dim:
        raise InputError(f"point has {len(parts)} coordinates, need {dim}")
    return tuple(parts)


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    else:
        lines = []

        def walk(prefix, val):
            if isinstance(val, dict):
                for k in sorted(val):
                    walk(f"{prefix}{k}." if prefix else f"{k}.", val[k])
            elif isinstance(val, (list, tuple)):
                lines.append(f"{prefix[:-1]}: {json.dumps(_jsonable(val))}")
            else:
                lines.append(f"{prefix[:-1]}: {_jsonable(val)}")

        walk("", report)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# lie subcommands


def cmd_lie_validate(args) -> int:
    if args.name:
        L, meta = _load_algebra(args)
        report = {"command": "lie validate", "input": meta, "valid": True,
                  "dim": L.dim, "field": L.field}
        _emit(report, args)
        return 0
    doc, digest = _load_json_file(args.infile)
    meta = {"path": args.infile, "sha256": digest}
    try:
        L = algebra_from_json(doc)
    except (AntisymmetryError, JacobiError, FieldError) as exc:
        report = {
            "command": "lie validate",
            "input": meta,
            "valid": False,
            "violation": type(exc).__name__,
            "detail": _jsonable(list(exc.args)),
        }
        _emit(report, args)
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad algebra document: {exc}") from exc
    report = {"command": "lie validate", "input": meta, "valid": True,
              "dim": L.dim, "field": L.field}
    _emit(report, args)
    return 0


def cmd_lie_series(args) -> int:
    L, meta = _load_algebra(args)
    s = structure_series(L)
    report = {
        "command": "lie series",
        "input": meta,
        "dim": L.dim,
        "derived_dims": [sp.dim for sp in s.derived_series],
        "lower_central_dims": [sp.dim for sp in s.lower_central_series],
        "center_dim": s.center.dim,
        "solvable": s.is_solvable,
        "nilpotent": s.is_nilpotent,
    }
    _emit(report, args)
    return 0


def cmd_lie_roots(args) -> int:
    L, meta = _load_algebra(args)
    try:
        roots = algebra_roots(L, tol=args.tol)
    except SolvabilityError as exc:
        raise InputError(f"roots need a solvable algebra: {exc}") from exc
    report = {
        "command": "lie roots",
        "input": meta,
        "roots": [
            {
                "re": [_jsonable(v) for v in r.re],
                "im": [_jsonable(v) for v in r.im],
                "multiplicity": r.multiplicity,
                "exact": r.exact,
            }
            for r in roots
        ],
    }
    _emit(report, args)
    return 0


def cmd_lie_exptest(args) -> int:
    L, meta = _load_algebra(args)
    try:
        res = algebra_is_exponential(L, tol=args.tol)
    except SolvabilityError as exc:
        raise InputError(f"the test needs a solvable algebra: {exc}") from exc
    report = {
        "command": "lie exptest",
        "input": meta,
        "verdict": res.verdict,
        "heuristic": res.heuristic,
        "certificates": [
            {
                "weight_re": [_jsonable(v) for v in c.weight.re],
                "weight_im": [_jsonable(v) for v in c.weight.im],
                "theta": _jsonable(c.theta),
                "violation": c.violation,
            }
            for c in res.certificates
        ],
    }
    _emit(report, args)
    return 0


def cmd_lie_coadjoint(args) -> int:
    L, meta = _load_algebra(args)
    xi = _parse_point(args.point, L.dim)
    try:
        iso = isotropy_algebra(L, xi)
    except ModeError as exc:
        raise InputError(str(exc)) from exc
    b = bform(L, xi)
    report = {
        "command": "lie coadjoint",
        "input": meta,
        "point": [_jsonable(v) for v in xi],
        "skew_form": [[_jsonable(v) for v in row] for row in b.data],
        "orbit_dimension": orbit_dimension(L, xi),
        "open_orbit": orbit_dimension(L, xi) == L.dim,
        "isotropy_dim": iso.dim,
        "isotropy_basis": [[_jsonable(v) for v in row] for row in iso.rows],
    }
    _emit(report, args)
    return 0


def cmd_lie_census(args) -> int:
    L, meta = _load_algebra(args)
    cfg = FlowConfig(sample_count=args.samples, seed=args.seed)
    census = open_component_census(L, cfg)
    ok, witness = frobenius_test(L, seed=args.seed)
    report = {
        "command": "lie census",
        "input": meta,
        "seed": args.seed,
        "samples_requested": args.samples,
        "nondegenerate_samples": census.nondegenerate_samples,
        "component_count": census.component_count,
        "component_sizes": list(census.component_sizes),
        "representatives": [
            [_jsonable(v) for v in rep] for rep in census.representatives
        ],
        "negation_pairing": [list(p) for p in census.negation_pairing],
        "even": census.even,
        "evenness_asserted": census.exponential,
        "heuristic_weights": census.heuristic_weights,
        "open_orbit_exists": ok,
        "open_orbit_witness": [_jsonable(v) for v in witness] if witness else None,
        "notes": list(census.notes),
    }
    _emit(report, args)
    return 0


def cmd_lie_stratify(args) -> int:
    L, meta = _load_algebra(args)
    try:
        s = coadjoint_stratification(L, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "lie stratify",
        "input": meta,
        "flag_dims": list(s.flag_dims),
        "generic_jump_set": list(s.generic_jump_set),
        "generic_rank": s.generic_rank,
        "exhaustive_grid": s.exhaustive,
        "strata": [
            {
                "jump_set": list(st.jump_set),
                "rank": st.rank,
                "sample_count": st.sample_count,
                "representative": [_jsonable(v) for v in st.representative],
            }
            for st in s.strata
        ],
        "notes": list(s.notes),
    }
    _emit(report, args)
    return 0


def cmd_lie_probe_minus_one(args) -> int:
    L, meta = _load_algebra(args)
    probe = minus_one_probe(L, seed=args.seed, tol=max(args.tol, 1e-9))
    report = {
        "command": "lie probe-minus-one",
        "input": meta,
        "found": probe.found,
        "direction": [_jsonable(v) for v in probe.direction] if probe.found else None,
        "t": probe.t_label,
        "eigenvalue": _jsonable(probe.eigenvalue) if probe.found else None,
    }
    _emit(report, args)
    return 0


# ---------------------------------------------------------------------------
# cascade subcommand


def cmd_cascade(args) -> int:
    if args.table:
        table = cascade_classification(max_rank=args.max_rank)
        report = {
            "command": "cascade",
            "max_rank": args.max_rank,
            "open_orbit": table,
        }
        _emit(report, args)
        return 0
    if not args.family or not args.rank:
        raise InputError("provide --family and --rank, or --table")
    try:
        rs = build_root_system(args.family, args.rank)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = open_orbit_rank_test(rs)
    report = {
        "command": "cascade",
        "system": rep.name,
        "rank": rep.rank,
        "positive_root_count": rep.positive_count,
        "cascade": [[_jsonable(v) for v in root] for root in rep.cascade],
        "cascade_size": rep.cascade_size,
        "has_open_orbit": rep.has_open_orbit,
    }
    _emit(report, args)
    return 0


# ---------------------------------------------------------------------------
# grpd subcommands


def cmd_grpd_validate(args) -> int:
    try:
        G, meta = _load_groupoid(args, wrap_axioms=False)
        validate_groupoid(G)
    except (AxiomError, NotInvariant) as exc:
        report = {
            "command": "grpd validate",
            "valid": False,
            "violation": type(exc).__name__,
            "detail": _jsonable([str(a) for a in exc.args]),
        }
        _emit(report, args)
        return 1
    report = {
        "command": "grpd validate",
        "input": meta,
        "valid": True,
        "objects": len(G.objects),
        "morphisms": len(G.morphisms),
    }
    _emit(report, args)
    return 0


def cmd_grpd_classify(args) -> int:
    G, meta = _load_groupoid(args)
    c = classify(G)
    orbs = orbits_isotropy(G)
    report = {
        "command": "grpd classify",
        "input": meta,
        "objects": len(G.objects),
        "morphisms": len(G.morphisms),
        "is_group_bundle": c.is_group_bundle,
        "is_transitive": c.is_transitive,
        "is_pair": c.is_pair,
        "is_principal": c.is_principal,
        "orbit_count": c.orbit_count,
        "orbit_sizes": [len(o) for o in orbs.orbits],
        "isotropy_orders": list(orbs.isotropy_orders),
        "representatives": [_jsonable(r) for r in orbs.representatives],
    }
    _emit(report, args)
    return 0


def cmd_grpd_pullback_verify(args) -> int:
    G, meta = _load_groupoid(args)
    rep = pullback_isomorphism_verify(G)
    report = {
        "command": "grpd pullback-verify",
        "input": meta,
        "ok": rep.ok,
        "morphisms": rep.morphism_count,
        "pullback_morphisms": rep.pullback_count,
        "bijective": rep.bijective,
        "functorial": rep.functorial,
        "identities_match": rep.identities_match,
        "inverses_match": rep.inverses_match,
        "round_trip": rep.round_trip,
    }
    _emit(report, args)
    return 0 if rep.ok else 1


def cmd_grpd_bimodule_verify(args) -> int:
    G, meta = _load_groupoid(args)
    rep = equivalence_bimodule_verify(G)
    report = {
        "command": "grpd bimodule-verify",
        "input": meta,
        "ok": rep.ok,
        "checks": dict(rep.checks),
        "linking_elements": rep.element_count,
    }
    _emit(report, args)
    return 0 if rep.ok else 1


def cmd_grpd_decompose(args) -> int:
    G, meta = _load_groupoid(args)
    rep = piecewise_decompose(G)
    report = {
        "command": "grpd decompose",
        "input": meta,
        "representatives": [_jsonable(r) for r in rep.representatives],
        "orbit_sizes": list(rep.orbit_sizes),
        "ideal_dims": list(rep.ideal_dims),
        "layer_pullback_ok": list(rep.layer_pullback_ok),
        "total_morphisms": rep.total_morphisms,
    }
    _emit(report, args)
    return 0


def cmd_grpd_profile(args) -> int:
    G, meta = _load_groupoid(args)
    p = algebra_profile(G)
    report = {
        "command": "grpd profile",
        "input": meta,
        "blocks": [
            {
                "representative": _jsonable(r),
                "orbit_size": n,
                "isotropy_order": iso,
                "block_dim": dim,
                "irreducible_count": irr,
            }
            for (r, n, iso, dim, irr) in p.blocks
        ],
        "total_dim": p.total_dim,
        "matches_morphism_count": p.matches_morphism_count,
        "dual_total": p.dual_total,
    }
    _emit(report, args)
    return 0


def cmd_grpd_regrep(args) -> int:
    G, meta = _load_groupoid(args)
    base = None
    for x in G.objects:
        if str(x) == args.object:
            base = x
            break
    if base is None:
        try:
            literal = json.loads(args.object)
            if isinstance(literal, list):
                literal = tuple(literal)
            if literal in G.objects:
                base = literal
        except json.JSONDecodeError:
            pass
    if base is None:
        raise InputError(
            f"object {args.object!r} not found; objects: "
            + ", ".join(str(x) for x in G.objects)
        )
    rep = regular_representation_faithful(G, base)
    report = {
        "command": "grpd regrep",
        "input": meta,
        "object": _jsonable(base),
        "faithful": rep.faithful,
        "rank": rep.rank,
        "morphisms": rep.morphism_count,
        "orbit_covers_objects": rep.orbit_covers_objects,
    }
    _emit(report, args)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_io_flags(p):
    p.add_argument("--name", help="catalog entry name")
    p.add_argument("--in", dest="infile", help="input JSON file")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out", help="write the report to this file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liegrpd",
        description="Exact coadjoint-orbit structure and finite groupoid checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lie = sub.add_parser("lie", help="solvable Lie algebra analysis")
    lie_sub = lie.add_subparsers(dest="subcommand", required=True)
    for name, fn in [
        ("validate", cmd_lie_validate),
        ("series", cmd_lie_series),
        ("roots", cmd_lie_roots),
        ("exptest", cmd_lie_exptest),
        ("coadjoint", cmd_lie_coadjoint),
        ("census", cmd_lie_census),
        ("stratify", cmd_lie_stratify),
        ("probe-minus-one", cmd_lie_probe_minus_one),
    ]:
        p = lie_sub.add_parser(name)
        _add_io_flags(p)
        if name == "coadjoint":
            p.add_argument("--point", required=True,
                           help="comma-separated rational coordinates")
        p.set_defaults(fn=fn)

    cas = sub.add_parser("cascade", help="root-system cascade rank test")
    _add_io_flags(cas)
    cas.add_argument("--family", help="A, B, C, D, E, F, or G")
    cas.add_argument("--rank", type=int)
    cas.add_argument("--table", action="store_true",
                     help="classify every system up to --max-rank")
    cas.add_argument("--max-rank", type=int, default=8)
    cas.set_defaults(fn=cmd_cascade)

    grpd = sub.add_parser("grpd", help="finite groupoid checks")
    grpd_sub = grpd.add_subparsers(dest="subcommand", required=True)
    for name, fn in [
        ("validate", cmd_grpd_validate),
        ("classify", cmd_grpd_classify),
        ("pullback-verify", cmd_grpd_pullback_verify),
        ("bimodule-verify", cmd_grpd_bimodule_verify),
        ("decompose", cmd_grpd_decompose),
        ("profile", cmd_grpd_profile),
        ("regrep", cmd_grpd_regrep),
    ]:
        p = grpd_sub.add_parser(name)
        _add_io_flags(p)
        if name == "regrep":
            p.add_argument("--object", required=True, help="base object label")
        p.set_defaults(fn=fn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
