"""``ualoc`` command-line front end.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or parse
error, 3 resource bound hit (verdict unknown).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Callable

from .algebra import FiniteAlgebra
from .config import using_limits
from .corpus import builtin, corpus
from .errors import AlgebraError, ParseError, PreconditionError, ResourceBoundError, SignatureError
from .fileformat import parse_algebra, render_algebra
from .homs import enumerate_homomorphisms
from .isomorphism import (
    brute_force_isomorphism,
    free_algebra,
    iso_via_localization,
    retract_oracle,
)
from .localization import (
    LocalMap,
    densify,
    enumerate_local_homs,
    is_dense,
    lemma21_oracle,
    lift_local_hom,
    localize_clone_fragment,
    neighborhood,
    separates,
)
from .structure import (
    classify_local,
    is_abelian,
    is_simple,
    is_strictly_simple,
    projectivity_verdict,
    strongly_abelian_verdict,
)
from .unary import idempotent_unary_terms, minimal_idempotents, unary_term_monoid

OK, FALSE, USAGE, UNKNOWN = 0, 1, 2, 3
_TRI = {"yes": OK, "no": FALSE, "unknown": UNKNOWN}


class UsageError(Exception):
    pass


def load_algebra(selector: str) -> FiniteAlgebra:
    """``builtin:NAME``, ``FILE`` (exactly one algebra) or ``FILE:NAME``."""
    if selector.startswith("builtin:"):
        try:
            return builtin(selector.split(":", 1)[1])
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    path, name = selector, None
    if not Path(path).exists() and ":" in selector:
        path, name = selector.rsplit(":", 1)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    algebras = parse_algebra(text)
    if name is None:
        if len(algebras) != 1:
            raise UsageError(f"{path} holds {len(algebras)} algebras; select one with {path}:NAME")
        return algebras[0]
    for A in algebras:
        if A.name == name:
            return A
    raise UsageError(f"{path} has no algebra named {name!r}")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _nb(A, args):
    return neighborhood(A, _ints(args.e_map) if args.e_map else None)


def _umap(m):
    return {"map": list(m.map), "witness": str(m.witness)}


def _nb_report(nb):
    return {"e": str(nb.term), "e_map": list(nb.e.map), "U": list(nb.U)}


# --------------------------------------------------------------- verbs


def cmd_info(args):
    A = load_algebra(args.algebra)
    return OK, {
        "algebra": A.name,
        "size": A.size,
        "operations": [{"symbol": op.symbol, "arity": op.arity} for op in A.ops],
    }


def cmd_unary_monoid(args):
    A = load_algebra(args.algebra)
    M = unary_term_monoid(A)
    return OK, {"algebra": A.name, "size": len(M), "members": [_umap(m) for m in M]}


def cmd_idempotents(args):
    A = load_algebra(args.algebra)
    return OK, {"algebra": A.name, "idempotents": [_umap(m) for m in idempotent_unary_terms(A)]}


def cmd_minimal_idempotents(args):
    A = load_algebra(args.algebra)
    mins = minimal_idempotents(A)
    return OK, {"algebra": A.name, "minimal_idempotents": [_umap(m) for m in mins], "chosen": _umap(mins[0])}


def cmd_localize(args):
    A = load_algebra(args.algebra)
    nb = _nb(A, args)
    frags = {}
    for k in range(1, args.arity_bound + 1):
        frags[str(k)] = [
            {"table": list(op.table), "witness": str(op.witness)} for op in localize_clone_fragment(A, nb, k)
        ]
    return OK, {"algebra": A.name, "neighborhood": _nb_report(nb), "fragments": frags}


def cmd_separates(args):
    A = load_algebra(args.algebra)
    nb = _nb(A, args)
    sep = separates(A, nb)
    return (OK if sep else FALSE), {
        "algebra": A.name,
        "neighborhood": _nb_report(nb),
        "verdict": sep.separates,
        "inseparable_pair": list(sep.inseparable_pair) if sep.inseparable_pair else None,
        "witnesses": {f"{a},{b}": str(t) for (a, b), t in sorted(sep.witnesses.items())},
    }


def cmd_dense(args):
    A = load_algebra(args.algebra)
    nb = _nb(A, args)
    d = is_dense(A, nb)
    return (OK if d else FALSE), {"algebra": A.name, "neighborhood": _nb_report(nb), "verdict": d}


def cmd_densify(args):
    A = load_algebra(args.algebra)
    nb = _nb(A, args)
    return OK, {
        "algebra": A.name,
        "neighborhood": _nb_report(nb),
        "subuniverse": list(densify(A, nb).elements),
    }


def cmd_simple(args):
    A = load_algebra(args.algebra)
    v = is_simple(A)
    return (OK if v else FALSE), {"algebra": A.name, "verdict": v}


def cmd_strictly_simple(args):
    A = load_algebra(args.algebra)
    v = is_strictly_simple(A)
    return (OK if v else FALSE), {"algebra": A.name, "verdict": v}


def cmd_abelian(args):
    A = load_algebra(args.algebra)
    v = is_abelian(A)
    return (OK if v else FALSE), {
        "algebra": A.name,
        "verdict": v.abelian,
        "witness": [list(p) for p in v.witness] if v.witness else None,
    }


def _classification(cls):
    return {"kind": cls.kind, "neighborhood": _nb_report(cls.neighborhood), "evidence": cls.evidence}


def cmd_classify(args):
    A = load_algebra(args.algebra)
    cls = classify_local(A, args.arity_bound)
    return (UNKNOWN if cls.kind == "unknown" else OK), {"algebra": A.name, **_classification(cls)}


def cmd_strongly_abelian(args):
    A = load_algebra(args.algebra)
    v = strongly_abelian_verdict(A)
    return _TRI[v], {"algebra": A.name, "verdict": v}


def cmd_projective(args):
    A = load_algebra(args.algebra)
    v = projectivity_verdict(A)
    return _TRI[v.projective], {
        "algebra": A.name,
        "verdict": v.projective,
        "reason": v.reason,
        "classification": _classification(v.classification),
    }


def _iso_report(rep):
    return {
        "verdict": rep.isomorphic,
        "method": rep.method,
        "witness": list(rep.witness.images) if rep.witness else None,
        "nodes": rep.nodes,
        "candidates": rep.candidates,
        "fallback_reason": rep.fallback_reason,
    }


def cmd_iso(args):
    A, B = load_algebra(args.algebra), load_algebra(args.other)
    out = {"algebras": [A.name, B.name]}
    reports = {}
    if args.method in ("brute", "both"):
        reports["brute"] = brute_force_isomorphism(A, B, jobs=args.jobs)
    if args.method in ("local", "both"):
        reports["local"] = iso_via_localization(A, B)
    for key, rep in reports.items():
        out[key] = _iso_report(rep)
    verdicts = {rep.isomorphic for rep in reports.values()}
    if len(reports) == 2:
        agree = len(verdicts) == 1 or "unknown" in verdicts
        out["agree"] = agree
        if not agree:
            raise AssertionError(f"brute force and localized search disagree on {A.name} vs {B.name}")
    verdict = "unknown" if "unknown" in verdicts else verdicts.pop()
    out["verdict"] = verdict
    if args.method in ("local", "both") and "local" in reports and reports["local"].method == "localized":
        U = len(neighborhood(A).U)
        out["local_candidate_bound"] = math.factorial(U)
        out["global_candidate_bound"] = math.factorial(A.size)
    return _TRI[verdict], out


def cmd_homs(args):
    A, B = load_algebra(args.algebra), load_algebra(args.other)
    homs = enumerate_homomorphisms(A, B)
    return OK, {
        "algebras": [A.name, B.name],
        "count": len(homs),
        "homomorphisms": [list(h.images) for h in homs],
    }


def cmd_local_homs(args):
    A, B = load_algebra(args.algebra), load_algebra(args.other)
    nb = _nb(A, args)
    local = enumerate_local_homs(nb, nb.at(B))
    return OK, {
        "algebras": [A.name, B.name],
        "neighborhood": _nb_report(nb),
        "target_U": list(nb.at(B).U),
        "count": len(local),
        "local_homs": [[list(p) for p in lam.pairs] for lam in local],
    }


def cmd_lift(args):
    A, B = load_algebra(args.algebra), load_algebra(args.other)
    nb = _nb(A, args)
    lam = LocalMap(nb, nb.at(B), _ints(args.local_map))
    out = {
        "algebras": [A.name, B.name],
        "neighborhood": _nb_report(nb),
        "local_map": [list(p) for p in lam.pairs],
    }
    try:
        hom = lift_local_hom(lam)
    except PreconditionError as exc:
        out.update(verdict=False, reason=str(exc))
        return FALSE, out
    out.update(verdict=True, homomorphism=list(hom.images))
    return OK, out


def cmd_free(args):
    A = load_algebra(args.algebra)
    F = free_algebra(A, args.gens)
    return OK, {
        "algebra": A.name,
        "gens": args.gens,
        "size": F.algebra.size,
        "generators": list(F.generators),
        "elements": [list(r) for r in F.rows],
    }


def cmd_retract_oracle(args):
    P, A = load_algebra(args.algebra), load_algebra(args.other)
    r = retract_oracle(P, A, args.gens, l_variant=args.l_variant)
    return _TRI[r.status], {
        "algebras": [P.name, A.name],
        "verdict": r.status,
        "gens": r.k,
        "free_size": r.free_size,
        "sigma": list(r.sigma.images) if r.sigma else None,
        "tau": list(r.tau.images) if r.tau else None,
        "reason": r.reason,
        "l_variant": r.l_variant,
    }


def cmd_oracle_lemma21(args):
    A = load_algebra(args.algebra)
    nb = _nb(A, args)
    v = lemma21_oracle(A, nb, domain=args.lemma21_domain)
    sep = separates(A, nb)
    con = None
    if v.congruence:
        sub, alpha = v.congruence
        con = {"subuniverse": list(sub.elements), "blocks": [list(b) for b in alpha.blocks()]}
    return (OK if v.holds else FALSE), {
        "algebra": A.name,
        "neighborhood": _nb_report(nb),
        "domain": args.lemma21_domain,
        "verdict": v.holds,
        "isomorphism_counterexample": sorted([a, b] for a, b in v.isomorphism.items())
        if v.isomorphism
        else None,
        "congruence_counterexample": con,
        "separates": sep.separates,
        "agree": sep.separates == v.holds,
    }


def cmd_corpus(args):
    algebras = corpus()
    if args.out is None:
        return OK, {"text": render_algebra(algebras)}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for A in algebras:
        path = out / f"{A.name}.alg"
        path.write_text(render_algebra(A))
        written.append(str(path))
    path = out / "corpus.alg"
    path.write_text(render_algebra(algebras))
    written.append(str(path))
    return OK, {"written": written}


# -------------------------------------------------------------- plumbing

VERBS: dict[str, tuple[Callable, int, str]] = {
    "info": (cmd_info, 1, "size and signature"),
    "unary-monoid": (cmd_unary_monoid, 1, "monoid of unary term operations"),
    "idempotents": (cmd_idempotents, 1, "idempotent unary term operations"),
    "minimal-idempotents": (cmd_minimal_idempotents, 1, "minimal idempotents and the chosen one"),
    "localize": (cmd_localize, 1, "neighborhood and localized clone fragments"),
    "separates": (cmd_separates, 1, "does e separate the algebra"),
    "dense": (cmd_dense, 1, "is e dense"),
    "densify": (cmd_densify, 1, "subalgebra generated by the neighborhood"),
    "simple": (cmd_simple, 1, "simplicity"),
    "strictly-simple": (cmd_strictly_simple, 1, "strict simplicity"),
    "abelian": (cmd_abelian, 1, "abelianness (diagonal test)"),
    "classify": (cmd_classify, 1, "kind of the localization of a strictly simple algebra"),
    "strongly-abelian": (cmd_strongly_abelian, 1, "strong abelianness of a strictly simple algebra"),
    "projective": (cmd_projective, 1, "projectivity of a strictly simple algebra"),
    "iso": (cmd_iso, 2, "isomorphism test"),
    "homs": (cmd_homs, 2, "all homomorphisms"),
    "local-homs": (cmd_local_homs, 2, "all homomorphisms of the localizations"),
    "lift": (cmd_lift, 2, "lift a local homomorphism"),
    "free": (cmd_free, 1, "free algebra of ISP(A)"),
    "retract-oracle": (cmd_retract_oracle, 2, "is P a retract of a free algebra of ISP(A)"),
    "oracle-lemma21": (cmd_oracle_lemma21, 1, "brute-force separation oracle"),
    "corpus": (cmd_corpus, 0, "write the builtin algebras"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--arity-bound", type=int, default=3, metavar="K")
    common.add_argument("--max-product-size", type=int, default=None)
    common.add_argument("--max-search-nodes", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--lemma21-domain", choices=("intersect", "require-containment"), default="intersect")
    common.add_argument("--e-map", default=None, help="pick e as the unary term operation with this map")

    parser = argparse.ArgumentParser(prog="ualoc", description="Localization toolkit for finite algebras.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, n_alg, help_) in VERBS.items():
        p = sub.add_parser(verb, parents=[common], help=help_)
        if n_alg >= 1:
            p.add_argument("algebra", help="builtin:NAME, FILE or FILE:NAME")
        if n_alg == 2:
            p.add_argument("other")
        if verb == "iso":
            p.add_argument("--method", choices=("brute", "local", "both"), default="both")
        if verb == "lift":
            p.add_argument("--local-map", required=True, help="images of U in increasing order")
        if verb == "free":
            p.add_argument("--gens", type=int, required=True)
        if verb == "retract-oracle":
            p.add_argument("--gens", type=int, default=None)
            p.add_argument("--l-variant", action="store_true")
        if verb == "corpus":
            p.add_argument("--out", default=None, help="directory to write NAME.alg files into")
    return parser


def render_text(report, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
        elif isinstance(value, str) and "\n" in value:
            lines.append(value.rstrip("\n"))
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(l for l in lines if l)


def _scalar(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + " ".join(_scalar(x) for x in v) + "]"
    return str(v)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    overrides = {"arity_bound": args.arity_bound, "jobs": args.jobs}
    if args.max_product_size is not None:
        overrides["max_product_size"] = args.max_product_size
    if args.max_search_nodes is not None:
        overrides["max_search_nodes"] = args.max_search_nodes
    handler = VERBS[args.verb][0]
    try:
        with using_limits(**overrides):
            code, report = handler(args)
    except (UsageError, ParseError, SignatureError, AlgebraError, PreconditionError) as exc:
        print(f"ualoc: error: {exc}", file=sys.stderr)
        return USAGE
    except ResourceBoundError as exc:
        code, report = UNKNOWN, {"verdict": "unknown", "error": str(exc)}
    report = {"command": args.verb, **report}
    if args.format == "text" and args.verb == "corpus" and "text" in report:
        out.write(report["text"])  # plain file text, ready to redirect
    elif args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_text(report) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
