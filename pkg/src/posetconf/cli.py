"""Command-line front end: read JSON documents, run one operation, print a JSON report.

Exit codes: 0 when the operation produced an answer (including "not split"
and "not best"), 1 when the input is well formed but semantically broken
(axiom violations, failed gluing), 2 for unreadable or malformed documents.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import config as cf
from . import documents as docs
from . import improve as im
from . import poset as po
from . import quivercat as qc
from .errors import DocumentError, IncompatibleOrder, InvariantError, PosetConfError


class UsageError(DocumentError):
    pass


def _load(path: str, field: int | None, *kinds: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    doc = docs.loads(text)
    docs.check_kind(doc, *kinds)
    return doc, docs.READERS[doc["kind"]](doc, field)


def _subset_arg(text: str) -> list[str]:
    text = text.strip()
    if text.startswith("["):
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"subset argument is not JSON: {exc.msg}") from None
        return [str(x) for x in value]
    return [x for x in (s.strip() for s in text.split(",")) if x]


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in _subset_arg(text)]
    except ValueError:
        raise UsageError("parameter must be a list of integers") from None


def _pairs(pairs) -> list[list[str]]:
    return [list(p) for p in pairs]


def _subsets(P: po.FinitePoset, masks) -> list[list[str]]:
    return [P.sorted_labels(m) for m in masks]


def _step_doc(step: im.ImprovementStep) -> dict:
    return {
        "pair": list(step.pair),
        "parameter": list(step.parameter),
        "poset": step.result.poset.to_dict(),
        "result": docs.config_doc(step.result),
    }


# commands; each returns (report, exit code)


def cmd_poset(a) -> tuple[dict, int]:
    _, P = _load(a.poset, a.field, "poset")
    report = {
        "kind": "poset_report",
        "poset": P.to_dict(),
        "ssets": _subsets(P, P.ssets),
        "qsets": _subsets(P, P.qsets),
        "fsets": _subsets(P, P.fsets),
        "covering_pairs": _pairs(po.covering_pairs(P)),
    }
    if P.n <= 10:
        report["linear_extensions"] = po.count_linear_extensions(P)
    return report, 0


def cmd_rep(a) -> tuple[dict, int]:
    _, r = _load(a.rep, a.field, "rep")
    return {"kind": "rep_report", "valid": True, "nilpotent": qc.is_nilpotent(r), "dim_vector": r.dim_vector()}, 0


def cmd_hom(a) -> tuple[dict, int]:
    _, x = _load(a.x, a.field, "rep")
    _, y = _load(a.y, a.field, "rep")
    basis = qc.hom_space(x, y)
    return {"kind": "hom_report", "dimension": len(basis), "basis": [docs.mor_body(b) for b in basis]}, 0


def cmd_jh(a) -> tuple[dict, int]:
    _, x = _load(a.rep, a.field, "rep")
    P, table = qc.jh_poset(x)
    return {
        "kind": "jh_report",
        "poset": P.to_dict(),
        "leq": sorted(_pairs(P.pairs())),
        "ssets": {docs.subset_key(k): docs.subobject_body(s) for k, s in table.items()},
        "composition_series": po.count_linear_extensions(P) if P.n <= 10 else None,
    }, 0


def cmd_build(a) -> tuple[dict, int]:
    _, fam = _load(a.family, a.field, "family")
    return docs.config_doc(cf.build_from_subobjects(fam)), 0


def cmd_validate(a) -> tuple[dict, int]:
    _, c = _load(a.config, a.field, "config")
    vs = cf.validate_config(c)
    return {"kind": "validation", "result": docs.violations_doc(vs)}, (1 if vs else 0)


def _valid_config(path: str, field: int | None) -> cf.Configuration:
    _, c = _load(path, field, "config")
    vs = cf.validate_config(c)
    if vs:
        raise _Invalid(vs)
    return c


class _Invalid(Exception):
    def __init__(self, violations):
        self.violations = violations


def cmd_extract(a) -> tuple[dict, int]:
    return docs.family_doc(cf.extract_subobjects(_valid_config(a.config, a.field))), 0


def cmd_kappa(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    return {"kind": "kappa_report", "kappa": cf.kappa(c)}, 0


def cmd_sub(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    return docs.config_doc(cf.subconfiguration(c, _subset_arg(a.subset))), 0


def cmd_quot(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    _, (target, phi) = _load(a.map, a.field, "map")
    return docs.config_doc(cf.quotient_configuration(c, target, phi)), 0


def cmd_substitute(a) -> tuple[dict, int]:
    outer = _valid_config(a.outer, a.field)
    inner = _valid_config(a.inner, a.field)
    _, spec = _load(a.spec, a.field, "gluing")
    alpha = None
    if a.alpha:
        _, hat, check = cf._gluing_pieces(outer, inner, spec)
        try:
            with open(a.alpha, encoding="utf-8") as fh:
                alpha_doc = docs.loads(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {a.alpha}: {exc.strerror}") from None
        alpha = docs.read_config_morphism(alpha_doc, check, hat)
    result, sub_w, quot_w = cf.substitute(outer, inner, spec, alpha)
    return {
        "kind": "substitution",
        "result": docs.config_doc(result),
        "sub_witness": docs.config_morphism_doc(sub_w),
        "quot_witness": docs.config_morphism_doc(quot_w),
    }, 0


def cmd_split(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    rep = im.split_pair_test(c, a.i, a.j)
    return {
        "kind": "split_report",
        "pair": [a.i, a.j],
        "split": rep.split,
        "retraction": docs.mor_body(rep.retraction) if rep.split else None,
    }, 0


def cmd_improve(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    if not im.split_pair_test(c, a.i, a.j).split:
        return {"kind": "improvement", "pair": [a.i, a.j], "split": False}, 0
    step = im.one_step_improve(c, a.i, a.j, _int_list(a.param))
    return {"kind": "improvement", "split": True, **_step_doc(step)}, 0


def cmd_enumerate(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    steps = im.enumerate_improvements(c, a.i, a.j, max_enum=a.max_enum)
    return {"kind": "improvements", "pair": [a.i, a.j], "count": len(steps), "improvements": [_step_doc(s) for s in steps]}, 0


def cmd_best(a) -> tuple[dict, int]:
    c = _valid_config(a.config, a.field)
    best, trail = im.best_search(c)
    return {
        "kind": "best_report",
        "steps": len(trail),
        "trail": [{"pair": list(s.pair), "parameter": list(s.parameter), "poset": s.result.poset.to_dict()} for s in trail],
        "best_poset": best.poset.to_dict(),
        "best": docs.config_doc(best),
    }, 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=None, metavar="P", help="prime field for documents without one")
    common.add_argument("--out", default=None, metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--max-enum", type=int, default=im.MAX_ENUM, metavar="N", help="cap on enumerated improvements")
    common.add_argument("--seed", type=int, default=None, metavar="N", help="reserved; all algorithms are deterministic")

    parser = argparse.ArgumentParser(prog="posetconf", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *args, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in args:
            if arg.startswith("?"):
                sp.add_argument(arg[1:], nargs="?", default=None)
            else:
                sp.add_argument(arg)
        sp.set_defaults(fn=fn)

    add("poset", cmd_poset, "poset", help="s-, q-, f-sets, covering pairs, linear extensions")
    add("rep", cmd_rep, "rep", help="validate a representation")
    add("hom", cmd_hom, "x", "y", help="basis of Hom(X, Y)")
    add("jh", cmd_jh, "rep", help="Jordan-Hoelder poset of a multiplicity-free nilpotent rep")
    add("build", cmd_build, "family", help="configuration from a subobject family")
    add("validate", cmd_validate, "config", help="check the configuration axioms")
    add("extract", cmd_extract, "config", help="subobject family of a configuration")
    add("kappa", cmd_kappa, "config", help="dimension vectors of the singleton objects")
    add("sub", cmd_sub, "config", "subset", help="subconfiguration on an f-set")
    add("quot", cmd_quot, "config", "map", help="quotient configuration along a map")
    add("substitute", cmd_substitute, "outer", "inner", "spec", "?alpha", help="glue inner into outer")
    add("split", cmd_split, "config", "i", "j", help="split test at a covering pair")
    add("improve", cmd_improve, "config", "i", "j", "?param", help="one-step improvement")
    add("enumerate", cmd_enumerate, "config", "i", "j", help="all one-step improvements at a pair")
    add("best", cmd_best, "config", help="greedy path to a best configuration")
    return parser


def _emit(report, out: str | None) -> None:
    text = docs.dumps(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        report, code = args.fn(args)
    except _Invalid as exc:
        report, code = {"kind": "error", "error": "InvalidConfiguration", "violations": [str(v) for v in exc.violations]}, 1
    except (InvariantError, DocumentError) as exc:
        err = {"kind": "error", "error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InvariantError):
            err["invariant"] = exc.invariant
        if getattr(exc, "line", None) is not None:
            err["line"], err["column"] = exc.line, exc.column
        sys.stderr.write(docs.dumps(err))
        return 2
    except IncompatibleOrder as exc:
        report, code = {"kind": "error", "error": "IncompatibleOrder", "message": str(exc)}, 0
    except PosetConfError as exc:
        report, code = {"kind": "error", "error": type(exc).__name__, "message": str(exc)}, 1
    try:
        _emit(report, args.out)
    except OSError as exc:
        sys.stderr.write(f"cannot write {args.out}: {exc.strerror}\n")
        return 2
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
