"""Command-line front end: ``eawg {semilattices,present,verify,normal-form,roots}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .presentation import (HypothesisError, UnknownGeneratorError, WordSyntaxError, evaluate,
                           collect, parse_word, perturb_relator, present_H, present_W,
                           random_word, render_word, verify_presentation)
from .rootsystem import AugmentedRootSet, check_axioms, enumerate_bounded
from .semilattice import (STANDARD_CLASSES, Semilattice, format_class, full_lattice,
                          parse_class, standard_indices, standard_semilattice)
from .weylgroup import NotInGroupError, WeylContext, central_data, pairs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP = [("A", 1), ("A", 2), ("A", 3), ("D", 4)]


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _color_enabled() -> bool:
    return os.environ.get("EAWG_COLOR", "0") == "1"


def _status(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if _color_enabled():
        return f"\x1b[{32 if ok else 31}m{word}\x1b[0m"
    return word


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def _semilattice(args) -> Semilattice:
    try:
        if args.class_ is not None:
            return Semilattice(parse_class(args.class_, args.nullity))
        if args.index is not None:
            return standard_semilattice(args.nullity, args.index)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return full_lattice(args.nullity)


def _context(args) -> WeylContext:
    if args.type is None or args.rank is None:
        raise ConfigError("--type and --rank are required")
    S = _semilattice(args)
    try:
        return WeylContext(args.type, args.rank, S)
    except (ValueError, AssertionError) as exc:
        raise ConfigError(str(exc)) from None


def _presentation(ctx: WeylContext, group: str):
    build = present_W if group == "W" else present_H
    try:
        return build(ctx.cartan, ctx.semilattice)
    except HypothesisError as exc:
        raise ConfigError(str(exc)) from None


def _nrs_text(nrs: dict) -> str:
    if not nrs:
        return "-"
    return " ".join(f"n({r},{s})={n}" for (r, s), n in sorted(nrs.items()))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _semilattice_row(S: Semilattice) -> dict:
    cd = central_data(S)
    return {
        "nullity": S.nullity,
        "index": S.index,
        "class": format_class(S.support),
        "subsets": [list(J) for J in S.support.sorted_subsets()],
        "lattice": S.is_lattice(),
        "nrs": [cd.nrs[p] for p in pairs(S.nullity)],
        "pairs": [list(p) for p in pairs(S.nullity)],
        "condition000": cd.condition000,
    }, cd


def cmd_semilattices(args) -> int:
    if args.class_ is not None:
        if args.nullity is None:
            raise ConfigError("--class needs --nullity")
        try:
            sls = [Semilattice(parse_class(args.class_, args.nullity))]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        nus = [args.nullity] if args.nullity is not None else sorted({nu for nu, _ in STANDARD_CLASSES})
        sls = []
        for nu in nus:
            idx = standard_indices(nu)
            if not idx:
                raise ConfigError(f"no tabulated semilattices for nullity {nu}; pass --class")
            sls += [standard_semilattice(nu, m) for m in idx]
    rows = []
    lines = []
    for S in sls:
        row, cd = _semilattice_row(S)
        rows.append(row)
        lines.append(f"nu={S.nullity}  index={S.index}  class={row['class']}  "
                     f"{_nrs_text(cd.nrs)}  condition000={str(cd.condition000).lower()}")
    if args.format == "json":
        _emit(args, _dump_json({"semilattices": rows}))
    else:
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_present(args) -> int:
    ctx = _context(args)
    P = _presentation(ctx, args.group)
    _emit(args, _dump_json(P.to_dict()) if args.format == "json" else P.render_text())
    return EXIT_OK


def _roundtrip(ctx: WeylContext, P, rng: random.Random, samples: int, max_len: int) -> list:
    failures = []
    for _ in range(samples):
        w = random_word(P, rng.randint(0, max_len), rng)
        g = evaluate(w, ctx, P)
        try:
            nf = ctx.w_normal_form(g)
            if not nf.verified:
                raise NotInGroupError("reconstruction mismatch")
        except NotInGroupError as exc:
            failures.append({"word": render_word(w), "error": str(exc)})
    return failures


def _verify_one(ctx: WeylContext, group: str, args) -> dict:
    P = _presentation(ctx, group)
    injected = None
    if args.inject_fault == "relator":
        P, idx = perturb_relator(P)
        injected = idx
    report = verify_presentation(P, ctx, pairs_count=args.pairs, seed=args.seed)
    rng = random.Random(args.seed)
    rt = _roundtrip(ctx, P, rng, args.samples, 20)
    doc = {
        "type": ctx.cartan.type,
        "rank": ctx.rank,
        "nullity": ctx.nullity,
        "index": ctx.semilattice.index,
        "class": format_class(ctx.semilattice.support),
        **report.to_dict(),
        "normal_form": {"samples": args.samples, "failures": rt},
        "injected_relator": injected,
    }
    doc["ok"] = report.ok and not rt
    return doc


def _sweep_contexts():
    for t, l in SWEEP:
        for nu in range(0, 4):
            for m in standard_indices(nu):
                S = standard_semilattice(nu, m)
                if l >= 2 and not S.is_lattice():
                    continue
                yield WeylContext(t, l, S)


def cmd_verify(args) -> int:
    if args.type is None and args.rank is None:
        if args.index is not None or args.class_ is not None:
            raise ConfigError("--index/--class need --type and --rank")
        contexts = list(_sweep_contexts())
    else:
        contexts = [_context(args)]
    groups = [args.group] if args.group else ["H", "W"]
    results = [_verify_one(ctx, g, args) for ctx in contexts for g in groups]
    ok = all(r["ok"] for r in results)
    if args.format == "json":
        _emit(args, _dump_json({"seed": args.seed, "ok": ok, "results": results}))
    else:
        lines = []
        for r in results:
            n_rel = len(r["relators"])
            bad = [x for x in r["relators"] if not x["passed"]]
            inj = r["injectivity"]
            lines.append(f"{_status(r['ok'])}  {r['group']}  {r['type']}{r['rank']}  nu={r['nullity']}  "
                         f"index={r['index']}  relators {n_rel - len(bad)}/{n_rel}  "
                         f"pairs {inj['pairs'] - len(inj['disagreements'])}/{inj['pairs']}  "
                         f"normal-form {r['normal_form']['samples'] - len(r['normal_form']['failures'])}"
                         f"/{r['normal_form']['samples']}")
            for x in bad:
                lines.append(f"    failed relator #{x['index']}: {x['relation']}")
            for d in inj["disagreements"]:
                lines.append(f"    collect/matrix disagree: {d['u']}  vs  {d['v']}")
            for f in r["normal_form"]["failures"]:
                lines.append(f"    normal form failed for {f['word']}: {f['error']}")
        lines.append(f"overall: {_status(ok)} (seed {args.seed})")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_normal_form(args) -> int:
    if args.word is None:
        raise ConfigError("--word is required")
    ctx = _context(args)
    P = _presentation(ctx, "W")
    try:
        word = parse_word(args.word, P.generators)
    except (WordSyntaxError, UnknownGeneratorError) as exc:
        raise ConfigError(str(exc)) from None
    g = evaluate(word, ctx, P)
    try:
        nf = ctx.w_normal_form(g)
    except NotInGroupError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    collected = collect(word, P)
    doc = {"word": render_word(word), "collected": render_word(collected), **nf.to_dict()}
    if args.format == "json":
        _emit(args, _dump_json(doc))
    else:
        fin = " * ".join(f"x{i}" for i in nf.finite_part) or "1"
        lines = [f"word:        {doc['word']}",
                 f"finite part: {fin}"]
        for r in range(1, ctx.nullity + 1):
            row = " ".join(f"n({i},{r})={nf.n[i - 1][r - 1]}" for i in range(1, ctx.rank + 1))
            lines.append(f"sigma_{r}:     {row}")
        if ctx.pairs:
            lines.append("central:     " + " ".join(
                f"c({r},{s})^{m}" for (r, s), m in zip(ctx.pairs, nf.central)))
            lines.append("in F(S):     " + " ".join(
                f"z({r},{s})^{m}" for (r, s), m in zip(ctx.pairs, nf.central_fs)))
        lines.append(f"collected:   {doc['collected']}")
        lines.append(f"verified:    {str(nf.verified).lower()}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if nf.verified else EXIT_FAIL


def cmd_roots(args) -> int:
    ctx = _context(args)
    if args.bound < 0:
        raise ConfigError("--bound must be non-negative")
    R = ctx.rootsystem
    if args.inject_fault == "root":
        R = AugmentedRootSet(R, [tuple(2 * x for x in ctx.signature.alpha(1))])
    roots = enumerate_bounded(R, args.bound)
    report = None
    if args.check_axioms:
        if args.bound < 2:
            raise ConfigError("--check-axioms needs --bound >= 2")
        report = check_axioms(R, args.bound)
    ok = report is None or report.passed
    if args.format == "json":
        doc = {"type": ctx.cartan.type, "rank": ctx.rank, "nullity": ctx.nullity,
               "index": ctx.semilattice.index, "bound": args.bound,
               "roots": [list(v) for v in roots]}
        if report is not None:
            doc["axioms"] = report.to_dict()
        _emit(args, _dump_json(doc))
    else:
        lines = ["[" + ", ".join(str(x) for x in v) + "]" for v in roots]
        if report is not None:
            lines.append(f"# axioms (bound {args.bound}): {_status(report.passed)}")
            for o in report.to_dict()["axioms"]:
                extra = f"  skipped {o['skipped']}" if o["skipped"] else ""
                lines.append(f"# {o['axiom']}: {_status(o['passed'])}  checked {o['checked']}{extra}")
                for f in o["failures"][:3]:
                    lines.append(f"#     witness {f}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_config(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", choices=["A", "D", "E"], help="Cartan type")
    p.add_argument("--rank", type=int, help="rank l")
    p.add_argument("--nullity", type=int, default=0, help="nullity nu (default 0)")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--index", type=int, help="tabulated semilattice index (nu <= 3)")
    sel.add_argument("--class", dest="class_", metavar="CLASS",
                     help='explicit supporting class, e.g. "{},{1},{2}"')


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eawg", description=(
        "Extended affine Weyl groups of simply laced type: semilattices, "
        "presentations, normal forms and root enumeration."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("semilattices", help="list tabulated semilattices with n(r,s)")
    p.add_argument("--nullity", type=int)
    p.add_argument("--class", dest="class_", metavar="CLASS")
    _add_output(p)
    p.set_defaults(func=cmd_semilattices)

    p = sub.add_parser("present", help="emit the presentation of H-hat or W-hat")
    _add_config(p)
    p.add_argument("--group", choices=["H", "W"], default="W")
    _add_output(p)
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("verify", help="check a presentation against the matrix realisation")
    _add_config(p)
    p.add_argument("--group", choices=["H", "W"], help="default: both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=100, help="random word pairs for injectivity")
    p.add_argument("--samples", type=int, default=50, help="normal-form round trips")
    p.add_argument("--inject-fault", choices=["relator"])
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normal-form", help="normal form of a word over x_i, y_i_r, z_r_s")
    _add_config(p)
    p.add_argument("--word", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("roots", help="enumerate roots with sigma coordinates in [-N, N]")
    _add_config(p)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--check-axioms", action="store_true")
    p.add_argument("--inject-fault", choices=["root"], help="add 2*alpha_1 to the root set")
    _add_output(p)
    p.set_defaults(func=cmd_roots)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"eawg: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"eawg: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
