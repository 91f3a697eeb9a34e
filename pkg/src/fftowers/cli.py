"""Command-line front end.

Exit codes: 0 success, 1 a verification came out false, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import genus as gn
from .errors import TowerError
from .gf import format_zp_poly, make_field
from .parse import parse_rational, parse_value
from .probe import DEFAULT_LEVEL_CAP, census, factor_table, split_test
from .ratfunc import INF, projective_line
from .specfile import load_catalog, parse_spec
from .subtower import (
    DEFAULT_CEILING,
    SearchConfig,
    default_jobs,
    derive_z_relation,
    search_catalog,
    search_f,
    search_space_size,
    verify_equation,
)
from .tower import check_lemma1, check_separability, check_symmetry

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class Output:
    """Aligned tables by default, tab-separated rows with --porcelain."""

    def __init__(self, porcelain: bool, stream=None):
        self.porcelain = porcelain
        self.stream = stream or sys.stdout

    def line(self, text: str = "") -> None:
        if not self.porcelain:
            print(text, file=self.stream)

    def kv(self, key: str, value) -> None:
        if self.porcelain:
            print(f"{key}\t{value}", file=self.stream)
        else:
            print(f"{key}: {value}", file=self.stream)

    def table(self, header: Sequence[str], rows: Sequence[Sequence]) -> None:
        rows = [[str(c) for c in r] for r in rows]
        if self.porcelain:
            for r in rows:
                print("\t".join(r), file=self.stream)
            return
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(), file=self.stream)
        print("  ".join("-" * w for w in widths), file=self.stream)
        for r in rows:
            print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=self.stream)


def _fmt_point(F, code) -> str:
    return "inf" if code is None else F.format_code(code)


def _point_code(text: str, F):
    v = parse_value(text, F)
    return None if v is INF else v.value


# -- subcommands ---------------------------------------------------------------------

def cmd_field(args, out: Output) -> int:
    if args.spec:
        F = parse_spec(args.spec).field
    else:
        if args.p is None:
            raise TowerError("give --spec or --p [--modulus]")
        F = make_field(args.p, args.modulus or "t", args.symbol)
    out.kv("p", F.p)
    out.kv("q", F.q)
    out.kv("modulus", format_zp_poly(F.modulus))
    out.kv("primitive", F.format_code(F.primitive))
    out.line()
    rows = []
    for x in range(F.q):
        log = "-" if x == 0 else F.log(x)
        rows.append([x, F.format_code(x), log])
    out.table(["code", "element", "log"], rows)
    return EXIT_OK


def _load_tower(path, name):
    spec = parse_spec(path)
    return spec, spec.tower(name)


def cmd_tower_check(args, out: Output) -> int:
    _, t = _load_tower(args.spec, args.tower)
    out.kv("tower", t.label)
    out.kv("step", t.describe())
    rep = check_lemma1(t)
    out.kv("shape", rep.shape.value)
    out.kv("conclusion", rep.conclusion.value)
    if rep.profile is not None:
        p = rep.profile
        out.kv("profile", f"m={p.m} deg_b1={p.deg_b1} deg_b2={p.deg_b2} r={p.r}")
    out.table(["condition", "ok"], [[c, "pass" if ok else "fail"] for c, ok in rep.conditions])
    for n in rep.notes:
        out.kv("note", n)
    sep = check_separability(t)
    out.kv("separability", str(sep))
    if sep.resultant is not None:
        out.kv("resultant", sep.resultant.format(t.old_var))
    sym = check_symmetry(t)
    out.kv("symmetry", str(sym))
    if sym.caution:
        out.kv("caution", sym.caution)
    return EXIT_OK


def _witness_rows(ws, var="T"):
    return [[w.f.format(var), str(w.properness), w.composite.format(var) if w.composite else "-"] for w in ws]


def cmd_subtower_verify(args, out: Output) -> int:
    spec, sup = _load_tower(args.spec, args.tower)
    _, sub = _load_tower(args.sub, args.sub_tower)
    spec.field.check(sub.field)
    if not (sup.has_ab and sub.has_ab):
        raise TowerError("subtower verification needs (a, b)-towers")
    f = parse_rational(args.f, spec.field)
    w = verify_equation(sup.a, sup.b, f, sub.a, sub.b)
    out.kv("f", f.format())
    out.kv("equation_holds", str(w.equation_holds).lower())
    if w.equation_holds:
        out.kv("composite", w.left.format())
    else:
        out.kv("left", w.left.format())
        out.kv("right", w.right.format())
    out.kv("properness", str(w.properness))
    out.kv("properness_reason", w.properness.reason)
    for a in w.properness.assumptions:
        out.kv("assumption", a)
    out.kv("z", derive_z_relation(sup.a, f).format(sup.old_var))
    return EXIT_OK if w.equation_holds else EXIT_FALSE


def cmd_subtower_search(args, out: Output) -> int:
    spec, sup = _load_tower(args.spec, args.tower)
    cfg = SearchConfig(args.max_deg, args.max_deg_tilde, args.ceiling, args.jobs)
    out.kv("search_space", search_space_size(spec.field, cfg))
    if args.sub:
        _, sub = _load_tower(args.sub, args.sub_tower)
        spec.field.check(sub.field)
        subs = [sub]
    else:
        subs = load_catalog(spec, args.catalog)
        if not subs:
            raise TowerError("give --sub or a catalog (--catalog FILE or a [catalog] section)")
    if len(subs) == 1:
        ws = search_f(sup.a, sup.b, subs[0].a, subs[0].b, cfg)
        out.kv("witnesses", len(ws))
        out.table(["f", "properness", "composite"], _witness_rows(ws))
        return EXIT_OK
    rows = []
    for hit in search_catalog([sup], subs, cfg):
        for w in hit.witnesses:
            rows.append([hit.sub_label] + _witness_rows([w])[0])
    out.kv("witnesses", len(rows))
    out.table(["sub", "f", "properness", "composite"], rows)
    return EXIT_OK


def cmd_probe_census(args, out: Output) -> int:
    _, t = _load_tower(args.spec, args.tower)
    c = census(t, args.levels, args.cap)
    rat = gn.ratios(c)
    rows = []
    for i in range(c.levels + 1):
        rows.append([
            i, c.rational_places[i], c.upper_bound[i], c.unresolved_nodes[i], c.inert_places[i],
            c.affine_chains[i], c.degrees[i], rat.place_ratios[i],
        ])
    out.table(["level", "N", "N_upper", "unresolved", "inert", "affine", "degree", "N/degree"], rows)
    if not c.exact:
        out.kv("warning", "unresolved nodes: N is a lower bound, N_upper an upper bound")
    out.line(f"ratios are {rat.disclaimer}")
    return EXIT_OK


def cmd_probe_split(args, out: Output) -> int:
    _, t = _load_tower(args.spec, args.tower)
    beta = _point_code(args.at, t.field)
    v = split_test(t, beta, args.levels)
    out.kv("at", _fmt_point(t.field, beta))
    out.kv("result", str(v))
    for s in v.substitutions:
        out.kv("substitution", f"k={s.k} c={t.field.format_code(s.c)} u={s.format(t.field)}")
    return EXIT_OK


def cmd_probe_factor(args, out: Output) -> int:
    _, t = _load_tower(args.spec, args.tower)
    F = t.field
    if args.at:
        betas = [_point_code(a, F) for a in args.at]
    else:
        betas = [None if p is INF else p.value for p in projective_line(F)]
    rows = []
    for r in factor_table(t, betas):
        bv = "" if not t.has_ab else _fmt_point(F, r.b_value)
        rows.append([_fmt_point(F, r.beta), bv, r.reduction.poly.format(), r.reduction.format(), r.status.value])
    out.table(["beta", "b(beta)", "phi(T)", "factorization", "status"], rows)
    return EXIT_OK


def cmd_genus_bound(args, out: Output) -> int:
    if args.recurrence:
        g0, *ns = args.recurrence
        led = gn.ledger_from_recurrence(ns, g0)
        rows = [[i, g, led.rules[i - 1] if i else "base"] for i, g in enumerate(led.bounds)]
        out.table(["level", "genus_lb", "rule"], rows)
    elif args.hurwitz:
        m, g0, *ram = args.hurwitz
        data = [gn.RamificationDatum.parse(r) for r in ram]
        g = gn.hurwitz_bound(int(m), int(g0), data)
        out.kv("genus_lb", g)
        out.kv("different_lb", sum(d.different_lb for d in data))
    elif args.hasse_weil:
        N, q = args.hasse_weil
        out.kv("min_genus", gn.hasse_weil_min_genus(N, q))
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fftowers", description="Recursive towers of function fields over finite fields.")
    ap.add_argument("--porcelain", action="store_true", help="tab-separated machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS)

    def spec_args(p):
        p.add_argument("--spec", required=True, help="spec file")
        p.add_argument("--tower", help="tower name when the spec has several")

    p = sub.add_parser("field", parents=[common], help="field summary and element table")
    p.add_argument("--spec")
    p.add_argument("--p", type=int)
    p.add_argument("--modulus")
    p.add_argument("--symbol", default="g")
    p.set_defaults(func=cmd_field)

    tower = sub.add_parser("tower", help="static checks").add_subparsers(dest="action", required=True)
    p = tower.add_parser("check", parents=[common])
    spec_args(p)
    p.set_defaults(func=cmd_tower_check)

    st = sub.add_parser("subtower", help="functional-equation tools").add_subparsers(dest="action", required=True)
    p = st.add_parser("verify", parents=[common])
    spec_args(p)
    p.add_argument("--sub", required=True, help="spec file of the candidate subtower")
    p.add_argument("--sub-tower")
    p.add_argument("--f", required=True, help="linking function, e.g. 't+1'")
    p.set_defaults(func=cmd_subtower_verify)
    p = st.add_parser("search", parents=[common])
    spec_args(p)
    p.add_argument("--sub")
    p.add_argument("--sub-tower")
    p.add_argument("--catalog")
    p.add_argument("--max-deg", type=_nonneg, default=1)
    p.add_argument("--max-deg-tilde", type=_nonneg)
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_subtower_search)

    pr = sub.add_parser("probe", help="place probing").add_subparsers(dest="action", required=True)
    p = pr.add_parser("census", parents=[common])
    spec_args(p)
    p.add_argument("--levels", type=_nonneg, required=True)
    p.add_argument("--cap", type=_nonneg, default=DEFAULT_LEVEL_CAP)
    p.set_defaults(func=cmd_probe_census)
    p = pr.add_parser("split", parents=[common])
    spec_args(p)
    p.add_argument("--at", required=True, help="field element or 'inf'")
    p.add_argument("--levels", type=int, required=True)
    p.set_defaults(func=cmd_probe_split)
    p = pr.add_parser("factor", parents=[common])
    spec_args(p)
    p.add_argument("--at", action="append", help="field element or 'inf' (repeatable; default all)")
    p.set_defaults(func=cmd_probe_factor)

    ge = sub.add_parser("genus", help="genus lower bounds").add_subparsers(dest="action", required=True)
    p = ge.add_parser("bound", parents=[common])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--recurrence", type=_nonneg, nargs="+", metavar="N", help="g0 n_1 n_2 ...")
    g.add_argument("--hurwitz", nargs="+", metavar="X", help="m g0 e[,wild|,tame] ...")
    g.add_argument("--hasse-weil", type=_nonneg, nargs=2, metavar=("N", "Q"))
    p.set_defaults(func=cmd_genus_bound)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", 0) is None:
        args.jobs = default_jobs()
    out = Output(args.porcelain)
    try:
        if args.func is cmd_genus_bound and args.hurwitz and len(args.hurwitz) < 2:
            raise TowerError("--hurwitz needs m g0 [e,...]")
        return args.func(args, out)
    except (TowerError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"fftowers: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
