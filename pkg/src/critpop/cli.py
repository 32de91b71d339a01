"""Command-line interface: verify | populate | fundamental | selfdual | count | identities.

Configs are JSON: {"root_system": "A2", "weights": [[1,0], ...],
"points": ["0", "1/2", ...], "tuple": ["1 1", ...]}. Tuples use the
canonical polynomial text form (space-separated rationals, lowest degree
first).  Every report line that certifies a named fact carries a
machine-greppable tag such as [ind-thm] or [wr-u-lem].  Exit code 0 means
every asserted check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bc as bcmod
from .core import (
    ProblemInstance,
    check_separating,
    degree_vector,
    heine_stieltjes_test,
    is_generic,
    monic_tuple,
    ones_tuple,
    t_polys,
    weight_at_infinity,
)
from .errors import CritpopError
from .fundamental import (
    exponents,
    expected_exponents_finite,
    expected_exponents_infinity,
    flag_from_tuple,
    fundamental_space,
    generating_morphism,
    pluecker_check,
    schubert_index_finite,
    schubert_index_infinity,
    verify_dp,
)
from .poly import Poly, identity_suite
from .reproduction import (
    degree_vector_to_weyl,
    explore_population,
    is_fertile,
    predicted_degree_vectors,
)
from .roots import dominant_representative
from .schubert import multiplicity_bound, population_count_report
from .selfduality import framing_of, gram, is_isotropic, is_selfdual, quasi_witt_basis


class Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[dict] = []
        self.ok = True

    def add(self, tag: str, text: str, passed: bool = True):
        self.lines.append({"tag": tag, "text": text, "pass": passed})
        self.ok = self.ok and passed

    def emit(self) -> int:
        if self.fmt == "json":
            print(json.dumps({"ok": self.ok, "lines": self.lines}, sort_keys=True, indent=2))
        else:
            for ln in self.lines:
                status = "PASS" if ln["pass"] else "FAIL"
                print(f"[{ln['tag']}] {ln['text']} : {status}")
        return 0 if self.ok else 1


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _instance(cfg: dict) -> ProblemInstance:
    return ProblemInstance.from_config(cfg)


def _tuple_from_config(cfg: dict, pi: ProblemInstance):
    if "tuple" in cfg:
        return monic_tuple(Poly.from_text(t) for t in cfg["tuple"])
    return ones_tuple(pi.rd)


def _fmt_tuple(y) -> str:
    return "(" + ", ".join(str(p) for p in y) + ")"


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    pi = _instance(cfg)
    y = _tuple_from_config(cfg, pi)
    rep = Report(args.format)
    ok, reason = is_generic(pi, y)
    rep.add("generic", f"tuple {_fmt_tuple(y)}: {reason}", ok)
    if ok:
        if pi.rd.kind == "A":
            crit = heine_stieltjes_test(pi, y)
            rep.add("deg-2-lem", f"divisibility criterion on {_fmt_tuple(y)}", crit)
            rep.add(
                "fertile-cor",
                "criterion agrees with direction-wise solvability",
                crit == is_fertile(pi, y),
            )
        else:
            crit = bcmod.bc_critical_test(pi, y)
            rep.add("bc-critical", f"B/C criterion on {_fmt_tuple(y)}", crit)
            rep.add("fold-equiv", "criticality transfers through folding",
                    bcmod.fold_equivalence(pi, y))
    return rep.emit()


def cmd_populate(args) -> int:
    cfg = _load_config(args.config)
    pi = _instance(cfg)
    y0 = _tuple_from_config(cfg, pi)
    rep = Report(args.format)
    atlas = explore_population(pi, y0, args.max_degree, args.seed)
    lam0 = weight_at_infinity(pi, y0)
    dom = dominant_representative(pi.rd, lam0)
    if dom is None:
        rep.add("on-wall", "weight at infinity lies on a shifted wall", False)
        return rep.emit()
    lam_dom, _ = dom
    predicted = predicted_degree_vectors(pi, lam_dom, args.max_degree)
    reached = set(atlas.members)
    rep.add(
        "inf-weight",
        f"reached {len(reached)} degree vectors == predicted {len(predicted)}",
        reached == predicted,
    )
    rows = []
    for l in atlas.degree_vectors():
        w = degree_vector_to_weyl(pi, lam_dom, l)
        word = "s" + " s".join(str(i + 1) for i in w.word) if w and w.word else "e"
        rows.append((l, word))
        member = atlas.members[l]
        rep.add("member", f"l={l} w={word} tuple={_fmt_tuple(member.tuple_y)}")

    def _check(l):
        m = atlas.members[l]
        if m.generic:
            return heine_stieltjes_test(pi, m.tuple_y) if pi.rd.kind == "A" else (
                bcmod.bc_critical_test(pi, m.tuple_y)
            )
        return is_fertile(pi, m.tuple_y)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        results = list(ex.map(_check, atlas.degree_vectors()))
    rep.add("duplicate-thm", "every stored member is critical/fertile", all(results))
    lvec = degree_vector(y0)
    rep.add(
        "separating",
        f"separating condition at l={lvec}",
        check_separating(pi, lvec),
    )
    if args.output:
        text = atlas.to_json(args.seed, args.max_degree, cfg["root_system"])
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.add("atlas", f"wrote {args.output}")
    return rep.emit()


def cmd_fundamental(args) -> int:
    cfg = _load_config(args.config)
    pi = _instance(cfg)
    y = _tuple_from_config(cfg, pi)
    rep = Report(args.format)
    if pi.rd.kind != "A":
        rep.add("usage", "fundamental expects a type-A instance", False)
        return rep.emit()
    if not heine_stieltjes_test(pi, y):
        rep.add("deg-2-lem", f"{_fmt_tuple(y)} is not critical", False)
        return rep.emit()
    space = fundamental_space(pi, y)
    rep.add("wr-u-lem", f"basis {[str(b) for b in space.basis]}")
    d = max(space.degrees())
    for s, z in enumerate(pi.points):
        got = exponents(space, z)
        want = expected_exponents_finite(pi, s)
        rep.add("z-exp", f"exponents at z={z}: {got}", got == want)
        rep.add("ram-a", f"a({z}) = {schubert_index_finite(space, z)}")
    got_inf = exponents(space, "inf")
    want_inf = expected_exponents_infinity(pi, y)
    rep.add("inf-exp", f"exponents at infinity: {got_inf}", got_inf == want_inf)
    rep.add("ram-a", f"a(inf) = {schubert_index_infinity(space, d)}")
    rep.add("pluecker", "sum of ramification codimensions",
            pluecker_check(space, pi.points, d))
    ts = t_polys(pi)
    flag = flag_from_tuple(space, y, ts)
    rep.add("pol-crit", "generating morphism round trip",
            generating_morphism(space, flag, ts) == y)
    rep.add("ind-thm", "factored operator annihilates the space",
            verify_dp(pi, [space], y))
    rep.add("first-coor", "y_1 lies in the space", space.contains(y[0]))
    return rep.emit()


def cmd_selfdual(args) -> int:
    cfg = _load_config(args.config)
    pi = _instance(cfg)
    y = _tuple_from_config(cfg, pi)
    rep = Report(args.format)
    if pi.rd.kind == "A":
        if not heine_stieltjes_test(pi, y):
            rep.add("deg-2-lem", f"{_fmt_tuple(y)} is not critical", False)
            return rep.emit()
        space = fundamental_space(pi, y)
        framing = framing_of(space)
        sd = is_selfdual(space, framing)
        rep.add("selfdual", f"dim {space.dim} space selfdual: {sd}")
        if not sd:
            return rep.emit()
    else:
        space, framing = bcmod.bc_fundamental_space(pi, y)
        rep.add("so-self" if pi.rd.kind == "B" else "sp-self",
                f"folded fundamental space selfdual, dim {space.dim}")
    gm = gram(space, framing)
    parity = "skew" if space.dim % 2 == 0 else "symmetric"
    ok = gm.is_skew() if space.dim % 2 == 0 else gm.is_symmetric()
    rep.add("symm", f"canonical form is {parity}", ok)
    rep.add("gram", "rows " + "; ".join(
        "[" + " ".join(str(v) for v in row) + "]" for row in gm.entries
    ))
    qw = quasi_witt_basis(space, framing)
    rep.add("dar-1", f"quasi-Witt ratios {[str(a) for a in qw.ratios]}")
    rep.add("witt", f"normalization status: {qw.status}")
    rep.add("isotropic", "quasi-Witt flag is isotropic",
            is_isotropic(space, framing, qw.flag))
    if pi.rd.kind in "BC":
        report = bcmod.bc_population_as_isotropic_flags(
            pi, space, framing, args.samples, args.seed
        )
        rep.add("cor-so" if pi.rd.kind == "B" else "cor-sp",
                f"{report.generic_hits} isotropic flag samples unfold to critical tuples",
                report.all_critical and report.all_symmetric)
    return rep.emit()


def cmd_count(args) -> int:
    cfg = _load_config(args.config)
    pi = _instance(cfg)
    rep = Report(args.format)
    if pi.rd.kind != "A":
        rep.add("usage", "count expects a type-A instance", False)
        return rep.emit()
    if pi.rd.rank == 1:
        for l in range(args.max_degree + 1):
            lam = sum(w[0] for w in pi.weights) - 2 * l
            if lam < 0:
                continue
            exact, bound = population_count_report(pi, l)
            rep.add("estimate", f"l={l}: exact {exact} <= bound {bound}", exact <= bound)
    else:
        y = _tuple_from_config(cfg, pi)
        lam_inf = weight_at_infinity(pi, y)
        dom = dominant_representative(pi.rd, lam_inf)
        if dom is None:
            rep.add("on-wall", "weight at infinity on a wall: no critical points", True)
            return rep.emit()
        bound = multiplicity_bound(pi, dom[0])
        rep.add("estimate", f"multiplicity bound {bound}")
    return rep.emit()


def cmd_identities(args) -> int:
    rep = Report(args.format)
    try:
        result = identity_suite(args.seed, args.trials)
        rep.add("wronskian-identities",
                f"{result.trials} trials, checks {result.checks}", result.passed)
    except CritpopError as exc:
        rep.add("wronskian-identities", str(exc), False)
    return rep.emit()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="critpop")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_config=True):
        if need_config:
            p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-degree", type=int, default=8)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--output", default=None)
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("verify", help="genericity + criterion on a supplied tuple")
    common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("populate", help="explore a population and write the atlas")
    common(p)
    p.set_defaults(func=cmd_populate)
    p = sub.add_parser("fundamental", help="fundamental space, exponents, ramification")
    common(p)
    p.set_defaults(func=cmd_fundamental)
    p = sub.add_parser("selfdual", help="dual space, Gram matrix, isotropic flags")
    common(p)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_selfdual)
    p = sub.add_parser("count", help="multiplicity bounds and rank-one exact counts")
    common(p)
    p.set_defaults(func=cmd_count)
    p = sub.add_parser("identities", help="appendix Wronskian identity suite")
    common(p, need_config=False)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_identities)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CritpopError as exc:
        print(f"[error] {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
