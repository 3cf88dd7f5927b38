"""Command-line front end: every verification suite and data product.

Exit codes: 0 all executed checks pass, 1 at least one check failed,
2 configuration error (the message names the violated precondition).
Set QVERTEX_THREADS > 1 to dispatch independent registry items on a thread
pool (results are merged in deterministic order).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import fock as fock_mod
from .fock import FockContext, cocycle_condition_check, heisenberg_check, heisenberg_check_cls, monomial_states
from .groups import GroupData, build_group, validate_group
from .report import CheckReport
from .repring import (
    cartan_specialization_check,
    first_xi,
    hermitian_like_check,
    mckay_eigencheck,
    positivity_probe,
    qcartan,
    qp_degeneracy_check,
    second_xi,
)
from .scalar import laurent_str
from .toroidal import SuiteConfig, run_suite, suite_json
from .vertex import (
    VertexEngine,
    contraction_check,
    ope_product_check,
    ope_table_check,
    qpow_consistency_check,
    y_minus,
    y_plus,
)
from .wreath import exp_formula_check, isometry_check
from .fock import ExtState


@dataclass
class Config:
    group: str = "cyclic:2"
    xi: str = "first"
    k: int = -1
    p_exp: int = 1
    max_degree: int = 2
    max_mode: int = 2
    series_order: int = 8
    fmt: str = "text"
    t: float = 2.0
    n: int = 2
    k_twist: int = 0
    l_twist: int = 0
    variant: str = "plus"


class ConfigError(Exception):
    pass


def make_xi(cfg: Config, g: GroupData):
    if cfg.xi == "second":
        if g.cartan_layout is None or g.cartan_layout[0] != "A":
            raise ConfigError("precondition violated: --xi second requires a cyclic group")
        return second_xi(g, cfg.p_exp)
    return first_xi(g)


def emit_reports(cfg: Config, reports: list[CheckReport]) -> int:
    ok = all(r.passed for r in reports)
    if cfg.fmt == "json":
        print(json.dumps({"checks": [r.to_obj() for r in reports]}, sort_keys=False))
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"[{status}] {r.check_id} {r.params} ({r.n_cases} cases)")
            for note in r.notes:
                print(f"        {note}")
            if r.fail_detail:
                print(f"        first failure at {r.fail_detail['where']}")
                print(f"        expected {r.fail_detail['expected']}")
                print(f"        got      {r.fail_detail['got']}")
    return 0 if ok else 1


# --------------------------------------------------------------------------
# registry of check operations (the `all` command must cover every entry)


def _chi_test_states(g, max_degree):
    return monomial_states(g, "chi", max_degree)


def run_repring_checks(cfg: Config, g: GroupData) -> list[CheckReport]:
    xi = make_xi(cfg, g)
    out = [hermitian_like_check(qcartan(xi)), mckay_eigencheck(xi)]
    if g.cartan_layout is not None:
        out.append(cartan_specialization_check(g))
        if g.cartan_layout[0] == "A":
            out.append(qp_degeneracy_check(g, cfg.p_exp))
    for t in (0.5, 2.0):
        out.append(positivity_probe(xi, t))
    return out


def run_fock_checks(cfg: Config, g: GroupData) -> list[CheckReport]:
    ctx = FockContext(make_xi(cfg, g))
    states = monomial_states(g, "chi", cfg.max_degree)
    states_c = monomial_states(g, "cls", cfg.max_degree)
    out = [cocycle_condition_check(fock_mod.LatticeContext(ctx))]
    idx = range(min(2, g.n_classes))
    for m in range(1, cfg.max_mode + 1):
        for i in idx:
            for j in idx:
                out.append(heisenberg_check(ctx, m, -m, i, j, states))
                out.append(heisenberg_check_cls(ctx, m, -m, i, j, states_c))
    out.append(heisenberg_check(ctx, 1, 2, 0, 0, states))
    return out


def run_wreath_checks(cfg: Config, g: GroupData) -> list[CheckReport]:
    ctx = FockContext(make_xi(cfg, g))
    out = []
    for n in range(min(cfg.max_degree, 3) + 1):
        out.append(exp_formula_check(ctx, [(1, g.n_classes - 1, 1)], n, "eta"))
        out.append(exp_formula_check(ctx, [(1, g.n_classes - 1, 0)], n, "eps"))
    out.append(isometry_check(ctx, min(cfg.n, 2), cfg.k_twist, cfg.l_twist))
    return out


def run_vertex_checks(cfg: Config, g: GroupData) -> list[CheckReport]:
    out = [qpow_consistency_check(a, cfg.series_order) for a in (-2, -1, 0, 1, 2)]
    xi = make_xi(cfg, g)
    p_exp = cfg.p_exp if cfg.xi == "second" else None
    eng = VertexEngine(FockContext(xi), p_exp=p_exp)
    rank = g.n_classes
    for i in range(rank):
        for j in range(rank):
            out.append(contraction_check(eng, i, j, cfg.k, 0, cfg.series_order))
    states = [ExtState.vacuum(rank), ExtState.point(((1, rank - 1),), (0,) * rank)]
    k = cfg.k
    fams = [
        ("ope:YpYp", lambda i, j: (y_plus(i, 1, 0, k), y_plus(j, 1, 0, k))),
        ("ope:YpYm", lambda i, j: (y_plus(i, 1, 0, k), y_minus(j, 1, 0, k))),
        ("ope:YpYp-neg", lambda i, j: (y_plus(i, 1, 0, k), y_plus(j, -1, 0, -k))),
        ("ope:YpYm-neg", lambda i, j: (y_plus(i, 1, 0, k), y_minus(j, -1, 0, -k))),
        ("ope:YmYp-neg", lambda i, j: (y_minus(i, 1, 0, k), y_plus(j, -1, 0, -k))),
    ]
    pairs = [(0, 0), (0, 1 % rank)]
    for name, mk in fams:
        for i, j in pairs:
            opA, opB = mk(i, j)
            params = {"group": g.name, "xi": cfg.xi, "i": i, "j": j, "k": k}
            out.append(ope_product_check(eng, opA, opB, min(cfg.max_mode, 2), states, name, params))
            out.append(ope_table_check(eng, opA, opB, cfg.series_order, name + ":table", params))
    return out


def run_toroidal_checks(cfg: Config, g: GroupData, variant: str) -> list[CheckReport]:
    scfg = SuiteConfig(
        cfg.group,
        xi=cfg.xi,
        variant=variant,
        k=cfg.k,
        p_exp=cfg.p_exp if variant == "typeA_qp" or cfg.xi == "second" else None,
        max_degree=min(cfg.max_degree, 2),
        max_mode=min(cfg.max_mode, 2),
        max_states=8,
        serre_window=1,
    )
    return run_suite(g, scfg)


REGISTRY = {
    "repring.hermitian": ("hermitian_like_check", run_repring_checks),
    "repring.mckay": ("mckay_eigencheck", run_repring_checks),
    "repring.cartan_q1": ("cartan_specialization_check", run_repring_checks),
    "repring.qp_degeneracy": ("qp_degeneracy_check", run_repring_checks),
    "repring.positivity": ("positivity_probe", run_repring_checks),
    "fock.cocycle": ("cocycle_condition_check", run_fock_checks),
    "fock.heisenberg": ("heisenberg_check", run_fock_checks),
    "fock.heisenberg_cls": ("heisenberg_check_cls", run_fock_checks),
    "wreath.exp": ("exp_formula_check", run_wreath_checks),
    "wreath.isometry": ("isometry_check", run_wreath_checks),
    "vertex.qpow": ("qpow_consistency_check", run_vertex_checks),
    "vertex.contraction": ("contraction_check", run_vertex_checks),
    "vertex.ope_product": ("ope_product_check", run_vertex_checks),
    "vertex.ope_table": ("ope_table_check", run_vertex_checks),
    "toroidal.heisenberg": ("check_heisenberg_rel", run_toroidal_checks),
    "toroidal.a_x": ("check_a_x", run_toroidal_checks),
    "toroidal.xx": ("check_xx", run_toroidal_checks),
    "toroidal.xpxm": ("check_xpxm", run_toroidal_checks),
    "toroidal.serre": ("check_serre", run_toroidal_checks),
    "toroidal.psi_structure": ("check_psi_structure", run_toroidal_checks),
    "toroidal.highest_weight": ("check_highest_weight", run_toroidal_checks),
    "toroidal.grading": ("check_grading", run_toroidal_checks),
    "toroidal.d2_grading": ("check_d2_grading", run_toroidal_checks),
}


def run_all(cfg: Config, g: GroupData) -> list[CheckReport]:
    """Execute every registered check family applicable to the configuration."""
    jobs = [
        lambda: run_repring_checks(cfg, g),
        lambda: run_fock_checks(cfg, g),
        lambda: run_wreath_checks(cfg, g),
        lambda: run_vertex_checks(cfg, g),
        lambda: run_toroidal_checks(cfg, g, "toroidal_plus"),
        lambda: run_toroidal_checks(cfg, g, "toroidal_minus"),
    ]
    if g.n_classes >= 2:
        jobs.append(lambda: run_toroidal_checks(cfg, g, "affine"))
    if g.cartan_layout is not None and g.cartan_layout[0] == "A" and g.n_classes >= 3:
        jobs.append(lambda: run_toroidal_checks(cfg, g, "typeA_qp"))
    threads = int(os.environ.get("QVERTEX_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: f(), jobs))
    else:
        results = [f() for f in jobs]
    out: list[CheckReport] = []
    for r in results:
        out.extend(r)
    return out


# --------------------------------------------------------------------------
# subcommands


def cmd_chartable(cfg: Config) -> int:
    g = build_group(cfg.group)
    bad = validate_group(g)
    if cfg.fmt == "json":
        doc = {
            "name": g.name,
            "order": g.order,
            "conductor": g.conductor,
            "classes": [
                {"label": c.label, "centralizer": c.centralizer_order, "inverse": c.inverse_class, "element_order": c.element_order}
                for c in g.classes
            ],
            "char_table": [[v.to_obj() for v in row] for row in g.char_table],
            "natural": [v.to_obj() for v in g.natural_char],
            "violations": bad,
        }
        print(json.dumps(doc))
    else:
        print(f"{g.name}: order {g.order}, conductor {g.conductor}, {g.n_classes} classes")
        labels = [c.label for c in g.classes]
        print("classes:    " + "  ".join(f"{l}(z={c.centralizer_order})" for l, c in zip(labels, g.classes)))
        for i, row in enumerate(g.char_table):
            print(f"gamma_{i}:  " + "  ".join(repr(v) for v in row))
        print("pi:       " + "  ".join(repr(v) for v in g.natural_char))
        if bad:
            print("VIOLATIONS:")
            for b in bad:
                print("  " + b)
    return 1 if bad else 0


def cmd_cartan(cfg: Config) -> int:
    g = build_group(cfg.group)
    A = qcartan(make_xi(cfg, g))
    if cfg.fmt == "json":
        print(json.dumps({"group": g.name, "xi": cfg.xi, "entries": [[e.to_obj() for e in row] for row in A.entries]}))
    else:
        width = max(len(laurent_str(e)) for row in A.entries for e in row) + 2
        for row in A.entries:
            print("".join(laurent_str(e).ljust(width) for e in row))
    return 0


def cmd_mckay(cfg: Config) -> int:
    g = build_group(cfg.group)
    return emit_reports(cfg, [mckay_eigencheck(make_xi(cfg, g))])


def cmd_positivity(cfg: Config) -> int:
    g = build_group(cfg.group)
    if cfg.t <= 0:
        raise ConfigError("precondition violated: positivity probe requires t > 0")
    return emit_reports(cfg, [positivity_probe(make_xi(cfg, g), cfg.t)])


def cmd_heisenberg(cfg: Config) -> int:
    g = build_group(cfg.group)
    return emit_reports(cfg, run_fock_checks(cfg, g))


def cmd_isometry(cfg: Config) -> int:
    g = build_group(cfg.group)
    ctx = FockContext(make_xi(cfg, g))
    from .wreath import enumerate_types, isometry_pair_report

    types = enumerate_types(g, cfg.n)
    reports = [
        isometry_pair_report(ctx, rho, sig, cfg.n, cfg.k_twist, cfg.l_twist)
        for rho in types
        for sig in types
    ]
    return emit_reports(cfg, reports)


def cmd_ope(cfg: Config) -> int:
    g = build_group(cfg.group)
    return emit_reports(cfg, run_vertex_checks(cfg, g))


def cmd_toroidal(cfg: Config) -> int:
    g = build_group(cfg.group)
    variant = {"plus": "toroidal_plus", "minus": "toroidal_minus", "qp": "typeA_qp"}[cfg.variant]
    reports = run_toroidal_checks(cfg, g, variant)
    if cfg.fmt == "json":
        scfg = SuiteConfig(cfg.group, xi=cfg.xi, variant=variant, k=cfg.k,
                           p_exp=cfg.p_exp if variant == "typeA_qp" else None,
                           max_degree=min(cfg.max_degree, 2), max_mode=min(cfg.max_mode, 2),
                           max_states=8, serre_window=1)
        print(suite_json(g, scfg, reports))
        return 0 if all(r.passed for r in reports) else 1
    return emit_reports(cfg, reports)


def cmd_affine(cfg: Config) -> int:
    g = build_group(cfg.group)
    return emit_reports(cfg, run_toroidal_checks(cfg, g, "affine"))


def cmd_all(cfg: Config) -> int:
    g = build_group(cfg.group)
    return emit_reports(cfg, run_all(cfg, g))


COMMANDS = {
    "chartable": cmd_chartable,
    "cartan": cmd_cartan,
    "mckay": cmd_mckay,
    "positivity": cmd_positivity,
    "heisenberg": cmd_heisenberg,
    "isometry": cmd_isometry,
    "ope": cmd_ope,
    "toroidal": cmd_toroidal,
    "affine": cmd_affine,
    "all": cmd_all,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qvertex", description="Exact checks for quantum vertex representations from finite subgroups of SU(2).")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--group", default="cyclic:2", help="cyclic:N | bd:N | bt | file:PATH")
        p.add_argument("--xi", choices=["first", "second"], default="first")
        p.add_argument("--k", type=int, default=-1, help="vertex shift (default -1)")
        p.add_argument("--p-exp", type=int, default=1, dest="p_exp", help="p = q^k_p for the second weight")
        p.add_argument("--max-degree", type=int, default=2, dest="max_degree")
        p.add_argument("--max-mode", type=int, default=2, dest="max_mode")
        p.add_argument("--series-order", type=int, default=8, dest="series_order")
        p.add_argument("--format", choices=["text", "json"], default="text", dest="fmt")
        if name == "positivity":
            p.add_argument("--t", type=float, default=2.0)
        if name == "isometry":
            p.add_argument("--n", type=int, default=2)
            p.add_argument("--k-twist", type=int, default=0, dest="k_twist")
            p.add_argument("--l-twist", type=int, default=0, dest="l_twist")
        if name == "ope":
            p.add_argument("--window", type=int, default=None, help="mode window (alias of --max-mode)")
        if name == "toroidal":
            p.add_argument("--variant", choices=["plus", "minus", "qp"], default="plus")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kwargs = {k: v for k, v in vars(args).items() if k != "command"}
    window = kwargs.pop("window", None)
    if window is not None:
        kwargs["max_mode"] = window
    cfg = Config(**kwargs)
    try:
        if cfg.xi == "second" or vars(args).get("variant") == "qp":
            g_probe = build_group(cfg.group)
            if g_probe.cartan_layout is None or g_probe.cartan_layout[0] != "A":
                raise ConfigError("precondition violated: the second weight and typeA_qp require a cyclic group")
        return COMMANDS[args.command](cfg)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
