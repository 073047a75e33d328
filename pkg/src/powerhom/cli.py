"""Command-line interface: parse a problem file, dispatch, emit a report.

Commands: gb, resolve, betti, artin-rees, scan, rees, spread, golod,
deviations.  Output formats: table (default), csv, json; --plot-dir
renders figures next to the delimited output.  Exit codes: 0 ok, 1 hard
error, 2 partial results after a resource limit.
"""

from __future__ import annotations

import argparse
import sys
import time

from .artin_rees import artin_rees_number, artin_rees_oracle, comparison_check, rho_profile
from .golod import (
    deviations_from_series,
    deviations_via_recursion,
    golod_test,
    poincare_actual,
)
from .groebner import ResourceLimit, buchberger, reset_degree_cap, set_degree_cap
from .parsing import ParseError, experiment_int, parse_problem
from .powers import (
    Deadline,
    IdealPowers,
    analytic_spread,
    power_scan,
    rees_presentation,
    stabilization_detect,
    fit_polynomial,
)
from .report import ReportDocument
from .resolutions import betti_diagram, regularity_profile


def _parse_range(text):
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    k = int(text)
    return range(k, k + 1)


def build_parser():
    p = argparse.ArgumentParser(
        prog="powerhom",
        description="Exact homological invariants of powers of graded ideals",
    )
    p.add_argument("command", choices=[
        "gb", "resolve", "betti", "artin-rees", "scan", "rees", "spread",
        "golod", "deviations",
    ])
    p.add_argument("file", help="problem file (see README for the format)")
    p.add_argument("--power", type=int, default=None, help="power k of the ideal")
    p.add_argument("--powers", type=str, default=None, help="range a..b of powers")
    p.add_argument("--syzygy", type=int, default=None, help="syzygy index j")
    p.add_argument("--order", type=int, default=None, help="series truncation order")
    p.add_argument("--metrics", type=str, default=None,
                   help="comma-separated scan metrics (gens,betti,reg,rho,poincare)")
    p.add_argument("--format", dest="fmt", choices=["table", "csv", "json"],
                   default="table")
    p.add_argument("--oracle", action="store_true",
                   help="confirm Artin-Rees numbers with the intersection oracle")
    p.add_argument("--margin", type=int, default=3, help="oracle window size")
    p.add_argument("--max-degree", type=int, default=None,
                   help="cap internal degrees; partial results exit with code 2")
    p.add_argument("--timeout-secs", type=float, default=None,
                   help="soft per-scan-row deadline; partial rows exit with code 2")
    p.add_argument("--experiment", type=str, default=None,
                   help="pull defaults from a named experiment block")
    p.add_argument("--plot-dir", type=str, default=None,
                   help="render figures into this directory")
    p.add_argument("--quotient", action="store_true",
                   help="resolve R/I^k instead of the ideal I^k")
    return p


def run_command(name, problem, flags=None, *, command_echo=None):
    """Dispatch one command on a parsed problem; returns a ReportDocument.

    flags mirror the CLI options (power, powers, syzygy, order, metrics,
    oracle, margin, max_degree, timeout_secs, plot_dir, quotient).
    Homogeneous generators are required except for `gb`.  Resource limits
    mark the document partial instead of raising.
    """
    if name not in _HANDLERS:
        raise ValueError(f"unknown command {name!r}")
    args = build_parser().parse_args([name, "<memory>"])
    for key, val in (flags or {}).items():
        setattr(args, key.replace("-", "_"), val)
    if name != "gb":
        bad = [g for g in problem.generators if not g.is_homogeneous()]
        if bad:
            raise ValueError(f"non-homogeneous generator {bad[0]}")
    doc = ReportDocument(
        command=command_echo or name,
        input_sha256=problem.sha256,
    )
    t0 = time.monotonic()
    cap_token = set_degree_cap(args.max_degree) if args.max_degree is not None else None
    try:
        _HANDLERS[name](problem, args, doc)
    except ResourceLimit as exc:
        doc.notes.append(f"resource limit: {exc}")
        doc.partial = True
    finally:
        if cap_token is not None:
            reset_degree_cap(cap_token)
    doc.timing_secs = time.monotonic() - t0
    return doc


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        problem = parse_problem(text)
    except ParseError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return 1

    if args.experiment:
        block = problem.experiments.get(args.experiment)
        if block is None:
            print(f"error: no experiment {args.experiment!r} in {args.file}",
                  file=sys.stderr)
            return 1
        if args.power is None:
            args.power = experiment_int(block, "power")
        if args.powers is None and "powers" in block:
            args.powers = block["powers"]
        if args.order is None:
            args.order = experiment_int(block, "order")
        if args.metrics is None and "metrics" in block:
            args.metrics = block["metrics"]
        if args.syzygy is None:
            args.syzygy = experiment_int(block, "syzygy")

    flags = {
        key: getattr(args, key)
        for key in ("power", "powers", "syzygy", "order", "metrics", "oracle",
                    "margin", "max_degree", "timeout_secs", "plot_dir",
                    "quotient")
    }
    echo = " ".join(
        [args.command, args.file]
        + [a for a in (argv or sys.argv[1:]) if a not in (args.command, args.file)]
    )
    try:
        doc = run_command(args.command, problem, flags, command_echo=echo)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(doc.render(args.fmt))
    return 2 if doc.partial else 0


def _the_power(problem, args):
    P = IdealPowers(problem.generators)
    k = args.power if args.power is not None else 1
    return P, k


def _cmd_gb(problem, args, doc):
    gb = buchberger(problem.generators)
    doc.add_table(
        "reduced Groebner basis (degrevlex)",
        ["index", "polynomial"],
        [[i + 1, str(p)] for i, p in enumerate(gb.polynomials())],
    )


def _cmd_resolve(problem, args, doc):
    P, k = _the_power(problem, args)
    res = P.resolution_of_quotient(k) if args.quotient else P.resolution_of_power(k)
    what = f"R/I^{k}" if args.quotient else f"I^{k}"
    rows = []
    for j, degs in enumerate(res.degrees):
        rows.append([j, len(degs), " ".join(str(d) for d in degs)])
    doc.add_table(f"minimal free resolution of {what}", ["step", "rank", "degrees"], rows)
    b = betti_diagram(res)
    doc.add_table(
        "graded Betti numbers",
        ["j", "k", "beta"],
        [[j, kk, v] for (j, kk), v in sorted(b.data.items())],
    )


def _cmd_betti(problem, args, doc):
    P, k = _the_power(problem, args)
    res = P.resolution_of_quotient(k) if args.quotient else P.resolution_of_power(k)
    b = betti_diagram(res)
    what = f"R/I^{k}" if args.quotient else f"I^{k}"
    doc.add_table(
        f"graded Betti numbers of {what}",
        ["j", "k", "beta"],
        [[j, kk, v] for (j, kk), v in sorted(b.data.items())],
    )
    regs, reg = regularity_profile(b)
    doc.add_table(
        "regularity profile",
        ["j"] + list(range(len(regs))),
        [["reg_j"] + regs],
    )
    doc.verdicts.append({"regularity": reg})


def _cmd_artin_rees(problem, args, doc):
    P, k = _the_power(problem, args)
    gens = P.power(k)
    res = P.resolution_of_power(k)
    if args.syzygy is not None:
        j = args.syzygy
        if j == 0:
            rho = max(res.degrees[0], default=0)
            doc.verdicts.append({"j": 0, "rho": rho,
                                 "meaning": "max degree of a minimal generator"})
            return
        if j > res.length:
            raise ValueError(f"syzygy index {j} beyond projective dimension {res.length}")
        cols = res.columns_of(j)
        result = artin_rees_number(cols)
        row = {"j": j, "rho": result.rho,
               "minimal N* generator degrees": " ".join(map(str, result.degrees)),
               "witness": str(result.witness)}
        if args.oracle:
            rho_o, cert = artin_rees_oracle(cols, margin=args.margin)
            row["oracle"] = rho_o
            row["oracle agrees"] = rho_o == result.rho
            if "failed_at" in cert:
                row["oracle certificate"] = (
                    f"r={cert['failed_r']} fails at i={cert['failed_at']}"
                )
        doc.verdicts.append(row)
        return
    rhos = rho_profile(gens, resolution=res)
    rep = comparison_check(gens)
    rows = []
    for j in range(len(rhos)):
        rows.append([
            j, rhos[j],
            rep.reg_profile[j] if j < len(rep.reg_profile) else None,
            rep.bounds[j],
            rep.satisfied[j],
        ])
    doc.add_table(
        f"Artin-Rees profile of I^{k} and regularity comparison",
        ["j", "rho_j", "reg_j", "sum rho - j", "reg_j <= bound"],
        rows,
    )
    if args.oracle:
        oracle_rows = []
        for j in range(1, res.length + 1):
            cols = res.columns_of(j)
            rho_o, cert = artin_rees_oracle(cols, margin=args.margin)
            oracle_rows.append([j, rhos[j], rho_o, rho_o == rhos[j]])
        doc.add_table(
            f"oracle confirmation (margin {args.margin})",
            ["j", "rho_j", "oracle", "agrees"],
            oracle_rows,
        )


def _cmd_scan(problem, args, doc):
    if args.powers is None:
        raise ValueError("scan needs --powers a..b")
    ks = _parse_range(args.powers)
    metrics = [m.strip() for m in (args.metrics or "gens,betti,reg,rho").split(",")]
    deadline = Deadline(args.timeout_secs) if args.timeout_secs else None
    table = power_scan(
        problem.generators, ks, metrics,
        poincare_order=args.order, deadline=deadline,
        max_degree=args.max_degree,
    )
    cols = table.column_names()
    rows = []
    for row in table.rows:
        rows.append([row.k] + [row.data.get(c) for c in cols[1:-1]] + [row.error])
    doc.add_table("power scan", cols, rows)
    if table.spread is not None:
        doc.verdicts.append({"analytic spread": table.spread})
    stab_rows = []
    for col in cols[1:-1]:
        series = table.series(col)
        if len(series) >= 3:
            hit = stabilization_detect(series)
            if hit:
                stab_rows.append([col, hit[0], hit[1], ""])
            else:
                stab_rows.append([col, None, None, "inconclusive"])
            fit = fit_polynomial(series) if len(series) >= 2 else None
            if fit is not None:
                stab_rows[-1][3] = f"fits {fit} on k={fit.window[0]}..{fit.window[1]}"
    if stab_rows:
        doc.add_table(
            "stabilization and exact tail fits",
            ["metric", "onset k0", "stable value", "polynomial law"],
            stab_rows,
        )
    if any(r.error for r in table.rows):
        doc.partial = True
    if args.plot_dir:
        from .plots import plot_scan

        for path in plot_scan(table, args.plot_dir):
            doc.notes.append(f"figure: {path}")


def _cmd_rees(problem, args, doc):
    J = rees_presentation(problem.generators)
    doc.add_table(
        "Rees algebra presentation ideal (in R[y1..ym])",
        ["index", "generator"],
        [[i + 1, str(p)] for i, p in enumerate(J.polynomials())],
    )


def _cmd_spread(problem, args, doc):
    ell = analytic_spread(problem.generators)
    verdict = {"analytic spread": ell}
    if ell == -1:
        verdict["note"] = "unit ideal: fiber cone is zero (dimension -1)"
    doc.verdicts.append(verdict)


def _cmd_golod(problem, args, doc):
    P, k = _the_power(problem, args)
    t = args.order if args.order is not None else 6
    v = golod_test(P, k, t)
    doc.verdicts.append({
        "ring": f"R/I^{k}",
        "golod (necessary conditions through order)": t,
        "verdict": v.is_golod,
        "series equal": v.series_equal,
        "first discrepancy": v.first_discrepancy,
        "products trivial": v.products_trivial,
    })
    doc.add_table(
        "Poincare series of the residue field vs the Golod bound",
        ["i"] + list(range(t + 1)),
        [
            ["actual"] + [int(c) for c in v.actual.coeffs],
            ["bound"] + [int(c) for c in v.bound.coeffs],
        ],
    )
    if v.witnesses:
        doc.add_table(
            "nonzero homology products",
            ["left (i,e)", "right (i,e)", "product"],
            [[f"({w.left.i},{w.left.degree})", f"({w.right.i},{w.right.degree})",
              w.description] for w in v.witnesses],
        )
    if args.plot_dir:
        from .plots import plot_series_comparison

        path = plot_series_comparison(v.actual.coeffs, v.bound.coeffs,
                                      args.plot_dir, f"golod_k{k}")
        doc.notes.append(f"figure: {path}")


def _cmd_deviations(problem, args, doc):
    P, k = _the_power(problem, args)
    t = args.order if args.order is not None else 6
    A = P.quotient(k)
    actual = poincare_actual(A, t)
    eps = deviations_from_series(actual)
    betti = P.betti_of_quotient(k)[1:]
    golod_eps = deviations_via_recursion(P.ring.ngens, betti, t)
    doc.add_table(
        f"deviations of R/I^{k} (from the actual Poincare series, order {t})",
        ["i"] + list(range(len(eps))),
        [
            ["eps_i"] + eps,
            ["eps_i if Golod"] + golod_eps,
        ],
    )
    doc.verdicts.append({
        "poincare coefficients": " ".join(str(int(c)) for c in actual.coeffs),
        "matches Golod-bound deviations": eps == golod_eps,
    })
    if args.plot_dir:
        from .plots import plot_deviations

        path = plot_deviations(eps, args.plot_dir, f"deviations_k{k}")
        doc.notes.append(f"figure: {path}")


_HANDLERS = {
    "gb": _cmd_gb,
    "resolve": _cmd_resolve,
    "betti": _cmd_betti,
    "artin-rees": _cmd_artin_rees,
    "scan": _cmd_scan,
    "rees": _cmd_rees,
    "spread": _cmd_spread,
    "golod": _cmd_golod,
    "deviations": _cmd_deviations,
}


if __name__ == "__main__":
    sys.exit(main())
