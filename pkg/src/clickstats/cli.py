"""Command-line interface: simulate datasets, analyze counts, compare reports.

File formats
------------
Counts CSV: a header line ``# bins_a=<N_A> bins_b=<N_B>`` followed by
N_A+1 rows of N_B+1 comma-separated non-negative integers (row index a,
column index b). Exact distributions use the same layout with floats.

Report JSON: flat object with ``schema_version``, one ``{value, stderr,
defined}`` object per statistic, ``{violated, significance_sigmas}`` per
verdict, and full provenance (seed, shots, parameters).

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

import numpy as np

from . import criteria
from .model import (ClickStatsError, CountMatrix, CriteriaReport, DetectorConfig,
                    JointClickDistribution, UndefinedStatisticError,
                    ValidationError, normalize)
from .simulator import (StateSpec, build_photon_distribution,
                        joint_click_distribution, sample_counts)
from .uncertainty import BootstrapConfig, bootstrap

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


def write_counts_csv(path, counts: CountMatrix) -> None:
    with open(path, "w") as fh:
        fh.write(f"# bins_a={counts.bins_a} bins_b={counts.bins_b}\n")
        for row in counts.counts:
            fh.write(",".join(str(int(v)) for v in row) + "\n")


def write_distribution_csv(path, jcd: JointClickDistribution) -> None:
    with open(path, "w") as fh:
        fh.write(f"# bins_a={jcd.bins_a} bins_b={jcd.bins_b}\n")
        for row in jcd.probs:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _parse_header(line: str, path) -> tuple[int, int]:
    try:
        fields = dict(tok.split("=") for tok in line.lstrip("#").split())
        return int(fields["bins_a"]), int(fields["bins_b"])
    except (ValueError, KeyError) as exc:
        raise ValidationError(f"{path}: malformed header line {line!r}") from exc


def read_counts_csv(path) -> CountMatrix:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValidationError(f"{path}: missing '# bins_a=... bins_b=...' header")
    bins_a, bins_b = _parse_header(lines[0], path)
    try:
        rows = [[int(v) for v in line.split(",")] for line in lines[1:] if line.strip()]
        counts = np.array(rows, dtype=np.int64)
    except ValueError as exc:
        raise ValidationError(f"{path}: malformed counts row") from exc
    if counts.shape != (bins_a + 1, bins_b + 1):
        raise ValidationError(
            f"{path}: expected {bins_a + 1}x{bins_b + 1} matrix, got {counts.shape}")
    return CountMatrix(counts)


def _state_spec(args) -> StateSpec:
    if args.state == "coherent":
        return StateSpec.coherent(args.mean_a, args.mean_b)
    if args.state == "tmsv":
        if args.lambda2 is None:
            raise ValidationError("tmsv requires --lambda2")
        return StateSpec.tmsv(float(np.sqrt(args.lambda2)))
    if args.state == "split-photon":
        if args.t2 is None:
            raise ValidationError("split-photon requires --t2")
        return StateSpec.split_photon(float(np.sqrt(args.t2)))
    raise ValidationError(f"unknown state {args.state!r}")


def cmd_simulate(args) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(32)
    spec = _state_spec(args)
    cfg_a = DetectorConfig(bins=args.bins, efficiency=args.eta, dark_click=args.nu)
    cfg_b = DetectorConfig(
        bins=args.bins_b if args.bins_b is not None else args.bins,
        efficiency=args.eta_b if args.eta_b is not None else args.eta,
        dark_click=args.nu_b if args.nu_b is not None else args.nu)

    jpd = build_photon_distribution(spec)
    jcd = joint_click_distribution(jpd, cfg_a, cfg_b)
    counts = sample_counts(jcd, args.shots, seed)

    write_counts_csv(args.counts_out, counts)
    if args.exact_out:
        write_distribution_csv(args.exact_out, jcd)
    meta = {
        "state": args.state,
        "label": jpd.label,
        "seed": seed,
        "shots": args.shots,
        "detector_a": {"bins": cfg_a.bins, "eta": cfg_a.efficiency,
                       "nu": cfg_a.dark_click},
        "detector_b": {"bins": cfg_b.bins, "eta": cfg_b.efficiency,
                       "nu": cfg_b.dark_click},
    }
    with open(str(args.counts_out) + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2)
    print(f"wrote {args.counts_out} ({args.shots} shots, seed {seed})")
    return EXIT_OK


def cmd_analyze(args) -> int:
    counts = read_counts_csv(args.counts)
    seed = args.seed if args.seed is not None else secrets.randbits(32)
    jcd = normalize(counts)
    errors = bootstrap(counts, BootstrapConfig(replicates=args.replicates, seed=seed))
    meta_path = Path(str(args.counts) + ".meta.json")
    parameters = json.loads(meta_path.read_text()) if meta_path.exists() else {}
    label = args.label or parameters.get("label") or Path(args.counts).stem
    condition_counts = tuple(int(v) for v in counts.counts.sum(axis=1))
    report = criteria.evaluate_all(
        jcd, errors=errors, threshold=args.threshold,
        total_shots=counts.total, bootstrap_replicates=args.replicates,
        seed=seed, label=label, parameters=parameters,
        condition_counts=condition_counts)

    with open(args.report_out, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
    if args.plot_data:
        _write_plot_data(args.plot_data, report)
    print(f"wrote {args.report_out}")
    return EXIT_OK


def _write_plot_data(path, report: CriteriaReport) -> None:
    rows = [
        ("kappa", report.kappa, report.kappa_cl_max),
        ("gamma", report.gamma, report.gamma_cl_max),
        ("frak_n", report.frak_n, None),
    ]
    with open(path, "w") as fh:
        fh.write("criterion,value,bound,stderr\n")
        for name, est, bound in rows:
            bound_value = "" if bound is None else repr(bound.value)
            stderr = "" if est.stderr is None else repr(est.stderr)
            fh.write(f"{name},{repr(est.value)},{bound_value},{stderr}\n")


def _verdict_symbol(v) -> str:
    if v.violated is None:
        return "?"
    return "✓" if v.violated else "✗"


def render_report_table(reports: list[CriteriaReport]) -> str:
    header = ("dataset", "E(a+b)", "kappa>bound", "|gamma|>bound", "N<0",
              "frak_n (rel err)")
    rows = [header]
    for r in reports:
        e = r.summed_click_mean
        e_txt = f"{e.value:.5f}" if e.defined else "n/a"
        n = r.frak_n
        if n.defined and n.stderr and n.value != 0.0:
            n_txt = f"{n.value:.3e} (1±{abs(n.stderr / n.value) * 100:.1f}%)"
        elif n.defined:
            n_txt = f"{n.value:.3e}"
        else:
            n_txt = "n/a"
        rows.append((r.label or "-", e_txt,
                     _verdict_symbol(r.kappa_test),
                     _verdict_symbol(r.gamma_test),
                     _verdict_symbol(r.frak_n_test),
                     n_txt))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def cmd_report(args) -> int:
    if not args.reports:
        raise ValidationError("no report files given")
    reports = []
    for path in args.reports:
        with open(path) as fh:
            reports.append(CriteriaReport.from_dict(json.load(fh)))
    table = render_report_table(reports)
    if args.out:
        Path(args.out).write_text(table + "\n")
    print(table)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clickstats",
        description="Simulate and analyze two-mode click-counting statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="generate a simulated counts file")
    sim.add_argument("--state", required=True,
                     choices=["coherent", "tmsv", "split-photon"])
    sim.add_argument("--mean-a", type=float, default=0.0,
                     help="coherent mean photon number, arm A")
    sim.add_argument("--mean-b", type=float, default=0.0)
    sim.add_argument("--lambda2", type=float, help="TMSV pair probability lambda^2")
    sim.add_argument("--t2", type=float, help="split-photon weight t^2 on arm A")
    sim.add_argument("--bins", type=int, default=8)
    sim.add_argument("--eta", type=float, default=1.0)
    sim.add_argument("--nu", type=float, default=0.0)
    sim.add_argument("--bins-b", type=int, help="override arm-B bin count")
    sim.add_argument("--eta-b", type=float, help="override arm-B efficiency")
    sim.add_argument("--nu-b", type=float, help="override arm-B dark-click prob")
    sim.add_argument("--shots", type=int, required=True)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--counts-out", required=True)
    sim.add_argument("--exact-out", help="also write the exact distribution CSV")
    sim.set_defaults(func=cmd_simulate)

    ana = sub.add_parser("analyze", help="run all criteria on a counts file")
    ana.add_argument("--counts", required=True)
    ana.add_argument("--replicates", type=int, default=1000)
    ana.add_argument("--threshold", type=float, default=3.0,
                     help="significance threshold in standard errors")
    ana.add_argument("--seed", type=int, help="bootstrap seed")
    ana.add_argument("--label", help="dataset label for the report table")
    ana.add_argument("--report-out", required=True)
    ana.add_argument("--plot-data", help="write criterion,value,bound,stderr CSV")
    ana.set_defaults(func=cmd_analyze)

    rep = sub.add_parser("report", help="render a comparison table from reports")
    rep.add_argument("reports", nargs="*")
    rep.add_argument("--out", help="also write the table to a file")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (UndefinedStatisticError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
