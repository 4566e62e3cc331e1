"""Batch command-line interface.

Verbs: classify, reduce, table, verify, sweep. Output is JSON (one record
with n, engine, seed, rows, summary, tolerances) or CSV rows; identical
configuration and seed produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import leakage, oracle, verify
from .pauli import dense_to_pauli_sum, pauli_sum_to_dense
from .subsets import (PairTag, RegisterSubset, Verdict, enumerate_classifications)

_LABEL = re.compile(r"([SN])([0-9]+)")


class SubsetSpecError(ValueError):
    pass


class UsageError(ValueError):
    pass


def parse_subset(text: str, n: int) -> RegisterSubset:
    """Parse a label list like 'S1,N2,N3' into per-pair membership tags."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise SubsetSpecError("subset needs at least one label (e.g. 'S1,N2')")
    signals: set[int] = set()
    noises: set[int] = set()
    for tok in tokens:
        m = _LABEL.fullmatch(tok.upper())
        if not m:
            raise SubsetSpecError(f"unknown token {tok!r}: labels look like S3 or N1")
        kind, idx = m.group(1), int(m.group(2))
        if not 1 <= idx <= n:
            raise SubsetSpecError(f"index out of range: {tok!r} with n={n}")
        bucket = signals if kind == "S" else noises
        if idx in bucket:
            raise SubsetSpecError(f"duplicate label {tok!r}")
        bucket.add(idx)
    tags = []
    for i in range(1, n + 1):
        if i in signals and i in noises:
            tags.append(PairTag.BOTH)
        elif i in signals:
            tags.append(PairTag.SIGNAL)
        elif i in noises:
            tags.append(PairTag.NOISE)
        else:
            tags.append(PairTag.NONE)
    return RegisterSubset(n, tuple(tags))


def parse_bloch(text: str) -> np.ndarray:
    """Parse 'x,y,z'; near-unit vectors are normalized, others rejected."""
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated Bloch components, "
                         f"got {text!r}")
    try:
        vec = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise UsageError(f"non-numeric Bloch component in {text!r}") from exc
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-6:
        raise UsageError(f"Bloch vector {text!r} has norm {norm!r}; "
                         "pure input states must be unit length")
    return vec / norm


@dataclass
class RunConfig:
    n: int
    engine: str = "oracle"
    grid_size: int = 26
    seed: int = 0
    fmt: str = "json"
    oracle_cap: int = oracle.ORACLE_CAP_DEFAULT
    out: str | None = None
    tolerances: leakage.Tolerances = leakage.Tolerances()
    tamper_analytic_sign: bool = False


_VERDICT_ORDER = (Verdict.AUTHORIZED, Verdict.COMPLETELY_UNINFORMATIVE,
                  Verdict.PARTIALLY_INFORMATIVE)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(config: RunConfig, rows: list[dict], summary: dict,
          columns: list[str]) -> None:
    if config.fmt == "json":
        record = {
            "n": config.n,
            "engine": config.engine,
            "seed": config.seed,
            "rows": rows,
            "summary": summary,
            "tolerances": asdict(config.tolerances),
        }
        text = json.dumps(record, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])
        text = buf.getvalue()
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note_single_pair(config: RunConfig) -> None:
    if config.n == 1:
        print("note: n=1 keeps a single clone/noise pair; the encoding is "
              "meant for more than one clone and its single clone is only "
              "partially hidden. Proceeding anyway.", file=sys.stderr)


def _structural_row(subset: RegisterSubset, cls) -> dict:
    return {
        "pattern": subset.labels(),
        "size": subset.size,
        "p": subset.signal_count,
        "q": subset.noise_count,
        "verdict": cls.verdict.value,
        "rule": cls.reason.value,
        "max_distance": None,
        "y_signal": None,
    }


TABLE_COLUMNS = ["pattern", "size", "p", "q", "verdict", "rule",
                 "max_distance", "y_signal"]


def cmd_classify(config: RunConfig, subset_text: str) -> int:
    from .subsets import classify
    subset = parse_subset(subset_text, config.n)
    _note_single_pair(config)
    cls = classify(subset)
    row = _structural_row(subset, cls)
    summary = {"verdict": cls.verdict.value, "rule": cls.reason.value}
    if cls.leak is not None:
        row["observable"] = cls.leak.observable
        row["sign"] = cls.leak.sign
        summary["observable"] = cls.leak.observable
        summary["sign"] = cls.leak.sign
    _emit(config, [row], summary, TABLE_COLUMNS + ["observable", "sign"])
    return 0


def cmd_table(config: RunConfig) -> int:
    _note_single_pair(config)
    entries = enumerate_classifications(config.n)
    rows = [_structural_row(subset, cls) for subset, cls in entries]
    counts = {v.value: 0 for v in _VERDICT_ORDER}
    for _, cls in entries:
        counts[cls.verdict.value] += 1
    _emit(config, rows, {"patterns": len(rows), "verdict_counts": counts},
          TABLE_COLUMNS)
    return 0


def _pauli_rows(ps, engine: str) -> list[dict]:
    return [{"term": letters, "coefficient": coeff, "engine": engine}
            for letters, coeff in sorted(ps.terms.items())]


def cmd_reduce(config: RunConfig, subset_text: str, psi_text: str,
               include_dense: bool = False) -> int:
    from . import branch
    from .subsets import AlignedShape, canonical_shape
    subset = parse_subset(subset_text, config.n)
    bloch = parse_bloch(psi_text)
    _note_single_pair(config)
    engines = [config.engine] if config.engine != "both" else \
        [leakage.ENGINE_ORACLE, leakage.ENGINE_ANALYTIC]
    rows = []
    dense = {}
    summary: dict = {"subset": subset.labels(),
                     "psi": [float(v) for v in bloch]}
    for engine in engines:
        if engine == leakage.ENGINE_ANALYTIC:
            shape = canonical_shape(subset)
            if not isinstance(shape, AlignedShape):
                raise UsageError(f"analytic engine needs an aligned subset "
                                 f"(one qubit per pair); {subset.labels()!r} "
                                 f"is {shape.value}")
            ps = branch.analytic_reduced_state(shape.n, shape.p, bloch)
            dense[engine] = pauli_sum_to_dense(ps)
        else:
            rho = leakage.reduced_state(config.n, subset, bloch, engine,
                                        config.oracle_cap)
            ps = dense_to_pauli_sum(rho)
            dense[engine] = rho
        rows.extend(_pauli_rows(ps, engine))
    if len(engines) == 2:
        err = float(np.abs(dense[engines[0]] - dense[engines[1]]).max())
        summary["engine_max_entry_error"] = err
    if include_dense:
        summary["dense"] = {
            eng: [[[float(c.real), float(c.imag)] for c in row] for row in mat]
            for eng, mat in dense.items()
        }
    _emit(config, rows, summary, ["term", "coefficient", "engine"])
    return 0


def cmd_sweep(config: RunConfig, subset_text: str) -> int:
    subset = parse_subset(subset_text, config.n)
    _note_single_pair(config)
    if config.engine == "both":
        raise UsageError("sweep runs one engine at a time; pick oracle or analytic")
    grid = leakage.bloch_grid(config.grid_size, config.seed)
    rhos = [leakage.reduced_state(config.n, subset, b, config.engine,
                                  config.oracle_cap)
            for b in grid.points]
    max_d, per_point = leakage.pairwise_max_trace_distance(rhos)
    estimates = [leakage.y_leak_estimate(r, subset.size) for r in rhos]
    rows = []
    for idx, (b, est, d) in enumerate(zip(grid.points, estimates, per_point)):
        rows.append({"index": idx,
                     "x": float(b[0]), "y": float(b[1]), "z": float(b[2]),
                     "y_leak_estimate": float(est),
                     "max_distance": float(d)})
    ys = grid.points[:, 1]
    slope, intercept = np.polyfit(ys, np.array(estimates), 1)
    summary = {"max_pairwise_distance": max_d,
               "slope": float(slope),
               "intercept": float(intercept)}
    _emit(config, rows, summary,
          ["index", "x", "y", "z", "y_leak_estimate", "max_distance"])
    return 0


def cmd_verify(config: RunConfig) -> int:
    vconfig = verify.VerifyConfig(
        n_max=config.n,
        oracle_cap=config.oracle_cap,
        grid_size=config.grid_size,
        seed=config.seed,
        tolerances=config.tolerances,
        tamper_analytic_sign=config.tamper_analytic_sign,
    )
    results = verify.run_checks(vconfig)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}", file=sys.stderr)
    rows = [{"check": r.name, "passed": r.passed, "detail": r.detail}
            for r in results]
    all_passed = all(r.passed for r in results)
    resolution = leakage.resolve_sign_rule(config.oracle_cap)
    summary = {
        "passed": all_passed,
        "sign": {
            "observed": {str(n): s for n, s in resolution.observed},
            "rule": resolution.rule.kind,
            "rule_formula": resolution.rule.describe(),
        },
    }
    _emit(config, rows, summary, ["check", "passed", "detail"])
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cloneleak",
        description="Classify and measure what subsets of the encrypted-clone "
                    "storage register reveal about the stored qubit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_n=True, engines=None):
        if needs_n:
            p.add_argument("--n", type=int, required=True,
                           help="number of clone/noise pairs")
        if engines:
            p.add_argument("--engine", choices=engines, default=engines[0])
        p.add_argument("--grid", type=int, default=26, metavar="N",
                       help="number of probe states (>= 6)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv"], default="json",
                       dest="fmt")
        p.add_argument("--oracle-cap", type=int,
                       default=oracle.ORACLE_CAP_DEFAULT,
                       help="largest n the brute-force engine accepts")
        p.add_argument("--out", metavar="PATH",
                       help="write output to a file instead of stdout")

    p = sub.add_parser("classify", help="structural verdict for one subset")
    p.add_argument("--subset", required=True, metavar="SPEC",
                   help="comma-separated labels, e.g. S1,N2,N3")
    common(p)

    p = sub.add_parser("reduce", help="reduced state of one subset")
    p.add_argument("--subset", required=True, metavar="SPEC")
    p.add_argument("--psi", required=True, metavar="X,Y,Z",
                   help="Bloch vector of the stored qubit")
    p.add_argument("--dense", action="store_true",
                   help="include dense matrix entries in the summary")
    common(p, engines=["oracle", "analytic", "both"])

    p = sub.add_parser("table", help="classify every nonempty subset pattern")
    common(p)

    p = sub.add_parser("verify", help="run the full cross-check battery")
    p.add_argument("--n", type=int, default=4,
                   help="largest n for the brute-force comparisons")
    p.add_argument("--tamper-analytic-sign", action="store_true",
                   help=argparse.SUPPRESS)
    common(p, needs_n=False)

    p = sub.add_parser("sweep", help="leakage estimates across a probe grid")
    p.add_argument("--subset", required=True, metavar="SPEC")
    common(p, engines=["oracle", "analytic"])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        n=args.n,
        engine=getattr(args, "engine", "oracle"),
        grid_size=args.grid,
        seed=args.seed,
        fmt=args.fmt,
        oracle_cap=args.oracle_cap,
        out=args.out,
        tamper_analytic_sign=getattr(args, "tamper_analytic_sign", False),
    )
    try:
        if args.command == "classify":
            return cmd_classify(config, args.subset)
        if args.command == "reduce":
            return cmd_reduce(config, args.subset, args.psi,
                              include_dense=args.dense)
        if args.command == "table":
            return cmd_table(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "sweep":
            return cmd_sweep(config, args.subset)
        raise UsageError(f"unknown command {args.command!r}")
    except (SubsetSpecError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
