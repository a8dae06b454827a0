"""Command-line front end.

Subcommands
-----------
verify       search max |delta_n| per class and compare with the stated bounds
identities   c4 identity, Toeplitz and coefficient inequalities, two-path delta,
             Omega closed form against the grid oracle
extremals    evaluate the named extremal functions
omega-check  Omega closed form against the grid oracle, per branch

Exit status is 0 when every check passes, 1 on a usage error and 2 when a
check fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import caratheodory as cara
from . import kernels
from .bounds import (
    CLASSES,
    Status,
    case_table,
    delta_from_bc,
    delta_via_series,
    extremal_rows,
    verify_bound,
)
from .config import DEFAULT_SEED, SAMPLING, TOL
from .omega import BRANCHES, omega_branch, omega_closed_form, omega_oracle, stratified_inputs
from .optimizer import Budget
from .report import make_report, to_csv, to_json, write_atomic

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    classes: tuple = tuple(CLASSES)
    ns: tuple = (2, 3, 4, 5)
    seed: int = DEFAULT_SEED
    grid: int | None = None
    refine: int | None = None
    multistart: int | None = None
    samples: int = SAMPLING.batch
    fmt: str = "json"
    out: str | None = None

    def budget(self) -> Budget:
        base = Budget()
        return Budget(
            grid_n=self.grid if self.grid is not None else base.grid_n,
            refine_iters=self.refine if self.refine is not None else base.refine_iters,
            multistart_k=self.multistart if self.multistart is not None else base.multistart_k,
        )

    def as_dict(self) -> dict:
        d = {
            "classes": list(self.classes),
            "ns": list(self.ns),
            "seed": self.seed,
            "samples": self.samples,
            "backend": kernels.BACKEND,
        }
        if self.command == "verify":
            d.update({f"budget_{k}": v for k, v in asdict(self.budget()).items()})
        return d


def _positive(name):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {s!r}") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1, got {v}")
        return v

    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", choices=sorted(CLASSES), help="restrict to one class")
    common.add_argument("--n", type=int, choices=(2, 3, 4, 5), help="restrict to one coefficient index")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default %(default)s)")
    common.add_argument("--grid", type=_positive("--grid"), help="grid intervals per real dimension")
    common.add_argument("--refine", type=int, help="refinement iterations per start")
    common.add_argument("--multistart", type=_positive("--multistart"), help="number of refined starts")
    common.add_argument("--samples", type=_positive("--samples"), default=SAMPLING.batch,
                        help="random samples per identity check (default %(default)s)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = _Parser(prog="coeff-bounds", description="Inverse-coefficient bound verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify", parents=[common], help="search maxima and compare with bounds")
    sub.add_parser("identities", parents=[common], help="run the identity and membership checks")
    sub.add_parser("extremals", parents=[common], help="evaluate the extremal functions")
    sub.add_parser("omega-check", parents=[common], help="closed form vs grid oracle for Omega")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.grid is not None and ns.grid < 8:
        raise UsageError(f"--grid must be >= 8, got {ns.grid}")
    if ns.refine is not None and ns.refine < 0:
        raise UsageError(f"--refine must be >= 0, got {ns.refine}")
    return RunConfig(
        command=ns.command,
        classes=(ns.cls,) if ns.cls else tuple(CLASSES),
        ns=(ns.n,) if ns.n else (2, 3, 4, 5),
        seed=ns.seed,
        grid=ns.grid,
        refine=ns.refine,
        multistart=ns.multistart,
        samples=ns.samples,
        fmt=ns.fmt,
        out=ns.out,
    )


# ---------------------------------------------------------------------------
# commands


def cmd_verify_bounds(cfg: RunConfig) -> dict:
    rows = []
    for c in cfg.classes:
        for n in cfg.ns:
            rows.append(verify_bound(c, n, cfg.budget(), cfg.seed).to_row())
    passed = all(r["status"] != Status.VIOLATION for r in rows)
    return make_report("verify", cfg.as_dict(), rows, passed)


def _check_row(name, samples, worst, tol, kind, passed):
    return {"check": name, "samples": samples, "worst": float(worst), "tolerance": float(tol),
            "kind": kind, "passed": bool(passed)}


def omega_rows(seed: int, samples: int) -> list[dict]:
    """Worst closed-form/oracle deviation per branch over stratified inputs."""
    per = min(500, samples // len(BRANCHES))
    if per < 1:
        raise UsageError(f"--samples must be >= {len(BRANCHES)} for the Omega check")
    inputs = stratified_inputs(seed, samples, per_branch=per)
    worst = {b: 0.0 for b in BRANCHES}
    count = {b: 0 for b in BRANCHES}
    for inp in inputs:
        b = omega_branch(inp)
        count[b] += 1
        worst[b] = max(worst[b], abs(omega_closed_form(inp) - omega_oracle(inp)))
    return [
        {"branch": b, "count": count[b], "worst": worst[b], "tolerance": TOL.omega,
         "passed": worst[b] < TOL.omega and count[b] >= per}
        for b in BRANCHES
    ]


def identity_rows(seed: int, samples: int, classes=tuple(CLASSES)) -> list[dict]:
    zs = cara.sample_schur(seed, samples)
    c4_worst = 0.0
    toep_worst = np.inf
    lemma_worst = np.inf
    two_path = 0.0
    for z in zs:
        c4_worst = max(c4_worst, cara.verify_c4_identity(z))
        c = cara.coeffs_from_schur(z)
        toep_worst = min(toep_worst, min(cara.toeplitz_validity(c)))
        lemma_worst = min(lemma_worst, min(cara.lemma_slacks(c).values()))
        for name in classes:
            a = delta_from_bc(name, c)
            b = delta_via_series(name, c)
            two_path = max(two_path, max(abs(x - y) for x, y in zip(a, b)))
    rows = [
        _check_row("c4_identity", samples, c4_worst, TOL.c4_residual, "max", c4_worst < TOL.c4_residual),
        _check_row("toeplitz_min", samples, toep_worst, TOL.toeplitz_min, "min", toep_worst >= TOL.toeplitz_min),
        _check_row("lemma_slack_min", samples, lemma_worst, TOL.lemma_slack, "min",
                   lemma_worst >= TOL.lemma_slack),
        _check_row("two_path_delta", samples, two_path, TOL.two_path, "max", two_path < TOL.two_path),
    ]
    om = omega_rows(seed, samples)
    om_worst = max(r["worst"] for r in om)
    rows.append(_check_row("omega_closed_form", samples, om_worst, TOL.omega, "max",
                           all(r["passed"] for r in om)))
    return rows


def cmd_identity_suite(cfg: RunConfig) -> dict:
    rows = identity_rows(cfg.seed, cfg.samples, cfg.classes)
    return make_report("identities", cfg.as_dict(), rows, all(r["passed"] for r in rows))


def cmd_extremals(cfg: RunConfig) -> dict:
    rows = []
    for c in cfg.classes:
        rows.extend(r.to_row() for r in extremal_rows(c) if r.n in cfg.ns)
    return make_report("extremals", cfg.as_dict(), rows, all(r["attains"] for r in rows))


def cmd_omega_check(cfg: RunConfig) -> dict:
    rows = omega_rows(cfg.seed, cfg.samples)
    return make_report("omega-check", cfg.as_dict(), rows, all(r["passed"] for r in rows))


_DISPATCH = {
    "verify": cmd_verify_bounds,
    "identities": cmd_identity_suite,
    "extremals": cmd_extremals,
    "omega-check": cmd_omega_check,
}


# ---------------------------------------------------------------------------
# text rendering


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _table(rows: list[dict], cols: list[str]) -> str:
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(cols)]
    line = "  ".join(c.ljust(w) for c, w in zip(cols, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(out)


_TEXT_COLUMNS = {
    "verify": ["class", "n", "paper_bound", "searched_max", "gap", "status"],
    "identities": ["check", "samples", "worst", "tolerance", "passed"],
    "extremals": ["class", "n", "extremal", "t", "abs_delta_n", "target", "attains", "derived"],
    "omega-check": ["branch", "count", "worst", "tolerance", "passed"],
}


def case_tables_text(classes) -> str:
    """delta_4 case tables: runs of zeta_1 with one Omega branch and the bound there."""
    parts = []
    for c in classes:
        if c not in ("F2", "F3", "F4"):
            continue
        rows = [
            {"zeta1 from": r.lo, "zeta1 to": r.hi, "branch": r.branch,
             "max (1-x^2)Omega/2": r.max_bound, "at": r.at}
            for r in case_table(c)
        ]
        parts.append(f"{c}, |delta_4| case table\n" + _table(rows, list(rows[0])))
    return "\n\n".join(parts)


def to_text(report: dict, cfg: RunConfig) -> str:
    head = f"{report['command']}  schema={report['schema']}  passed={_cell(report['passed'])}"
    body = _table(report["rows"], _TEXT_COLUMNS[report["command"]])
    out = [head, body]
    if report["command"] == "verify" and 4 in cfg.ns:
        tables = case_tables_text(cfg.classes)
        if tables:
            out.append(tables)
    return "\n\n".join(out) + "\n"


def render(report: dict, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return to_json(report)
    if cfg.fmt == "csv":
        return to_csv(report)
    return to_text(report, cfg)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        report = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"coeff-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    text = render(report, cfg)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
