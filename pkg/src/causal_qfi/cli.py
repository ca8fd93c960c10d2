"""Command-line front end: sweeps, verification, classification, figure data.

Exit codes: 0 success, 1 usage error, 2 verification failure.  The
CAUSAL_QFI_THREADS environment variable caps worker threads for sweep
grids; output files are sorted and formatted deterministically either way.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import blocks, qfi, verify
from .switch import OrderCombination

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2

SWEEP_HEADER = [
    "m", "combo", "class", "theta", "d",
    "J_analytic", "J_numeric", "J_def", "J_rel", "abs_diff",
]
VERIFY_HEADER = ["section", "name", "theta", "d", "value_a", "value_b", "err", "ok"]

#: Stand-in dimension for the large-d figure panels; the closed forms are
#: exact in d, so a large finite value traces the limit curves.
LARGE_D = 1000

CONFIG_KEYS = {"theta_start", "theta_stop", "theta_step", "d", "m", "combo", "method", "out"}


class UsageError(Exception):
    """Invalid flags, config entries, or parameter ranges."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1
    def error(self, message):
        raise UsageError(message)


def load_config(path: str) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}")
    cfg = {}
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{ln}: expected key=value, got {line!r}")
        key = key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{ln}: unknown config key {key!r}")
        cfg[key] = value.strip()
    return cfg


def _opt(args, config, key, default, cast=str):
    """Flag value if given, else config value, else the built-in default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in config:
        raw = config[key]
        try:
            return cast(raw)
        except (TypeError, ValueError):
            raise UsageError(f"bad config value for {key}: {raw!r}")
    return default


def theta_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive grid start, start+step, ..., capped at stop (stop < 1)."""
    if step <= 0:
        raise UsageError(f"theta step must be positive, got {step}")
    if not (0.0 <= start <= stop < 1.0):
        raise UsageError(f"need 0 <= theta-start <= theta-stop < 1, got {start}..{stop}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(n)]


def parse_dims(value) -> tuple[int, ...]:
    try:
        dims = tuple(int(tok) for tok in str(value).replace(" ", "").split(",") if tok)
    except ValueError:
        raise UsageError(f"bad dimension list {value!r}")
    if not dims or any(dd < 2 for dd in dims):
        raise UsageError(f"dimensions must be integers >= 2, got {value!r}")
    return dims


def parse_combo(token: str) -> OrderCombination:
    digits = [c for c in str(token) if c not in ",+ "]
    if not digits or not all(c.isdigit() for c in digits):
        raise UsageError(f"bad combination {token!r}: expected order indices like '1,2,4'")
    try:
        return OrderCombination(tuple(int(c) for c in digits))
    except ValueError as exc:
        raise UsageError(f"bad combination {token!r}: {exc}")


def select_combinations(args, config) -> list[OrderCombination]:
    tokens = getattr(args, "combo", None)
    if tokens is None and "combo" in config:
        tokens = [t for t in config["combo"].replace(";", " ").split() if t]
    if tokens:
        return [parse_combo(t) for t in tokens]
    if getattr(args, "reps", False):
        reps = qfi.analytic_representatives()
        return [reps[k] for k in sorted(reps)]
    m = _opt(args, config, "m", None, int)
    try:
        return blocks.all_combinations(m)
    except ValueError as exc:
        raise UsageError(str(exc))


def _thread_count() -> int:
    raw = os.environ.get("CAUSAL_QFI_THREADS", "")
    try:
        n = int(raw) if raw else 1
    except ValueError:
        n = 1
    return max(1, n)


def _pmap(fn, items):
    n = _thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _fmt(value) -> str:
    return "" if value is None else format(float(value), ".12g")


def _write_csv(path, header, display_rows):
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(display_rows)


# -- sweep ---------------------------------------------------------------------


def _sweep_row(comb: OrderCombination, theta: float, d: int, method: str):
    jdef = qfi.qfi_definite(d, theta).value
    ja = jn = None
    if method in ("analytic", "both"):
        res = qfi.qfi_analytic_for(comb, theta, d)
        ja = res.value if res is not None else None
    if method in ("numeric", "both"):
        jn = qfi.qfi_numeric(comb, theta, d).value
    jbase = ja if ja is not None else jn
    jrel = (jbase - jdef) / jdef if (jbase is not None and jdef > 0.0) else None
    adiff = abs(ja - jn) if (ja is not None and jn is not None) else None
    sig = "".join(blocks.classify_combination(comb)) if comb.m >= 2 else "-"
    return (comb.m, comb.ident, sig, theta, d, ja, jn, jdef, jrel, adiff)


def cmd_sweep(args, config) -> int:
    start = _opt(args, config, "theta_start", 0.05, float)
    stop = _opt(args, config, "theta_stop", 0.95, float)
    step = _opt(args, config, "theta_step", 0.05, float)
    dims = parse_dims(_opt(args, config, "d", "2"))
    method = _opt(args, config, "method", "both")
    if method not in ("analytic", "numeric", "both"):
        raise UsageError(f"method must be analytic, numeric or both, got {method!r}")
    out = _opt(args, config, "out", "sweep.csv")
    combos = select_combinations(args, config)
    thetas = theta_grid(start, stop, step)

    tasks = [(comb, th, dd) for comb in combos for dd in dims for th in thetas]
    rows = _pmap(lambda t: _sweep_row(t[0], t[1], t[2], method), tasks)
    rows.sort(key=lambda r: (r[0], r[1], r[4], r[3]))

    display = [
        [str(r[0]), r[1], r[2], _fmt(r[3]), str(r[4]),
         _fmt(r[5]), _fmt(r[6]), _fmt(r[7]), _fmt(r[8]), _fmt(r[9])]
        for r in rows
    ]
    _write_csv(out, SWEEP_HEADER, display)
    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


# -- classify ------------------------------------------------------------------


def cmd_classify(args, config) -> int:
    census = blocks.classification_census()
    print("causal-order combination census (uniform weights)")
    print(f"{'m':>2}  {'count':>5}  class signatures")
    total = 0
    for m, sigs in census.items():
        count = sum(sigs.values())
        total += count
        parts = [f"{''.join(sig)}:{n}" for sig, n in sorted(sigs.items())]
        print(f"{m:>2}  {count:>5}  " + "  ".join(parts))
    print(f"total combinations (m=2..6): {total}")
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def cmd_verify(args, config) -> int:
    start = _opt(args, config, "theta_start", 0.05, float)
    stop = _opt(args, config, "theta_stop", 0.95, float)
    step = _opt(args, config, "theta_step", 0.05, float)
    dims = parse_dims(_opt(args, config, "d", "2,3"))
    out = _opt(args, config, "out", None)
    thetas = tuple(theta_grid(start, stop, step))
    if 0.0 in thetas:
        raise UsageError("verification grid must start above theta = 0 (relative errors)")

    report = verify.run_verification(thetas, dims)
    print(report.format_text())
    if out:
        display = [
            [r.section, r.name, _fmt(r.theta), str(r.d),
             _fmt(r.value_a), _fmt(r.value_b), _fmt(r.err), str(int(r.ok))]
            for r in report.rows
        ]
        _write_csv(out, VERIFY_HEADER, display)
        print(f"wrote {len(display)} check rows to {out}")
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


# -- figure1 -------------------------------------------------------------------

FIGURE_CURVES = ["J_def", "J_m2_B", "J_m2_D", "J_m2_F", "J_m3_DDD", "J_m4_BBDDFF", "J_m6"]


def _figure_curves(theta: float, d: int) -> list[float]:
    return [
        qfi.qfi_definite(d, theta).value,
        qfi.qfi_m2("B", d, theta).value,
        qfi.qfi_m2("D", d, theta).value,
        qfi.qfi_m2("F", d, theta).value,
        qfi.qfi_m3(d, theta).value,
        qfi.qfi_m4(d, theta).value,
        qfi.qfi_m6(d, theta).value,
    ]


def cmd_figure1(args, config) -> int:
    step = _opt(args, config, "theta_step", 0.05, float)
    stop = _opt(args, config, "theta_stop", 0.95, float)
    outdir = Path(_opt(args, config, "out", "figure1"))
    thetas = theta_grid(0.0, stop, step)
    outdir.mkdir(parents=True, exist_ok=True)

    header_a = ["theta"] + FIGURE_CURVES + ["J_2switch"]
    header_b = ["theta"] + FIGURE_CURVES
    rows_a, rows_b, rows_c, rows_d = [], [], [], []
    for th in thetas:
        small = _figure_curves(th, 2)
        large = _figure_curves(th, LARGE_D)
        j2sw = qfi.qfi2_numeric(th, 2).value
        rows_a.append([_fmt(th)] + [_fmt(v) for v in small + [j2sw]])
        rows_b.append([_fmt(th)] + [_fmt(v) for v in large])
        if small[0] > 0.0:  # relative gain needs J_def > 0
            rows_c.append(
                [_fmt(th)]
                + [_fmt(v / small[0] - 1.0) for v in small[1:]]
                + [_fmt(j2sw / small[0] - 1.0)]
            )
        if large[0] > 0.0:
            rows_d.append([_fmt(th)] + [_fmt(v / large[0] - 1.0) for v in large[1:]])

    rel_names = [f"{name}_rel" for name in FIGURE_CURVES[1:]]
    _write_csv(outdir / "figure1a.csv", header_a, rows_a)
    _write_csv(outdir / "figure1b.csv", header_b, rows_b)
    _write_csv(outdir / "figure1c.csv", ["theta"] + rel_names + ["J_2switch_rel"], rows_c)
    _write_csv(outdir / "figure1d.csv", ["theta"] + rel_names, rows_d)

    lim_f = 9.0 / ((LARGE_D + 1) * (LARGE_D * LARGE_D + 1))
    print(f"wrote 4 panels to {outdir} (panels a/c at d=2, panels b/d at d={LARGE_D})")
    print("theta=0 limits of the pair forms for d -> infinity: "
          f"B -> 4, D -> 1, F -> 9/((d+1)(d^2+1)) = {lim_f:.6g} at d={LARGE_D}")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------


def _add_grid_flags(p):
    p.add_argument("--theta-start", dest="theta_start", type=float, help="grid start (default 0.05)")
    p.add_argument("--theta-stop", dest="theta_stop", type=float, help="grid stop, < 1 (default 0.95)")
    p.add_argument("--theta-step", dest="theta_step", type=float, help="grid step (default 0.05)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="causal-qfi",
        description="Quantum Fisher information for three depolarizing channels "
        "in superposed causal orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="tabulate QFI over a theta/d grid as CSV")
    _add_grid_flags(p_sweep)
    p_sweep.add_argument("--d", help="comma-separated qudit dimensions (default 2)")
    p_sweep.add_argument("--m", type=int, help="restrict to combinations of m orders")
    p_sweep.add_argument("--combo", action="append",
                         help="explicit order subset like 1,2,4 (repeatable)")
    p_sweep.add_argument("--reps", action="store_true",
                         help="only the closed-form representative combinations")
    p_sweep.add_argument("--method", choices=["analytic", "numeric", "both"],
                         help="which engines to run (default both)")
    p_sweep.add_argument("--out", help="output CSV path (default sweep.csv)")
    p_sweep.add_argument("--config", help="key=value config file; flags override it")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="cross-validate closed forms against the engine")
    _add_grid_flags(p_verify)
    p_verify.add_argument("--d", help="comma-separated qudit dimensions (default 2,3)")
    p_verify.add_argument("--out", help="also write per-check rows to this CSV")
    p_verify.add_argument("--config", help="key=value config file; flags override it")
    p_verify.set_defaults(func=cmd_verify)

    p_classify = sub.add_parser("classify", help="combination counts and class census")
    p_classify.set_defaults(func=cmd_classify)

    p_fig = sub.add_parser("figure1", help="write the four comparison-panel CSV files")
    p_fig.add_argument("--theta-stop", dest="theta_stop", type=float)
    p_fig.add_argument("--theta-step", dest="theta_step", type=float)
    p_fig.add_argument("--out", help="output directory (default figure1)")
    p_fig.add_argument("--config", help="key=value config file; flags override it")
    p_fig.set_defaults(func=cmd_figure1)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config) if getattr(args, "config", None) else {}
        return args.func(args, config)
    except UsageError as exc:
        print(f"causal-qfi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
