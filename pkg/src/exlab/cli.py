"""Command-line front end.

Four subcommands: count (connected graph counts, optionally against the
k^{k+(3l-1)/2} asymptotic), alpha (expected transition counts, exact or
approximate), simulate (Monte Carlo replicas), compare (all engines side
by side).  Reports are CSV (default) or JSON Lines, one object per row,
and every command is deterministic given its full flag set: rerunning an
invocation must reproduce the report byte for byte.

Exit codes: 0 success, 2 bad arguments, 3 resource limit, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import asymptotics, exact_enum, laplace, simulator
from .errors import NumericalError, ResourceLimitError, UsageError
from .logreal import DEFAULT_PRECISION_BITS, LogReal

__all__ = ["build_parser", "main"]

# per-command column schemas; every row carries every column, empty cells
# render as ""
COLUMNS = {
    "count": ("engine", "k", "m", "l", "value", "bcm", "ratio"),
    "alpha": ("engine", "n", "l", "k", "value_exact", "value"),
    "simulate": (
        "n",
        "l",
        "replicas",
        "seed",
        "transitions_mean",
        "transitions_stderr",
        "v_mean",
        "v_stderr",
        "v_max_mean",
    ),
    "compare": (
        "n",
        "l",
        "replicas",
        "seed",
        "exact",
        "approx",
        "asymptotic",
        "sim_mean",
        "sim_stderr",
        "ratio_sim_exact",
        "ratio_sim_approx",
        "ratio_approx_asymptotic",
    ),
}

_EXACT_TOTAL_N_LIMIT = 64  # compare: exact column needs the full k <= n band


def _sig_digits(bits: int) -> int:
    return max(1, int(bits * math.log10(2)))


def _fmt_float(x: float, sig: int) -> str:
    # float64 carries at most 17 significant digits
    return f"{x:.{min(sig, 17)}g}"


def _fmt_logreal(v: LogReal, sig: int) -> str:
    return v.to_decimal_string(min(sig, _sig_digits(v.precision_bits)))


def _fmt_fraction(q: Fraction) -> str:
    return str(q)  # "p/q", or "p" when integral


def _fraction_decimal(q: Fraction, sig: int) -> str:
    if q == 0:
        return "0"
    return _fmt_logreal(LogReal.from_number(q), sig)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise UsageError(f"{flag} expects an integer or comma list, got {text!r}") from exc


def _l_range(args) -> list[int]:
    if args.l is None and args.l_max is None:
        raise UsageError("--l or --l-max is required")
    lo = -1 if args.l is None else args.l
    if args.l_max is None:
        return [lo]
    if args.l_max < lo:
        raise UsageError("--l-max must be >= --l")
    return list(range(lo, args.l_max + 1))


def cmd_count(args) -> list[dict]:
    if args.k is None:
        raise UsageError("count needs --k")
    ks = _parse_int_list(args.k, "--k")
    if (args.m is None) == (args.l is None):
        raise UsageError("count needs exactly one of --m or --l")
    sig = _sig_digits(args.precision_bits)
    rows = []
    for k in ks:
        m = args.m if args.m is not None else k + args.l
        l = m - k
        value = exact_enum.connected_count(k, m)
        row = {
            "engine": "exact",
            "k": str(k),
            "m": str(m),
            "l": str(l),
            "value": str(value),
            "bcm": "",
            "ratio": "",
        }
        if args.compare_bcm:
            est = asymptotics.c_bcm(k, l, precision_bits=args.precision_bits)
            row["bcm"] = _fmt_logreal(est.value, sig)
            if value > 0:
                row["ratio"] = _fmt_float(
                    est.value.ratio_to(LogReal.from_number(value)), sig
                )
        rows.append(row)
    return rows


def _alpha_total_approx(n: int, l: int, bits: int) -> LogReal:
    # sum over k of the local approximation: (rho_l / 2) n^{-(l+1)} S(l, n)
    # with S the power sum over k
    rho = asymptotics.rho(l, precision_bits=bits).value
    s = laplace.power_sum(laplace.SaddleProblem(l=l, n=n, precision_bits=bits))
    n_pow = LogReal.from_number(n, precision_bits=bits) ** (l + 1)
    return rho / LogReal.from_number(2) * s / n_pow


def cmd_alpha(args) -> list[dict]:
    engine = args.engine or "exact"
    if engine not in ("exact", "approx", "asymptotic-total"):
        raise UsageError(f"unknown alpha engine {engine!r}")
    if args.l is None:
        raise UsageError("alpha needs --l")
    l = args.l
    bits = args.precision_bits
    sig = _sig_digits(bits)
    rows: list[dict] = []

    def row(k_label: str, exact: str, dec: str) -> dict:
        return {
            "engine": engine,
            "n": "" if args.n is None else str(args.n),
            "l": str(l),
            "k": k_label,
            "value_exact": exact,
            "value": dec,
        }

    if engine == "asymptotic-total":
        est = asymptotics.alpha_total_asymptotic(l, precision_bits=bits)
        rows.append(row("total", "", _fmt_logreal(est.value, sig)))
        return rows

    if args.n is None:
        raise UsageError(f"alpha --engine {engine} needs --n")
    n = args.n

    if engine == "exact":
        ks = [args.single_k] if args.single_k is not None else list(range(1, n + 1))
        total = Fraction(0)
        for k in ks:
            a = exact_enum.alpha_exact(n, l, k)
            total += a
            rows.append(row(str(k), _fmt_fraction(a), _fraction_decimal(a, sig)))
        if args.single_k is None:
            rows.append(row("total", _fmt_fraction(total), _fraction_decimal(total, sig)))
        return rows

    # approx engine: per-k rows only on request, total via the power sum
    if args.single_k is not None:
        est = asymptotics.alpha_approx(n, l, args.single_k, precision_bits=bits)
        rows.append(row(str(args.single_k), "", _fmt_logreal(est.value, sig)))
    total = _alpha_total_approx(n, l, bits)
    rows.append(row("total", "", _fmt_logreal(total, sig)))
    return rows


def _tracked_for(args) -> tuple[set[int], int]:
    ls = _l_range(args)
    return set(ls), max(ls)


def cmd_simulate(args) -> list[dict]:
    if args.n is None:
        raise UsageError("simulate needs --n")
    engine = args.engine or "numba"
    if engine not in ("numba", "python"):
        raise UsageError(f"unknown simulate engine {engine!r}")
    tracked, l_stop = _tracked_for(args)
    agg = simulator.aggregate(
        args.n, args.seed, args.replicas, tracked, l_stop, engine=engine
    )
    sig = _sig_digits(args.precision_bits)
    rows = []
    for l in agg.tracked:
        rows.append(
            {
                "n": str(args.n),
                "l": str(l),
                "replicas": str(args.replicas),
                "seed": str(args.seed),
                "transitions_mean": _fmt_float(agg.transition_mean[l], sig),
                "transitions_stderr": _fmt_float(agg.transition_stderr[l], sig),
                "v_mean": _fmt_float(agg.v_mean[l], sig),
                "v_stderr": _fmt_float(agg.v_stderr[l], sig),
                "v_max_mean": _fmt_float(agg.v_max_mean[l], sig),
            }
        )
    return rows


def cmd_compare(args) -> list[dict]:
    if args.n is None:
        raise UsageError("compare needs --n")
    n = args.n
    bits = args.precision_bits
    sig = _sig_digits(bits)
    ls = _l_range(args)
    tracked = set(ls)
    agg = simulator.aggregate(n, args.seed, args.replicas, tracked, max(ls))
    rows = []
    for l in ls:
        exact_val: Fraction | None = None
        if n <= _EXACT_TOTAL_N_LIMIT:
            exact_val = exact_enum.alpha_total_exact(n, l)
        approx_val = _alpha_total_approx(n, l, bits) if l >= 1 else None
        asym_val = (
            asymptotics.alpha_total_asymptotic(l, precision_bits=bits).value
            if l >= 1
            else None
        )
        sim_mean = agg.transition_mean[l]
        row = {
            "n": str(n),
            "l": str(l),
            "replicas": str(args.replicas),
            "seed": str(args.seed),
            "exact": "" if exact_val is None else _fraction_decimal(exact_val, sig),
            "approx": "" if approx_val is None else _fmt_logreal(approx_val, sig),
            "asymptotic": "" if asym_val is None else _fmt_logreal(asym_val, sig),
            "sim_mean": _fmt_float(sim_mean, sig),
            "sim_stderr": _fmt_float(agg.transition_stderr[l], sig),
            "ratio_sim_exact": "",
            "ratio_sim_approx": "",
            "ratio_approx_asymptotic": "",
        }
        if exact_val is not None and exact_val != 0:
            row["ratio_sim_exact"] = _fmt_float(sim_mean / float(exact_val), sig)
        if approx_val is not None:
            row["ratio_sim_approx"] = _fmt_float(
                LogReal.from_number(sim_mean).ratio_to(approx_val)
                if sim_mean > 0
                else 0.0,
                sig,
            )
            if asym_val is not None:
                row["ratio_approx_asymptotic"] = _fmt_float(
                    approx_val.ratio_to(asym_val), sig
                )
        rows.append(row)
    return rows


def _render(rows: list[dict], columns: tuple[str, ...], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        for r in rows:
            lines.append(",".join(r.get(c, "") for c in columns))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        lines = []
        for r in rows:
            lines.append(json.dumps({c: r.get(c, "") for c in columns}))
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exlab",
        description="Exact, asymptotic and simulated statistics of the "
        "uniform edge process on the complete graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION_BITS)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="write the report to this path")

    p_count = sub.add_parser(
        "count",
        help="connected graph counts c(k, m)",
        description="CSV columns: engine,k,m,l,value,bcm,ratio. value is the "
        "exact count; bcm/ratio appear with --compare-bcm.",
    )
    p_count.add_argument("--k", help="order, or comma list of orders")
    p_count.add_argument("--m", type=int, help="edge count")
    p_count.add_argument("--l", type=int, help="excess; m = k + l")
    p_count.add_argument("--compare-bcm", action="store_true")
    common(p_count)
    p_count.set_defaults(func=cmd_count)

    p_alpha = sub.add_parser(
        "alpha",
        help="expected l -> l+1 transition counts",
        description="CSV columns: engine,n,l,k,value_exact,value. The exact "
        "engine emits per-k rows plus a total; approx emits the total (plus "
        "one k row with --k); asymptotic-total needs only --l.",
    )
    p_alpha.add_argument("--n", type=int)
    p_alpha.add_argument("--l", type=int)
    p_alpha.add_argument("--k", dest="single_k", type=int)
    p_alpha.add_argument(
        "--engine", choices=("exact", "approx", "asymptotic-total"), default="exact"
    )
    common(p_alpha)
    p_alpha.set_defaults(func=cmd_alpha)

    p_sim = sub.add_parser(
        "simulate",
        help="Monte Carlo replicas of the edge process",
        description="CSV columns: n,l,replicas,seed,transitions_mean,"
        "transitions_stderr,v_mean,v_stderr,v_max_mean. Tracked excesses: "
        "--l alone tracks one value; with --l-max, the range up from --l "
        "(or from -1 when --l is omitted).",
    )
    p_sim.add_argument("--n", type=int)
    p_sim.add_argument("--l", type=int)
    p_sim.add_argument("--l-max", dest="l_max", type=int)
    p_sim.add_argument("--replicas", type=int, default=100)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--engine", choices=("numba", "python"), default="numba")
    common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_cmp = sub.add_parser(
        "compare",
        help="exact vs approximate vs simulated, one row per l",
        description="CSV columns: n,l,replicas,seed,exact,approx,asymptotic,"
        "sim_mean,sim_stderr,ratio_sim_exact,ratio_sim_approx,"
        "ratio_approx_asymptotic. The exact column appears for n <= "
        f"{_EXACT_TOTAL_N_LIMIT}; approx/asymptotic need l >= 1.",
    )
    p_cmp.add_argument("--n", type=int)
    p_cmp.add_argument("--l", type=int)
    p_cmp.add_argument("--l-max", dest="l_max", type=int)
    p_cmp.add_argument("--replicas", type=int, default=100)
    p_cmp.add_argument("--seed", type=int, default=0)
    common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = args.func(args)
        text = _render(rows, COLUMNS[args.command], args.format)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
