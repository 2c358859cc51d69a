"""Vacuum amplitude of exp[r(a^dag^3 - a^3)]|0>: diagonal Pade approximants vs the raw Taylor sum.

Writes CSV columns r, taylor, and one column per [L/L] (built in s = r^2).
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction

from dyckhike import FockState, build_pade, build_series, eval_pade, parse_expr
from dyckhike.errors import NearPole
from dyckhike.pade import even_part, order_condition_residual


@dataclass
class CurveConfig:
    orders: list[int] = field(default_factory=lambda: [20, 40, 60, 83])
    r_max: float = 0.12
    points: int = 25
    out: str = "-"


def run(cfg: CurveConfig) -> None:
    top = max(cfg.orders)
    t0 = time.perf_counter()
    series = build_series(parse_expr("a[0]^3"), FockState(), 4 * top, levels=[0], table_depth=12)
    taylor_r = series.vev_coefficients()
    taylor_s = even_part(taylor_r)
    print(f"# series to r^{4 * top}: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    approximants = {}
    for L in cfg.orders:
        t0 = time.perf_counter()
        approximants[L] = build_pade(taylor_s, L, L, variable="r^2")
        bad = order_condition_residual(approximants[L], taylor_s)
        print(f"# [{L}/{L}] {time.perf_counter() - t0:.1f}s order condition {'ok' if not bad else bad}", file=sys.stderr)

    handle = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    writer = csv.writer(handle)
    writer.writerow(["r", "taylor"] + [f"pade_{L}" for L in cfg.orders])
    for i in range(cfg.points):
        r = cfg.r_max * i / (cfg.points - 1)
        x = Fraction(r)
        partial = Fraction(0)
        for c in reversed(taylor_r):
            partial = partial * x + c
        row = [f"{r:.6f}", f"{float(partial):.12g}"]
        for L in cfg.orders:
            try:
                row.append(f"{eval_pade(approximants[L], r):.12g}")
            except NearPole:
                row.append("nan")
        writer.writerow(row)
    if handle is not sys.stdout:
        handle.close()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--orders", type=lambda s: [int(v) for v in s.split(",")], default=CurveConfig().orders)
    for f in fields(CurveConfig):
        if f.name != "orders":
            parser.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, type=type(f.default), default=f.default)
    run(CurveConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
