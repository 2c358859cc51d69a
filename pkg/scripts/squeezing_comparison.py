"""Two-mode squeezing: Taylor-truncated evolution against tanh(r)^n / cosh(r)."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, fields

from dyckhike import FockState, build_series, evaluate_at, parse_expr, squeeze_reference


@dataclass
class SqueezeConfig:
    K: int = 200
    r: float = 1.0
    max_level: int = 40
    precision: int = 53


def run(cfg: SqueezeConfig) -> list[tuple[int, float, float]]:
    t0 = time.perf_counter()
    series = build_series(parse_expr("a[1]*a[2]"), FockState(), cfg.K, levels=range(cfg.max_level + 1))
    amps = evaluate_at(series, cfg.r, cfg.precision)
    print(f"# K={cfg.K} r={cfg.r}  ({time.perf_counter() - t0:.1f}s)")
    print(f"{'n':>3} {'series':>22} {'analytic':>22} {'rel err':>10}")
    rows = []
    for n in range(cfg.max_level + 1):
        got, ref = float(amps.amplitudes[n]), squeeze_reference(n, cfg.r)
        rows.append((n, got, ref))
        print(f"{n:>3} {got:>22.12e} {ref:>22.12e} {abs(got - ref) / ref:>10.2e}")
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    for f in fields(SqueezeConfig):
        parser.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    run(SqueezeConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
