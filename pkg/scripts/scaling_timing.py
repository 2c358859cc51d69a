"""Wall time and stage-polynomial degree of (a^dag^3 + a^3)^k |0> for growing k."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from dyckhike import DyckSumEngine, LadderPolynomial
from dyckhike.polynomial import Poly


@dataclass
class ScalingConfig:
    ks: list[int] = field(default_factory=lambda: [25, 50, 100, 200])


def run(cfg: ScalingConfig) -> list[tuple[int, int, float]]:
    lp = LadderPolynomial(Poly.from_coeffs([0, 6, -27, 27]), 0)
    rows = []
    print(f"{'k':>5} {'degree':>7} {'seconds':>9} {'ratio':>7}")
    prev = None
    for k in cfg.ks:
        t0 = time.perf_counter()
        eng = DyckSumEngine(lp)
        eng.power(k)
        dt = time.perf_counter() - t0
        deg = eng.cache.stage(k // 2).degree
        ratio = f"{dt / prev:7.1f}" if prev else f"{'':>7}"
        print(f"{k:>5} {deg:>7} {dt:>9.2f} {ratio}")
        rows.append((k, deg, dt))
        prev = dt
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ks", type=lambda s: [int(v) for v in s.split(",")], default=ScalingConfig().ks)
    run(ScalingConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
