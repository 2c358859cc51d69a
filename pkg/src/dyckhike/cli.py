"""Command-line front end: ``dyckhike <command> [options]``.

Option values resolve as flag > ``DYCKHIKE_<OPTION>`` environment variable >
built-in default. Errors print one line to stderr and exit with 2 (parse),
3 (validation), 4 (math) or 5 (internal).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

import mpmath

from . import __version__
from .boson import BosonExpr, FockState, LadderPolynomial, lambda_mu_polynomial, lambda_mu_table
from .dyck import PathSpec, count_paths, enumerate_words
from .engine import MINUS, PLUS, DyckSumEngine
from .errors import (
    DyckHikeError,
    InsufficientTower,
    InterpolationMismatch,
    MathError,
    NearPole,
    ValidationError,
)
from .evolution import build_series, evaluate_at, ladder_for
from .oracle import (
    TruncationPolicy,
    dyck_word_image,
    nonvanishing_words,
    oracle_ladder_decomposition,
    oracle_power,
)
from .pade import build_pade, eval_pade, even_part, order_condition_residual
from .parser import format_expr, parse_expr, parse_vacuum
from .radical import RatRadical

SCHEMA_VERSION = 1
ENV_PREFIX = "DYCKHIKE_"


@dataclass
class RunConfig:
    command: str
    fmt: str = "json"
    expr: Optional[BosonExpr] = None
    vac: Optional[FockState] = None
    k: Optional[int] = None
    K: Optional[int] = None
    d1: int = 0
    d2: Optional[int] = None
    levels: Optional[list[int]] = None
    sign: str = PLUS
    r: list[float] = field(default_factory=list)
    precision: int = 53
    p_max: Optional[int] = None
    table_depth: Optional[int] = None
    L: Optional[int] = None
    M: Optional[int] = None
    limit: Optional[int] = None
    sign_given: bool = False
    plot_data: bool = False
    r_max: float = 0.12
    points: int = 25
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def validate(self) -> None:
        for name in ("k", "K", "d2", "p_max", "table_depth", "L", "M", "limit"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValidationError(f"--{name.replace('_', '-')} must be non-negative, got {value}")
        if self.d1 < 0:
            raise ValidationError(f"--d1 must be non-negative, got {self.d1}")
        if self.precision < 53:
            raise ValidationError(f"--precision must be at least 53 bits, got {self.precision}")
        if any(r < 0 for r in self.r):
            raise ValidationError("--r values must be non-negative")
        if self.points < 2 or self.r_max <= 0:
            raise ValidationError("--points must be >= 2 and --r-max positive")
        if self.sign not in (PLUS, MINUS):
            raise ValidationError(f"--sign must be plus or minus, got {self.sign!r}")
        if self.command in ("lambda-mu", "power", "evolve", "vev", "pade", "oracle-check"):
            if self.expr is None or self.vac is None:
                raise ValidationError(f"{self.command} needs --expr and --vac")


@dataclass
class Report:
    payload: dict[str, Any]
    rows: list[dict[str, Any]]
    plain: list[str]
    exit_code: int = 0


def exact(value: RatRadical | Fraction | int) -> dict[str, Any]:
    """Serialize an exact scalar; exact fields are always strings."""
    if not isinstance(value, RatRadical):
        value = RatRadical.make(Fraction(value))
    return {
        "rational": str(value.rational),
        "radicand": str(value.radicand),
        "float": float(value),
        "expr": value.expr(),
    }


def _num(x) -> float:
    return float(x)


# --------------------------------------------------------------------------- helpers


def _engine(cfg: RunConfig, need: int) -> DyckSumEngine:
    depth = cfg.table_depth if cfg.table_depth is not None else need
    return DyckSumEngine(ladder_for(cfg.expr, cfg.vac, depth))


def _r_grid(cfg: RunConfig) -> list[float]:
    if cfg.plot_data:
        return [cfg.r_max * i / (cfg.points - 1) for i in range(cfg.points)]
    return list(cfg.r)


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ValidationError(f"{cfg.command} needs " + ", ".join(f"--{m.replace('_', '-')}" for m in missing))


# --------------------------------------------------------------------------- commands


def cmd_count_paths(cfg: RunConfig) -> Report:
    _require(cfg, "k", "d2")
    spec = PathSpec(cfg.k, cfg.d1, cfg.d2)
    n = count_paths(spec)
    row = {"k": cfg.k, "d1": cfg.d1, "d2": cfg.d2, "count": str(n)}
    return Report(dict(row), [row], [str(n)])


def cmd_enumerate_paths(cfg: RunConfig) -> Report:
    _require(cfg, "k", "d2")
    spec = PathSpec(cfg.k, cfg.d1, cfg.d2)
    words = []
    for i, w in enumerate(enumerate_words(spec)):
        if cfg.limit is not None and i >= cfg.limit:
            break
        words.append(w.steps)
    payload = {"k": cfg.k, "d1": cfg.d1, "d2": cfg.d2, "count": str(count_paths(spec)), "words": words}
    return Report(payload, [{"index": i, "word": w} for i, w in enumerate(words)], words)


def cmd_lambda_mu(cfg: RunConfig) -> Report:
    p_max = cfg.p_max if cfg.p_max is not None else 2 * cfg.expr.length + 2
    table = lambda_mu_table(cfg.expr, cfg.vac, p_max)
    poly: Optional[LadderPolynomial] = None
    note = None
    try:
        poly = lambda_mu_polynomial(table, cfg.expr.length)
    except (InsufficientTower, InterpolationMismatch) as exc:
        note = str(exc)
    rows = [{"p": p, "product": str(table[p])} for p in range(1, len(table) + 1)]
    payload = {
        "expr": format_expr(cfg.expr),
        "vacuum": str(cfg.vac),
        "products": {str(p): str(table[p]) for p in range(1, len(table) + 1)},
        "terminates_at": table.terminates_at,
        "polynomial": None if poly is None else [str(c) for c in poly.poly.coeffs],
    }
    if note:
        payload["polynomial_note"] = note
    plain = [f"p={r['p']}  lambda*mu={r['product']}" for r in rows]
    if poly is not None:
        plain.append("polynomial (ascending): " + " ".join(payload["polynomial"]))
    return Report(payload, rows, plain)


def cmd_power(cfg: RunConfig) -> Report:
    _require(cfg, "k")
    engine = _engine(cfg, cfg.k)
    res = engine.power(cfg.k, cfg.sign)
    coeffs = {d: c for d, c in res.coeffs.items() if cfg.d2 is None or d == cfg.d2}
    rows = [{"delta2": d, **exact(c)} for d, c in sorted(coeffs.items())]
    payload = {
        "expr": format_expr(cfg.expr),
        "vacuum": str(cfg.vac),
        "k": cfg.k,
        "sign": cfg.sign,
        "mode": engine.mode,
        "coefficients": {str(d): exact(c) for d, c in coeffs.items()},
    }
    return Report(payload, rows, [f"delta2={r['delta2']}  {r['expr']}" for r in rows])


def cmd_evolve(cfg: RunConfig) -> Report:
    _require(cfg, "K")
    if not cfg.r:
        raise ValidationError("evolve needs at least one --r value")
    engine = _engine(cfg, cfg.K)
    series = build_series(cfg.expr, cfg.vac, cfg.K, MINUS, levels=cfg.levels, engine=engine)
    rows, results = [], []
    digits = max(15, int(cfg.precision * 0.30103))
    for r in cfg.r:
        amps = evaluate_at(series, r, cfg.precision)
        table = {}
        for level, value in sorted(amps.amplitudes.items()):
            partial = amps.partial_sums[level]
            entry = {
                "value": mpmath.nstr(value, digits),
                "float": _num(value),
                "partial_K_minus_2": _num(partial[0]),
                "partial_K_minus_1": _num(partial[1]),
            }
            table[str(level)] = entry
            rows.append({"r": r, "delta2": level, "value": entry["value"]})
        results.append({"r": r, "amplitudes": table})
    payload = {
        "expr": format_expr(cfg.expr),
        "vacuum": str(cfg.vac),
        "K": cfg.K,
        "precision": cfg.precision,
        "results": results,
    }
    plain = [f"r={row['r']}  delta2={row['delta2']}  {row['value']}" for row in rows]
    return Report(payload, rows, plain)


def _vev_series(cfg: RunConfig, order: int) -> list[Fraction]:
    engine = _engine(cfg, order)
    return build_series(cfg.expr, cfg.vac, order, MINUS, levels=[0], engine=engine).vev_coefficients()


def cmd_vev(cfg: RunConfig) -> Report:
    _require(cfg, "K")
    coeffs = _vev_series(cfg, cfg.K)
    grid = _r_grid(cfg)
    if grid:
        values = []
        for r in grid:
            x = Fraction(r)
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * x + c
            values.append((r, float(acc)))
        rows = [{"r": r, "vev": v} for r, v in values]
        payload = {"expr": format_expr(cfg.expr), "K": cfg.K, "points": [[r, v] for r, v in values]}
        return Report(payload, rows, [f"{r} {v!r}" for r, v in values])
    rows = [{"order": i, "coefficient": str(c)} for i, c in enumerate(coeffs)]
    payload = {"expr": format_expr(cfg.expr), "K": cfg.K, "taylor": [str(c) for c in coeffs]}
    return Report(payload, rows, [f"r^{i}: {c}" for i, c in enumerate(coeffs)])


def cmd_pade(cfg: RunConfig) -> Report:
    _require(cfg, "L")
    M = cfg.M if cfg.M is not None else cfg.L
    # try an even series first: [L/M] in r^2 needs 2(L+M) orders in r
    order = cfg.K if cfg.K is not None else 2 * (cfg.L + M)
    coeffs = _vev_series(cfg, order)
    try:
        taylor, variable = even_part(coeffs), "r^2"
    except ValidationError:
        taylor, variable = coeffs, "r"
    approx = build_pade(taylor, cfg.L, M, variable)
    bad = order_condition_residual(approx, taylor)
    points = []
    for r in _r_grid(cfg):
        try:
            points.append([r, eval_pade(approx, r, cfg.precision if cfg.precision > 53 else 53)])
        except NearPole:
            points.append([r, None])
    points = [[r, None if v is None else float(v)] for r, v in points]
    payload = {
        "expr": format_expr(cfg.expr),
        "L": cfg.L,
        "M": M,
        "variable": variable,
        "taylor_orders_used": cfg.L + M + 1,
        "order_condition_ok": not bad,
        "order_condition_failures": bad,
        "numerator": [str(c) for c in approx.numerator.coeffs],
        "denominator": [str(c) for c in approx.denominator.coeffs],
        "points": points,
    }
    if cfg.plot_data:
        rows = [{"r": r, "pade": v} for r, v in points]
        plain = [f"{r} {v!r}" for r, v in points]
    else:
        rows = [{"r": r, "pade": v} for r, v in points] or [
            {"L": cfg.L, "M": M, "variable": variable, "order_condition_ok": not bad}
        ]
        plain = [f"[{cfg.L}/{M}] in {variable}: order condition {'ok' if not bad else 'FAILED'}"]
        plain += [f"r={r}  {v!r}" for r, v in points]
    return Report(payload, rows, plain)


def cmd_oracle_check(cfg: RunConfig) -> Report:
    _require(cfg, "k")
    signs = [cfg.sign] if cfg.sign_given else [PLUS, MINUS]
    engine = _engine(cfg, cfg.k)
    rows = []
    for sign in signs:
        for k in range(cfg.k + 1):
            engine_coeffs = {d: c for d, c in engine.power(k, sign).coeffs.items() if not c.is_zero()}
            v = oracle_power(cfg.expr, cfg.vac, k, sign, cfg.policy)
            oracle_coeffs = oracle_ladder_decomposition(cfg.expr, cfg.vac, v, k)
            rows.append({"k": k, "sign": sign, "equal": engine_coeffs == oracle_coeffs})
    words_ok = None
    if cfg.k <= 12:
        words_ok = all(
            nonvanishing_words(cfg.expr, cfg.vac, k) <= dyck_word_image(k) for k in range(cfg.k + 1)
        )
    ok = all(r["equal"] for r in rows) and words_ok is not False
    payload = {
        "expr": format_expr(cfg.expr),
        "vacuum": str(cfg.vac),
        "k_max": cfg.k,
        "checks": rows,
        "dyck_words_only": words_ok,
        "all_equal": ok,
    }
    plain = [f"k={r['k']} {r['sign']}: {'equal' if r['equal'] else 'MISMATCH'}" for r in rows]
    plain.append("all equal" if ok else "MISMATCH")
    return Report(payload, rows, plain, 0 if ok else MathError.exit_code)


COMMANDS: dict[str, Callable[[RunConfig], Report]] = {
    "count-paths": cmd_count_paths,
    "enumerate-paths": cmd_enumerate_paths,
    "lambda-mu": cmd_lambda_mu,
    "power": cmd_power,
    "evolve": cmd_evolve,
    "vev": cmd_vev,
    "pade": cmd_pade,
    "oracle-check": cmd_oracle_check,
}


# --------------------------------------------------------------------------- argv


_ENV_NAMES = {"fmt": "FORMAT"}


def _env(name: str, env: dict[str, str]):
    return env.get(ENV_PREFIX + _ENV_NAMES.get(name, name.upper()))


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's unset copy from masking the global flag
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "plain"], default=argparse.SUPPRESS)
    common.add_argument(
        "--precision", type=int, default=argparse.SUPPRESS, help="working precision in bits (>= 53)"
    )

    parser = argparse.ArgumentParser(prog="dyckhike", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"dyckhike {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, *opts):
        p = sub.add_parser(name, help=help_text, parents=[common])
        for opt in opts:
            opt(p)
        return p

    def path_opts(p):
        p.add_argument("--k", type=int)
        p.add_argument("--d1", type=int)
        p.add_argument("--d2", type=int)

    def operator_opts(p):
        p.add_argument("--expr", help='annihilation-side operator A, e.g. "a[0]^3"')
        p.add_argument("--vac", help='vacuum ket, e.g. "|0,0>"')
        p.add_argument("--table-depth", type=int, help="ladder products to tabulate")

    add("count-paths", "number of Dyck paths D(k, d1, d2)", path_opts)
    add(
        "enumerate-paths",
        "list Dyck words of D(k, d1, d2)",
        path_opts,
        lambda p: p.add_argument("--limit", type=int),
    )
    add("lambda-mu", "ladder products lambda_p*mu_p", operator_opts, lambda p: p.add_argument("--p-max", type=int))

    def power_opts(p):
        p.add_argument("--k", type=int)
        p.add_argument("--sign", choices=[PLUS, MINUS])
        p.add_argument("--d2", type=int, help="report only this level")

    add("power", "coefficients of (A^dagger +- A)^k on the ladder", operator_opts, power_opts)

    def evolve_opts(p):
        p.add_argument("--K", type=int, help="Taylor order")
        p.add_argument("--r", type=_float_list, help="comma-separated r values")
        p.add_argument("--levels", type=_int_list, help="comma-separated delta2 levels")

    add("evolve", "Taylor-truncated exp[r(A^dagger - A)] on the vacuum", operator_opts, evolve_opts)

    def plot_opts(p):
        p.add_argument("--r", type=_float_list, help="comma-separated r values")
        p.add_argument("--plot-data", action="store_true", help="emit (r, value) pairs on a uniform grid")
        p.add_argument("--r-max", type=float)
        p.add_argument("--points", type=int)

    add("vev", "Taylor series of the vacuum amplitude", operator_opts, lambda p: p.add_argument("--K", type=int), plot_opts)

    def pade_opts(p):
        p.add_argument("--L", type=int)
        p.add_argument("--M", type=int, help="defaults to L")
        p.add_argument("--K", type=int, help="series order (default: just enough)")

    add("pade", "Pade approximant of the vacuum amplitude", operator_opts, pade_opts, plot_opts)

    def oracle_opts(p):
        p.add_argument("--k", type=int, help="check every power up to k")
        p.add_argument("--sign", choices=[PLUS, MINUS], help="default: both")
        p.add_argument("--max-total-quanta", type=int)
        p.add_argument("--max-per-mode", type=int)

    add("oracle-check", "compare the engine with brute-force Fock-space application", operator_opts, oracle_opts)
    return parser


_CASTS: dict[str, Callable[[str], Any]] = {
    "fmt": str,
    "precision": int,
    "k": int,
    "K": int,
    "d1": int,
    "d2": int,
    "sign": str,
    "p_max": int,
    "table_depth": int,
    "L": int,
    "M": int,
    "limit": int,
    "r": _float_list,
    "levels": _int_list,
    "r_max": float,
    "points": int,
    "expr": str,
    "vac": str,
    "max_total_quanta": int,
    "max_per_mode": int,
}


def resolve_config(ns: argparse.Namespace, env: Optional[dict[str, str]] = None) -> RunConfig:
    """Merge parsed flags with environment variables and defaults."""
    env = dict(os.environ) if env is None else env
    values: dict[str, Any] = {}
    for name, cast in _CASTS.items():
        flag = getattr(ns, name, None)
        if flag is not None:
            values[name] = flag
            continue
        raw = _env(name, env)
        if raw is not None and (hasattr(ns, name) or name in ("fmt", "precision")):
            try:
                values[name] = cast(raw)
            except ValueError as exc:
                raise ValidationError(f"{ENV_PREFIX}{_ENV_NAMES.get(name, name.upper())}={raw!r}: {exc}") from None
    cfg = RunConfig(command=ns.command)
    cfg.sign_given = "sign" in values
    cfg.plot_data = bool(getattr(ns, "plot_data", False))
    policy_kwargs = {}
    for name, value in values.items():
        if name == "expr":
            cfg.expr = parse_expr(value)
        elif name == "vac":
            cfg.vac = parse_vacuum(value)
        elif name in ("max_total_quanta", "max_per_mode"):
            policy_kwargs[name] = value
        else:
            setattr(cfg, name, value)
    if policy_kwargs:
        try:
            cfg.policy = TruncationPolicy(**policy_kwargs)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    cfg.validate()
    return cfg


def render(report: Report, fmt: str, command: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, **report.payload}
        return json.dumps(doc, sort_keys=True, indent=2)
    if fmt == "csv":
        if not report.rows:
            return ""
        buf = io.StringIO()
        fields = list(report.rows[0])
        for row in report.rows[1:]:
            fields += [k for k in row if k not in fields]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join(report.plain)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        report = COMMANDS[cfg.command](cfg)
    except DyckHikeError as exc:
        print(f"dyckhike: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyboardInterrupt:
        return 130
    except Exception as exc:  # pragma: no cover - internal failure
        print(f"dyckhike: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 5
    print(render(report, cfg.fmt, cfg.command))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
