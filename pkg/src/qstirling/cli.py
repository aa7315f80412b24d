"""Command-line interface: engine, fridge, regime-map, power-sweep, validate.

Outputs are plot-ready CSV (17-significant-digit floats) or JSON and are
byte-identical across repeated runs of the same configuration.  Exit codes:
0 ok, 1 configuration error, 2 physics validation error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import RunConfig, load_run_config
from .cycles import (
    EngineSpec,
    engine_ledger,
    engine_work_closed_form,
    fridge_ledger,
    fridge_work_closed_form,
    isochoric_heat,
    isothermal_heat,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    OrderingError,
    ParameterError,
    SingularityError,
)
from .performance import (
    Mode,
    PerformanceReport,
    SweepTemplate,
    engine_performance,
    equivalence_report,
    fridge_performance,
    power_sweep,
)
from .relaxation import GevaKosloff, rates
from .statistics import PathSpec, Statistics, integrate_path

_LN2 = math.log(2.0)
_ON_CURVE_TOL = 1e-12

ENGINE_COLUMNS = ("q_iso_hot", "q_iso_cold", "q_isochore_low", "q_isochore_high",
                  "delta_q", "delta", "q_h", "q_c", "w_tot", "eta", "power",
                  "sigma", "tau", "status")
FRIDGE_COLUMNS = ("q_iso_hot", "q_iso_cold", "q_isochore_low", "q_isochore_high",
                  "delta_q", "delta", "q_h", "q_c", "w_tot", "epsilon", "power",
                  "cooling_rate", "tau", "status")
SWEEP_COLUMNS = ("x", "eta", "p_star", "ca_bound", "ref_curve")
REGIME_MAP_COLUMNS = ("q", "x", "l_r", "region")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are configuration errors (exit 1)
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qstirling",
                     description="Regenerative bosonic/fermionic Stirling cycle "
                                 "simulator (natural units hbar = k_B = 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="INI configuration file")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="override output.format from the config")
        p.add_argument("--threads", type=int, default=1, help="worker threads for grids")

    engine = sub.add_parser("engine", help="run one engine operating point")
    add_common(engine)
    engine.set_defaults(handler=_cmd_engine)

    fridge = sub.add_parser("fridge", help="run one refrigerator operating point")
    add_common(fridge)
    fridge.set_defaults(handler=_cmd_fridge)

    regime = sub.add_parser("regime-map", help="grid of the conduction-coefficient ratio")
    regime.add_argument("--q-min", type=float, required=True)
    regime.add_argument("--q-max", type=float, required=True)
    regime.add_argument("--x-min", type=float, required=True)
    regime.add_argument("--x-max", type=float, required=True)
    regime.add_argument("--grid", type=int, required=True, metavar="N")
    regime.add_argument("--out", default=None)
    regime.add_argument("--threads", type=int, default=1)
    regime.set_defaults(handler=_cmd_regime_map)

    sweep = sub.add_parser("power-sweep", help="efficiency/power sweep over beta1*omega1")
    add_common(sweep)
    sweep.add_argument("--x-grid", required=True, metavar="START:STOP:N",
                       help="inclusive grid of x = beta1*omega1 values")
    sweep.add_argument("--summary-out", default=None,
                       help="summary JSON path (default: <out>.summary.json)")
    sweep.set_defaults(handler=_cmd_power_sweep)

    validate = sub.add_parser("validate", help="run the invariant suite on a configuration")
    add_common(validate)
    validate.set_defaults(handler=_cmd_validate)
    return parser


def main(argv=None) -> int:
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OrderingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SingularityError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def _require_geva_kosloff(cfg: RunConfig, command: str):
    if not isinstance(cfg.model, GevaKosloff):
        raise ConfigError(f"the {command} pipeline requires the geva-kosloff bath "
                          f"parametrization (bath.a, bath.q)")


def _run_report(cfg: RunConfig) -> PerformanceReport:
    if cfg.kind == "engine":
        return engine_performance(cfg.spec, cfg.model, cfg.regen, cfg.quad, cfg.mode)
    return fridge_performance(cfg.spec, cfg.model, cfg.regen, cfg.quad, cfg.mode)


def _report_row(report: PerformanceReport, count: int):
    n = float(count)
    ledger = report.ledger
    row = [ledger.q_iso_hot * n, ledger.q_iso_cold * n, ledger.q_isochore_low * n,
           ledger.q_isochore_high * n, ledger.delta_q * n, ledger.delta,
           ledger.q_h * n, ledger.q_c * n, ledger.w_tot * n,
           report.figure_of_merit, report.power * n]
    if report.kind == "engine":
        row.append(report.sigma * n)
    else:
        row.append(report.cooling_rate * n)
    row.extend([report.tau, report.status])
    return row


def _report_payload(report: PerformanceReport, cfg: RunConfig):
    n = float(cfg.particle_count)
    ledger = report.ledger
    merit_key = "eta" if report.kind == "engine" else "epsilon"
    performance = {
        merit_key: report.figure_of_merit,
        "power": report.power * n,
        "sigma": report.sigma * n,
        "tau": report.tau,
    }
    if report.cooling_rate is not None:
        performance["cooling_rate"] = report.cooling_rate * n
    return {
        "kind": report.kind,
        "statistics": report.statistics.value,
        "regime": report.regime.value,
        "status": report.status,
        "particle_count": cfg.particle_count,
        "ledger": {
            "q_iso_hot": ledger.q_iso_hot * n,
            "q_iso_cold": ledger.q_iso_cold * n,
            "q_isochore_low": ledger.q_isochore_low * n,
            "q_isochore_high": ledger.q_isochore_high * n,
            "delta_q": ledger.delta_q * n,
            "delta": ledger.delta,
            "q_h": ledger.q_h * n,
            "q_c": ledger.q_c * n,
            "w_tot": ledger.w_tot * n,
        },
        "performance": performance,
        "timing": {
            "t1": report.timing.t1,
            "t2": report.timing.t2,
            "t3": report.timing.t3,
            "t4": report.timing.t4,
            "tau": report.timing.tau,
            "error_estimates": list(report.timing.error_estimates),
        },
        "regime_extents": {
            "x_min": report.x_min,
            "x_max": report.x_max,
            "x_low_threshold": cfg.x_low_threshold,
            "x_high_threshold": cfg.x_high_threshold,
        },
    }


def _cmd_cycle(args, kind: str) -> int:
    cfg = load_run_config(args.config)
    if cfg.kind != kind:
        raise ConfigError(f"cycle.kind is {cfg.kind!r}; the {kind} command needs {kind!r}")
    _require_geva_kosloff(cfg, kind)
    report = _run_report(cfg)
    out_format = args.format or cfg.out_format
    out_path = args.out or cfg.out_path
    if out_format == "csv":
        columns = ENGINE_COLUMNS if kind == "engine" else FRIDGE_COLUMNS
        text = _csv_text(columns, [_report_row(report, cfg.particle_count)])
    else:
        text = _json_text(_report_payload(report, cfg))
    _emit(text, out_path)
    return 0


def _cmd_engine(args) -> int:
    return _cmd_cycle(args, "engine")


def _cmd_fridge(args) -> int:
    return _cmd_cycle(args, "fridge")


def _classify(q: float, x: float) -> str:
    gap = _LN2 - abs(q) * x
    if abs(gap) <= _ON_CURVE_TOL:
        return "on"
    return "above" if gap > 0.0 else "below"


def _cmd_regime_map(args) -> int:
    if not (-1.0 < args.q_min < args.q_max < 0.0):
        raise ConfigError("require -1 < q-min < q-max < 0")
    if not (0.0 < args.x_min < args.x_max):
        raise ConfigError("require 0 < x-min < x-max")
    if args.grid < 2:
        raise ConfigError("grid must be at least 2")
    n = args.grid
    qs = [args.q_min + (args.q_max - args.q_min) * i / (n - 1) for i in range(n)]
    xs = [args.x_min + (args.x_max - args.x_min) * j / (n - 1) for j in range(n)]

    def rows_for(q):
        return [(q, x, 2.0 * math.exp(q * x), _classify(q, x)) for x in xs]

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            chunks = list(pool.map(rows_for, qs))
    else:
        chunks = [rows_for(q) for q in qs]
    rows = [row for chunk in chunks for row in chunk]
    _emit(_csv_text(REGIME_MAP_COLUMNS, rows), args.out)
    return 0


def _parse_x_grid(raw: str):
    parts = raw.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--x-grid: expected START:STOP:N, got {raw!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"--x-grid: {exc}") from exc
    if count < 1:
        raise ConfigError("--x-grid: N must be at least 1")
    if count == 1:
        if start != stop:
            raise ConfigError("--x-grid: single-point grid requires START == STOP")
        return [start]
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def _sweep_template(cfg: RunConfig) -> SweepTemplate:
    spec = cfg.spec
    if not isinstance(spec, EngineSpec):
        raise ConfigError("power-sweep requires an engine configuration")
    return SweepTemplate(
        beta2_ratio=spec.beta2 / spec.beta1,
        omega2_ratio=spec.omega2 / spec.omega1,
        alpha_h=spec.beta_h / spec.beta1,
        alpha_c=spec.beta_c / spec.beta2,
        gamma1=cfg.regen.gamma1,
        gamma2=cfg.regen.gamma2,
        q=cfg.model.q,
        a=cfg.model.a,
    )


def _cmd_power_sweep(args) -> int:
    cfg = load_run_config(args.config)
    _require_geva_kosloff(cfg, "power-sweep")
    template = _sweep_template(cfg)
    grid = _parse_x_grid(args.x_grid)
    result = power_sweep(template, grid)
    rows = [(r.x, r.eta, r.p_star, r.ca_bound, r.ref_curve) for r in result.records]
    summary = {
        "x_star": result.summary.x_star,
        "p_star_max": result.summary.p_star_max,
        "eta_at_max": result.summary.eta_at_max,
        "ca_bound": result.summary.ca_bound,
        "ref_curve_at_max": result.summary.ref_curve_at_max,
        "eta_below_ref_curve": result.summary.eta_below_ref_curve,
        "eta_below_ca_bound": result.summary.eta_below_ca_bound,
        "grid_argmax_x": result.summary.grid_argmax_x,
    }
    out_format = args.format or cfg.out_format
    out_path = args.out or cfg.out_path
    if out_format == "json":
        _emit(_json_text({"records": [dict(zip(SWEEP_COLUMNS, row)) for row in rows],
                          "summary": summary}), out_path)
        return 0
    csv_text = _csv_text(SWEEP_COLUMNS, rows)
    summary_text = _json_text(summary)
    if out_path is None:
        sys.stdout.write(csv_text)
        sys.stdout.write(summary_text)
    else:
        _emit(csv_text, out_path)
        summary_path = args.summary_out or f"{out_path}.summary.json"
        _emit(summary_text, summary_path)
    return 0


def _relative(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def _cmd_validate(args) -> int:
    cfg = load_run_config(args.config)
    spec = cfg.spec
    checks = []

    # first-law closure: stroke-heat sum against the closed-form total work
    if cfg.kind == "engine":
        cycle = engine_ledger(spec)
        closed = engine_work_closed_form(spec)
        hot_t, cold_t = 1.0 / spec.beta1, 1.0 / spec.beta2
        iso_omega_i, iso_omega_f = spec.omega2, spec.omega1
    else:
        cycle = fridge_ledger(spec)
        closed = fridge_work_closed_form(spec)
        hot_t, cold_t = 1.0 / spec.beta1p, 1.0 / spec.beta2p
        iso_omega_i, iso_omega_f = spec.omega1, spec.omega2
    dev = _relative(cycle.ledger.w_tot, closed)
    checks.append(("first_law_closure", dev <= 1e-12, f"relative deviation {dev:.3e}"))

    # quadrature spot checks of both stroke-heat closed forms
    steps = 10 ** 6
    path = PathSpec(spec.stat,
                    lambda u: iso_omega_i + (iso_omega_f - iso_omega_i) * u,
                    lambda u: (1.0 / hot_t) + 0.0 * u, steps)
    oracle = integrate_path(path).heat
    closed_iso = isothermal_heat(spec.stat, hot_t, iso_omega_i, iso_omega_f)
    dev = _relative(closed_iso, oracle)
    checks.append(("isothermal_heat_oracle", dev <= 1e-8, f"relative deviation {dev:.3e}"))

    beta_lo, beta_hi = 1.0 / hot_t, 1.0 / cold_t
    path = PathSpec(spec.stat, lambda u: spec.omega1 + 0.0 * u,
                    lambda u: beta_lo + (beta_hi - beta_lo) * u, steps)
    oracle = integrate_path(path).heat
    closed_iso = isochoric_heat(spec.stat, spec.omega1, hot_t, cold_t)
    dev = _relative(closed_iso, oracle)
    checks.append(("isochoric_heat_oracle", dev <= 1e-8, f"relative deviation {dev:.3e}"))

    # detailed balance of the configured bath model
    beta_probe = spec.beta_h
    gamma_plus, gamma_minus = rates(cfg.model, beta_probe, spec.omega1, spec.stat)
    ratio = gamma_minus / gamma_plus
    reference = math.exp(beta_probe * spec.omega1)
    ulps = abs(ratio - reference) / math.ulp(reference)
    checks.append(("detailed_balance", ulps <= 4.0, f"{ulps:.1f} ulp"))

    if isinstance(cfg.model, GevaKosloff):
        report = _run_report(cfg)
        dev = _relative(report.power * report.tau, abs(report.w_tot))
        checks.append(("power_tau_identity", dev <= 1e-12, f"relative deviation {dev:.3e}"))
        spec_b = _with_stat(spec, Statistics.BOSONIC)
        spec_f = _with_stat(spec, Statistics.FERMIONIC)
        eq = equivalence_report(spec_b, spec_f, cfg.model, cfg.regen, cfg.quad, Mode.EXACT)
        if eq.x_min >= cfg.x_low_threshold:
            worst = max(eq.deviations.values())
            checks.append(("statistics_equivalence", not eq.exceeding,
                           f"worst deviation {worst:.3e} vs bound {eq.bound:.3e}"))
        else:
            checks.append(("statistics_equivalence", None,
                           f"skipped: x_min {eq.x_min:.3g} below low-temperature "
                           f"threshold {cfg.x_low_threshold:.3g}"))
    else:
        checks.append(("power_tau_identity", None, "skipped: requires geva-kosloff bath"))
        checks.append(("statistics_equivalence", None, "skipped: requires geva-kosloff bath"))

    lines = []
    passed = failed = skipped = 0
    for name, ok, detail in checks:
        if ok is None:
            skipped += 1
            lines.append(f"SKIP {name} ({detail})")
        elif ok:
            passed += 1
            lines.append(f"PASS {name} ({detail})")
        else:
            failed += 1
            lines.append(f"FAIL {name} ({detail})")
    lines.append(f"{passed} passed, {failed} failed, {skipped} skipped")
    text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.out is not None:
        sys.stdout.write(text)
    return 0 if failed == 0 else 3


def _with_stat(spec, stat: Statistics):
    fields = {name: getattr(spec, name) for name in spec.__dataclass_fields__}
    fields["stat"] = stat
    return type(spec)(**fields)


if __name__ == "__main__":
    sys.exit(main())
