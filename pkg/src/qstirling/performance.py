"""Cycle performance: power, cooling rate, entropy production, regime
closed forms, statistics-equivalence reports and power sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .cycles import (
    STATUS_NOT_A_REFRIGERATOR,
    STATUS_NOT_AN_ENGINE,
    STATUS_OK,
    EngineCycle,
    EngineSpec,
    FridgeCycle,
    FridgeSpec,
    StrokeLedger,
    _assemble_engine,
    engine_ledger,
    fridge_ledger,
)
from .errors import ParameterError, SingularityError
from .quadrature import QuadratureConfig
from .relaxation import GevaKosloff
from .statistics import Statistics
from .timing import (
    CycleForm,
    LinearEngineRegenerator,
    LinearFridgeRegenerator,
    TimingReport,
    closed_form_cycle_time,
    engine_cycle_time,
    engine_regime_extents,
    fridge_cycle_time,
    fridge_regime_extents,
)


class Mode(Enum):
    """Pipeline selector: exact quadrature or a regime closed-form set."""

    EXACT = "exact"
    LOW_TEMP = "low_temp"
    HIGH_TEMP = "high_temp"


@dataclass(frozen=True)
class PerformanceReport:
    """Complete per-cycle result for one operating point.

    ``w_tot`` keeps the ledger sign convention (negative when the machine
    delivers work); ``power`` is |w_tot|/tau for both machine kinds, the
    cooling rate is fridge-only, and sigma = -(beta_h*q_h + beta_c*q_c)/tau.
    """

    kind: str
    statistics: Statistics
    ledger: StrokeLedger
    timing: TimingReport
    figure_of_merit: float
    power: float
    cooling_rate: float | None
    sigma: float
    tau: float
    regime: Mode
    status: str
    x_min: float
    x_max: float

    @property
    def q_h(self) -> float:
        return self.ledger.q_h

    @property
    def q_c(self) -> float:
        return self.ledger.q_c

    @property
    def w_tot(self) -> float:
        return self.ledger.w_tot


def _low_temp_engine_cycle(spec: EngineSpec) -> EngineCycle:
    """Low-temperature closed-form set, evaluated literally.

    The set has the delta = 0 regenerator branch baked in (the imbalance is
    negative inside the validity window, and sweep plots extend the
    same equations below it), so Q_h is the hot-isotherm form and the full
    imbalance is vented to the cold bath.
    """
    b1, b2, w1, w2 = spec.beta1, spec.beta2, spec.omega1, spec.omega2
    e11 = math.exp(-b1 * w1)
    e12 = math.exp(-b1 * w2)
    e21 = math.exp(-b2 * w1)
    e22 = math.exp(-b2 * w2)
    q_ab = (w1 + 1.0 / b1) * e11 - (w2 + 1.0 / b1) * e12
    q_cd = w2 * e22 - w1 * e21 + (e22 - e21) / b2
    q_bc = w1 * (e21 - e11)
    q_da = w2 * (e12 - e22)
    delta_q = q_bc + q_da
    heat_sum = q_ab + q_bc + q_cd + q_da
    ledger = StrokeLedger(q_ab, q_cd, q_bc, q_da, delta_q, 0, q_ab,
                          q_cd + delta_q, -heat_sum)
    if q_ab <= 0.0 or heat_sum <= 0.0:
        return EngineCycle(ledger, float("nan"), STATUS_NOT_AN_ENGINE)
    return EngineCycle(ledger, heat_sum / q_ab, STATUS_OK)


def _high_temp_engine_cycle(spec: EngineSpec) -> EngineCycle:
    b1, b2, w1, w2 = spec.beta1, spec.beta2, spec.omega1, spec.omega2
    if spec.stat is Statistics.BOSONIC:
        # equipartition: perfect regeneration, Carnot-like efficiency
        log_w = math.log(w2 / w1)
        q_ab = log_w / b1
        q_cd = -log_w / b2
        q_bc = 1.0 / b2 - 1.0 / b1
        q_da = 1.0 / b1 - 1.0 / b2
    else:
        # two-level medium: regeneration deficit charged to the hot bath
        span = w2 * w2 - w1 * w1
        q_ab = b1 * span / 8.0
        q_cd = -b2 * span / 8.0
        q_bc = w1 * w1 * (b1 - b2) / 4.0
        q_da = w2 * w2 * (b2 - b1) / 4.0
    return _assemble_engine(q_ab, q_cd, q_bc, q_da)


def _low_temp_fridge_cycle(spec: FridgeSpec) -> FridgeCycle:
    """Low-temperature closed-form set for the refrigerator, delta = 0 baked in
    (the imbalance is positive inside the window, so the cooling heat is the
    undisturbed cold-isotherm form and the deficit is charged to the hot bath)."""
    b1p, b2p, w1, w2 = spec.beta1p, spec.beta2p, spec.omega1, spec.omega2
    e11 = math.exp(-b1p * w1)
    e12 = math.exp(-b1p * w2)
    e21 = math.exp(-b2p * w1)
    e22 = math.exp(-b2p * w2)
    q_ba = w2 * e12 - w1 * e11 + (e12 - e11) / b1p
    q_dc = w1 * e21 - w2 * e22 + (e21 - e22) / b2p
    q_cb = w1 * (e11 - e21)
    q_ad = w2 * (e22 - e12)
    delta_q = q_ad + q_cb
    heat_sum = q_ba + q_dc + q_cb + q_ad
    w_tot = -heat_sum
    ledger = StrokeLedger(q_ba, q_dc, q_cb, q_ad, delta_q, 0, q_ba + delta_q,
                          q_dc, w_tot)
    if q_dc <= 0.0 or w_tot <= 0.0:
        return FridgeCycle(ledger, float("nan"), STATUS_NOT_A_REFRIGERATOR)
    return FridgeCycle(ledger, q_dc / w_tot, STATUS_OK)


def _sigma(beta_h: float, beta_c: float, q_h: float, q_c: float, tau: float) -> float:
    return -(beta_h * q_h + beta_c * q_c) / tau


def _require_pipeline_inputs(model, tau: float | None = None):
    if not isinstance(model, GevaKosloff):
        raise ParameterError("cycle pipelines require the Geva-Kosloff rate model")
    if tau is not None and tau <= 0.0:
        raise SingularityError("cycle period underflowed to zero at these parameters")


def engine_performance(spec: EngineSpec, model: GevaKosloff, regen: LinearEngineRegenerator,
                       cfg: QuadratureConfig | None = None,
                       mode: Mode = Mode.EXACT) -> PerformanceReport:
    """Run the engine pipeline in the requested mode.

    EXACT combines the exact ledger with quadrature stroke times; LOW_TEMP
    and HIGH_TEMP evaluate the corresponding closed-form sets (the latter is
    statistics-specific).  Regime validity is reported via x_min/x_max, not
    enforced.
    """
    _require_pipeline_inputs(model)
    if mode is Mode.EXACT:
        cycle = engine_ledger(spec)
        timing = engine_cycle_time(spec, model, regen, cfg)
    elif mode is Mode.LOW_TEMP:
        cycle = _low_temp_engine_cycle(spec)
        timing = closed_form_cycle_time(CycleForm.ENGINE_LOW, spec, model, regen)
    elif mode is Mode.HIGH_TEMP:
        cycle = _high_temp_engine_cycle(spec)
        kind = (CycleForm.ENGINE_HIGH_BOSONIC if spec.stat is Statistics.BOSONIC
                else CycleForm.ENGINE_HIGH_FERMIONIC)
        timing = closed_form_cycle_time(kind, spec, model, regen)
    else:
        raise ParameterError(f"unknown mode: {mode!r}")
    _require_pipeline_inputs(model, timing.tau)
    x_min, x_max = engine_regime_extents(spec, regen)
    ledger = cycle.ledger
    return PerformanceReport(
        kind="engine",
        statistics=spec.stat,
        ledger=ledger,
        timing=timing,
        figure_of_merit=cycle.eta,
        power=abs(ledger.w_tot) / timing.tau,
        cooling_rate=None,
        sigma=_sigma(spec.beta_h, spec.beta_c, ledger.q_h, ledger.q_c, timing.tau),
        tau=timing.tau,
        regime=mode,
        status=cycle.status,
        x_min=x_min,
        x_max=x_max,
    )


def fridge_performance(spec: FridgeSpec, model: GevaKosloff, regen: LinearFridgeRegenerator,
                       cfg: QuadratureConfig | None = None,
                       mode: Mode = Mode.EXACT) -> PerformanceReport:
    """Run the refrigerator pipeline; adds the cooling rate R = Q_c/tau.

    No high-temperature closed-form set exists for the refrigerator, so
    HIGH_TEMP is rejected.
    """
    _require_pipeline_inputs(model)
    if mode is Mode.EXACT:
        cycle = fridge_ledger(spec)
        timing = fridge_cycle_time(spec, model, regen, cfg)
    elif mode is Mode.LOW_TEMP:
        cycle = _low_temp_fridge_cycle(spec)
        timing = closed_form_cycle_time(CycleForm.FRIDGE_LOW, spec, model, regen)
    elif mode is Mode.HIGH_TEMP:
        raise ParameterError("no high-temperature closed forms exist for the refrigerator")
    else:
        raise ParameterError(f"unknown mode: {mode!r}")
    _require_pipeline_inputs(model, timing.tau)
    x_min, x_max = fridge_regime_extents(spec, regen)
    ledger = cycle.ledger
    return PerformanceReport(
        kind="fridge",
        statistics=spec.stat,
        ledger=ledger,
        timing=timing,
        figure_of_merit=cycle.epsilon,
        power=abs(ledger.w_tot) / timing.tau,
        cooling_rate=ledger.q_c / timing.tau,
        sigma=_sigma(spec.beta_h, spec.beta_c, ledger.q_h, ledger.q_c, timing.tau),
        tau=timing.tau,
        regime=mode,
        status=cycle.status,
        x_min=x_min,
        x_max=x_max,
    )


EQUIVALENCE_QUANTITIES = ("q_h", "q_c", "w_tot", "figure_of_merit", "power", "sigma", "tau")


@dataclass(frozen=True)
class EquivalenceReport:
    """Relative bosonic/fermionic deviations against the 2*e^{-x_min} bound."""

    deviations: dict
    bound: float
    x_min: float
    exceeding: tuple


def _relative_deviation(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def equivalence_report(spec_a, spec_b, model: GevaKosloff, regen,
                       cfg: QuadratureConfig | None = None,
                       mode: Mode = Mode.EXACT) -> EquivalenceReport:
    """Compare two specs that may differ only in their statistics.

    The relative deviation of every report quantity is tabulated against
    the theoretical low-temperature bound 2*e^{-x_min}; identical statistics
    trivially give zero deviations.
    """
    if type(spec_a) is not type(spec_b):
        raise ParameterError("specs must be of the same cycle kind")
    numeric = [f for f in spec_a.__dataclass_fields__ if f != "stat"]
    for field in numeric:
        if getattr(spec_a, field) != getattr(spec_b, field):
            raise ParameterError(f"specs differ in {field}; only the statistics may differ")
    if isinstance(spec_a, EngineSpec):
        run = lambda s: engine_performance(s, model, regen, cfg, mode)
    else:
        run = lambda s: fridge_performance(s, model, regen, cfg, mode)
    first = run(spec_a)
    second = run(spec_b)
    quantities = EQUIVALENCE_QUANTITIES
    if first.cooling_rate is not None:
        quantities = quantities + ("cooling_rate",)
    deviations = {
        name: _relative_deviation(getattr(first, name), getattr(second, name))
        for name in quantities
    }
    bound = 2.0 * math.exp(-first.x_min)
    exceeding = tuple(name for name, dev in deviations.items() if dev > bound)
    return EquivalenceReport(deviations, bound, first.x_min, exceeding)


@dataclass(frozen=True)
class SweepTemplate:
    """Shape of the power sweep: every ratio fixed, only x = beta1*omega1 varies.

    The medium statistics is irrelevant because the sweep evaluates the
    statistics-independent low-temperature closed forms.
    """

    beta2_ratio: float
    omega2_ratio: float
    alpha_h: float
    alpha_c: float
    gamma1: float
    gamma2: float
    q: float
    a: float = 1.0

    def __post_init__(self):
        if not self.beta2_ratio > 1.0 or not self.omega2_ratio > 1.0:
            raise ParameterError("beta2_ratio and omega2_ratio must exceed 1")
        if not 0.0 < self.alpha_h < 1.0:
            raise ParameterError("alpha_h must lie in (0, 1)")
        if not self.alpha_c > 1.0:
            raise ParameterError("alpha_c must exceed 1")

    def engine_spec(self, x: float) -> EngineSpec:
        """Engine spec at scaled point x, with omega1 = 1 as reference energy."""
        beta1 = x
        beta2 = self.beta2_ratio * x
        return EngineSpec(
            stat=Statistics.BOSONIC,
            omega1=1.0,
            omega2=self.omega2_ratio,
            beta_h=self.alpha_h * beta1,
            beta1=beta1,
            beta2=beta2,
            beta_c=self.alpha_c * beta2,
        )

    def model(self) -> GevaKosloff:
        return GevaKosloff(self.a, self.q)

    def regenerator(self) -> LinearEngineRegenerator:
        return LinearEngineRegenerator(self.gamma1, self.gamma2)

    def curzon_ahlborn_bound(self) -> float:
        """1 - sqrt(T_c/T_h); constant along the sweep since ratios are fixed."""
        return 1.0 - math.sqrt(self.alpha_h / (self.alpha_c * self.beta2_ratio))


@dataclass(frozen=True)
class SweepRecord:
    x: float
    eta: float
    p_star: float
    ca_bound: float
    ref_curve: float


@dataclass(frozen=True)
class SweepSummary:
    """Power-maximum location after one bisection refinement pass.

    The reference curve 1/(1+x) is the customary plot companion; the constant
    Curzon-Ahlborn bound is reported alongside because the two are easy to conflate
    and the comparisons may genuinely disagree.
    """

    x_star: float
    p_star_max: float
    eta_at_max: float
    ca_bound: float
    ref_curve_at_max: float
    eta_below_ref_curve: bool
    eta_below_ca_bound: bool
    grid_argmax_x: float


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    summary: SweepSummary


def _sweep_point(template: SweepTemplate, x: float) -> tuple[float, float]:
    spec = template.engine_spec(x)
    report = engine_performance(spec, template.model(), template.regenerator(),
                                mode=Mode.LOW_TEMP)
    p_star = report.power * spec.beta1 / template.a
    return report.figure_of_merit, p_star


def power_sweep(template: SweepTemplate, grid: Sequence[float]) -> SweepResult:
    """Sweep x = beta1*omega1 over a strictly increasing positive grid.

    Emits eta, dimensionless power P* = P/(a*k_B*T1), the constant
    Curzon-Ahlborn bound and the 1/(1+x) reference per point; the summary
    refines the grid argmax (ties toward smaller x) with one bisection pass.
    """
    xs = [float(x) for x in grid]
    if not xs:
        raise ParameterError("sweep grid must not be empty")
    if xs[0] <= 0.0:
        raise ParameterError("sweep grid must be positive")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ParameterError("sweep grid must be strictly increasing")
    ca = template.curzon_ahlborn_bound()
    records = []
    for x in xs:
        eta, p_star = _sweep_point(template, x)
        records.append(SweepRecord(x, eta, p_star, ca, 1.0 / (1.0 + x)))
    best = max(range(len(records)), key=lambda i: (records[i].p_star, -records[i].x))
    candidates = [(records[best].x, records[best].p_star, records[best].eta)]
    for neighbour in (best - 1, best + 1):
        if 0 <= neighbour < len(records):
            mid = 0.5 * (records[best].x + records[neighbour].x)
            eta, p_star = _sweep_point(template, mid)
            candidates.append((mid, p_star, eta))
    candidates.sort(key=lambda c: (-c[1], c[0]))
    x_star, p_max, eta_star = candidates[0]
    ref = 1.0 / (1.0 + x_star)
    summary = SweepSummary(
        x_star=x_star,
        p_star_max=p_max,
        eta_at_max=eta_star,
        ca_bound=ca,
        ref_curve_at_max=ref,
        eta_below_ref_curve=eta_star < ref,
        eta_below_ca_bound=eta_star < ca,
        grid_argmax_x=records[best].x,
    )
    return SweepResult(tuple(records), summary)
