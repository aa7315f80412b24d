"""Finite-time stroke durations and closed-form cycle periods.

Stroke times follow from integrating the population rate equation along
each branch.  All integrands share the structure

    1 / [ e^{q*beta*omega} * (e^{beta*omega} - e^{beta_s*omega}) * (1 +- e^{-beta_s*omega}) ]

where ``beta`` is the bath (isotherms) or regenerator (isochores) inverse
temperature.  The exponential difference is evaluated in log space,
``sign * e^{max} * (1 - e^{-|dx|})``, so large products never overflow.
Callers integrate along the physical stroke direction, which always yields
a positive duration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

from .cycles import EngineSpec, FridgeSpec
from .errors import ConvergenceError, ParameterError, SingularityError
from .quadrature import QuadratureConfig, integrate
from .relaxation import GevaKosloff
from .statistics import Statistics


@dataclass(frozen=True)
class LinearEngineRegenerator:
    """Regenerator temperature proportional to the medium's: beta_r = c*beta_s.

    gamma1 > 1 keeps the regenerator colder than the medium while it absorbs
    heat on the low-frequency isochore; gamma2 < 1 keeps it hotter while it
    returns heat on the high-frequency one.
    """

    gamma1: float
    gamma2: float

    def __post_init__(self):
        if not self.gamma1 > 1.0:
            raise ParameterError(f"gamma1 must exceed 1, got {self.gamma1!r}")
        if not 0.0 < self.gamma2 < 1.0:
            raise ParameterError(f"gamma2 must lie in (0, 1), got {self.gamma2!r}")


@dataclass(frozen=True)
class LinearFridgeRegenerator:
    """Refrigerator analogue with beta'_1r = b*beta_s and beta'_2r = bp*beta_s.

    Only positivity is checked here; whether each mapping stays on the
    correct side of the medium temperature is detected at evaluation time.
    """

    b: float
    bp: float

    def __post_init__(self):
        if not self.b > 0.0 or not self.bp > 0.0:
            raise ParameterError("fridge regenerator constants must be positive")


class StrokeTime(NamedTuple):
    duration: float
    error_estimate: float


@dataclass(frozen=True)
class TimingReport:
    """Stroke durations in cycle order plus their quadrature error estimates."""

    t1: float
    t2: float
    t3: float
    t4: float
    tau: float
    error_estimates: tuple[float, float, float, float]


def _stat_weight(stat: Statistics, x_s: float) -> float:
    # 1 -+ e^{-beta_s*omega}: the only statistics-dependent integrand factor
    if stat is Statistics.BOSONIC:
        return -math.expm1(-x_s)
    return 1.0 + math.exp(-x_s)


def _rate_denominator(stat: Statistics, q: float, x: float, x_s: float) -> float:
    """Signed e^{q*x} * (e^x - e^{x_s}) * (1 +- e^{-x_s}) without overflow."""
    gap = x - x_s
    magnitude = math.exp(-q * x - max(x, x_s)) / (-math.expm1(-abs(gap)))
    value = magnitude / _stat_weight(stat, x_s)
    return value if gap > 0.0 else -value


def isothermal_time(stat: Statistics, model: GevaKosloff, beta: float, beta_s: float,
                    omega_i: float, omega_f: float,
                    cfg: QuadratureConfig | None = None) -> StrokeTime:
    """Duration of an isothermal stroke sweeping omega_i -> omega_f at fixed beta_s.

    ``t = (beta_s / 2a) * integral domega / [e^{q*beta*omega} (e^{beta*omega} -
    e^{beta_s*omega}) (1 +- e^{-beta_s*omega})]``.  The bath must sit on the
    side that drives the stroke: relaxation toward equilibrium takes forever
    when beta = beta_s, and a reversed sweep direction yields a negative
    duration, which is rejected.
    """
    if beta <= 0.0 or beta_s <= 0.0 or omega_i <= 0.0 or omega_f <= 0.0:
        raise ParameterError("temperatures and frequencies must be positive")
    if beta == beta_s:
        raise SingularityError("bath and medium temperatures coincide: "
                               "infinite relaxation time")
    q = model.q

    def integrand(omega: float) -> float:
        return _rate_denominator(stat, q, beta * omega, beta_s * omega)

    scale = beta_s / (2.0 * model.a)
    result = _integrate_scaled(integrand, omega_i, omega_f, cfg, scale)
    duration = scale * result.value
    if duration < 0.0:
        raise ParameterError(
            "integration direction yields a negative duration; the stroke "
            "must run toward the bath-driven equilibrium")
    return StrokeTime(duration, abs(scale) * result.error_estimate)


def isochoric_time(stat: Statistics, model: GevaKosloff, regenerator: Callable[[float], float],
                   omega: float, beta_i: float, beta_f: float,
                   cfg: QuadratureConfig | None = None) -> StrokeTime:
    """Duration of a constant-frequency stroke with beta_s sweeping beta_i -> beta_f.

    ``regenerator`` maps the medium inverse temperature to the regenerator
    one; it must stay on a single side of the identity over the sweep, else
    the heat flow would reverse mid-stroke and the denominator changes sign.
    The crossing point is located by bisection and reported.
    """
    if omega <= 0.0 or beta_i <= 0.0 or beta_f <= 0.0:
        raise ParameterError("frequency and temperatures must be positive")
    q = model.q
    seen: list[tuple[float, float]] = []  # (beta_s, regenerator gap) at evaluations

    def integrand(beta_s: float) -> float:
        beta_r = regenerator(beta_s)
        gap = beta_r - beta_s
        if gap == 0.0:
            raise SingularityError(
                f"regenerator temperature crosses the medium temperature at "
                f"beta_s = {beta_s!r}")
        if seen and (gap > 0.0) != (seen[-1][1] > 0.0):
            crossing = _bisect_crossing(regenerator, seen[-1][0], beta_s)
            raise SingularityError(
                f"regenerator temperature crosses the medium temperature at "
                f"beta_s = {crossing:.12g}")
        seen.append((beta_s, gap))
        return _rate_denominator(stat, q, beta_r * omega, beta_s * omega)

    scale = omega / (2.0 * model.a)
    result = _integrate_scaled(integrand, beta_i, beta_f, cfg, scale)
    duration = scale * result.value
    if duration < 0.0:
        raise ParameterError(
            "integration direction yields a negative duration; the stroke "
            "must run toward the regenerator-driven equilibrium")
    return StrokeTime(duration, abs(scale) * result.error_estimate)


def _integrate_scaled(integrand, lo: float, hi: float, cfg, scale: float):
    # rescale a convergence failure so the partial result is a partial duration
    try:
        return integrate(integrand, lo, hi, cfg)
    except ConvergenceError as exc:
        raise ConvergenceError(str(exc), scale * exc.partial,
                               abs(scale) * exc.error_estimate) from exc


def _bisect_crossing(mapping: Callable[[float], float], lo: float, hi: float) -> float:
    if lo > hi:
        lo, hi = hi, lo
    f_lo = mapping(lo) - lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = mapping(mid) - mid
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _stroke(label: str, fn, *args) -> StrokeTime:
    try:
        return fn(*args)
    except SingularityError as exc:
        raise SingularityError(f"stroke {label}: {exc}") from exc
    except ConvergenceError as exc:
        raise ConvergenceError(f"stroke {label}: {exc}", exc.partial,
                               exc.error_estimate) from exc
    except ParameterError as exc:
        raise ParameterError(f"stroke {label}: {exc}") from exc


def engine_cycle_time(spec: EngineSpec, model: GevaKosloff, regen: LinearEngineRegenerator,
                      cfg: QuadratureConfig | None = None) -> TimingReport:
    """Per-stroke durations of the engine cycle, in A->B->C->D->A order.

    t1: hot isotherm at beta1 against the beta_h bath (omega2 -> omega1);
    t2: low-frequency isochore against the gamma1 regenerator branch;
    t3: cold isotherm at beta2 against beta_c (omega1 -> omega2);
    t4: high-frequency isochore against the gamma2 branch.
    """
    t1 = _stroke("A->B", isothermal_time, spec.stat, model, spec.beta_h, spec.beta1,
                 spec.omega2, spec.omega1, cfg)
    t2 = _stroke("B->C", isochoric_time, spec.stat, model,
                 lambda b: regen.gamma1 * b, spec.omega1, spec.beta1, spec.beta2, cfg)
    t3 = _stroke("C->D", isothermal_time, spec.stat, model, spec.beta_c, spec.beta2,
                 spec.omega1, spec.omega2, cfg)
    t4 = _stroke("D->A", isochoric_time, spec.stat, model,
                 lambda b: regen.gamma2 * b, spec.omega2, spec.beta2, spec.beta1, cfg)
    return _report(t1, t2, t3, t4)


def fridge_cycle_time(spec: FridgeSpec, model: GevaKosloff, regen: LinearFridgeRegenerator,
                      cfg: QuadratureConfig | None = None) -> TimingReport:
    """Per-stroke durations of the refrigerator cycle.

    t1: cold isotherm at beta2p against beta_c (omega2 -> omega1, stroke D->C);
    t2: low-frequency isochore against the bp branch (C->B);
    t3: hot isotherm at beta1p against beta_h (omega1 -> omega2, B->A);
    t4: high-frequency isochore against the b branch (A->D).
    """
    t1 = _stroke("D->C", isothermal_time, spec.stat, model, spec.beta_c, spec.beta2p,
                 spec.omega2, spec.omega1, cfg)
    t2 = _stroke("C->B", isochoric_time, spec.stat, model,
                 lambda b: regen.bp * b, spec.omega1, spec.beta2p, spec.beta1p, cfg)
    t3 = _stroke("B->A", isothermal_time, spec.stat, model, spec.beta_h, spec.beta1p,
                 spec.omega1, spec.omega2, cfg)
    t4 = _stroke("A->D", isochoric_time, spec.stat, model,
                 lambda b: regen.b * b, spec.omega2, spec.beta1p, spec.beta2p, cfg)
    return _report(t1, t2, t3, t4)


def _report(t1: StrokeTime, t2: StrokeTime, t3: StrokeTime, t4: StrokeTime) -> TimingReport:
    return TimingReport(
        t1.duration, t2.duration, t3.duration, t4.duration,
        t1.duration + t2.duration + t3.duration + t4.duration,
        (t1.error_estimate, t2.error_estimate, t3.error_estimate, t4.error_estimate),
    )


class CycleForm(Enum):
    """Closed-form cycle-period families."""

    ENGINE_LOW = "engine_low"
    FRIDGE_LOW = "fridge_low"
    ENGINE_HIGH_BOSONIC = "engine_high_bosonic"
    ENGINE_HIGH_FERMIONIC = "engine_high_fermionic"


def _exp_span(prefactor_rate: float, a: float, x_start: float, x_end: float) -> float:
    # (e^{-k*x_start} - e^{-k*x_end}) / (2*a*k) with k = prefactor_rate
    if prefactor_rate == 0.0:
        raise SingularityError("closed-form exponent coefficient vanished")
    return (math.exp(-prefactor_rate * x_start) - math.exp(-prefactor_rate * x_end)) \
        / (2.0 * a * prefactor_rate)


def closed_form_cycle_time(kind: CycleForm, spec, model: GevaKosloff,
                           regen) -> TimingReport:
    """Evaluate the low- or high-temperature closed-form stroke times.

    Validity of the regime is not enforced; compare against the quadrature
    pipeline to judge it.  High-temperature forms exist for the engine only
    and assume the linear regenerator mapping.
    """
    a, q = model.a, model.q
    zeros = (0.0, 0.0, 0.0, 0.0)
    if kind is CycleForm.ENGINE_LOW:
        _expect(spec, EngineSpec, regen, LinearEngineRegenerator, kind)
        alpha_h = spec.beta_h / spec.beta1
        alpha_c = spec.beta_c / spec.beta2
        b1, b2, w1, w2 = spec.beta1, spec.beta2, spec.omega1, spec.omega2
        t1 = _exp_span(1.0 + alpha_h * q, a, b1 * w1, b1 * w2)
        t2 = _exp_span(regen.gamma1 * (1.0 + q), a, b1 * w1, b2 * w1)
        t3 = _exp_span(alpha_c * (1.0 + q), a, b2 * w1, b2 * w2)
        t4 = _exp_span(1.0 + regen.gamma2 * q, a, b1 * w2, b2 * w2)
        return TimingReport(t1, t2, t3, t4, t1 + t2 + t3 + t4, zeros)
    if kind is CycleForm.FRIDGE_LOW:
        _expect(spec, FridgeSpec, regen, LinearFridgeRegenerator, kind)
        alpha_hp = spec.beta_h / spec.beta1p
        alpha_cp = spec.beta_c / spec.beta2p
        b1p, b2p, w1, w2 = spec.beta1p, spec.beta2p, spec.omega1, spec.omega2
        t1 = _exp_span(1.0 + q * alpha_cp, a, b2p * w1, b2p * w2)
        t2 = _exp_span(1.0 + q * regen.bp, a, b1p * w1, b2p * w1)
        t3 = _exp_span((1.0 + q) * alpha_hp, a, b1p * w1, b1p * w2)
        t4 = _exp_span((1.0 + q) * regen.b, a, b1p * w2, b2p * w2)
        return TimingReport(t1, t2, t3, t4, t1 + t2 + t3 + t4, zeros)
    if kind is CycleForm.ENGINE_HIGH_BOSONIC:
        _expect(spec, EngineSpec, regen, LinearEngineRegenerator, kind)
        b1, b2, w1, w2 = spec.beta1, spec.beta2, spec.omega1, spec.omega2
        t1 = (w2 - w1) / (2.0 * a * w1 * w2 * (b1 - spec.beta_h))
        t3 = (w2 - w1) / (2.0 * a * w1 * w2 * (spec.beta_c - b2))
        inv_span = 1.0 / b1 - 1.0 / b2
        t2 = inv_span / (2.0 * a * w1 * (regen.gamma1 - 1.0))
        t4 = inv_span / (2.0 * a * w2 * (1.0 - regen.gamma2))
        return TimingReport(t1, t2, t3, t4, t1 + t2 + t3 + t4, zeros)
    if kind is CycleForm.ENGINE_HIGH_FERMIONIC:
        _expect(spec, EngineSpec, regen, LinearEngineRegenerator, kind)
        b1, b2, w1, w2 = spec.beta1, spec.beta2, spec.omega1, spec.omega2
        log_w = math.log(w2 / w1)
        t1 = b1 * log_w / (4.0 * a * (b1 - spec.beta_h))
        t3 = b2 * log_w / (4.0 * a * (spec.beta_c - b2))
        log_b = math.log(b2 / b1)
        t2 = log_b / (4.0 * a * (regen.gamma1 - 1.0))
        t4 = log_b / (4.0 * a * (1.0 - regen.gamma2))
        return TimingReport(t1, t2, t3, t4, t1 + t2 + t3 + t4, zeros)
    raise ParameterError(f"unknown closed-form kind: {kind!r}")


def _expect(spec, spec_type, regen, regen_type, kind: CycleForm):
    if not isinstance(spec, spec_type) or not isinstance(regen, regen_type):
        raise ParameterError(
            f"{kind.value} requires a {spec_type.__name__} and {regen_type.__name__}")


def engine_regime_extents(spec: EngineSpec, regen: LinearEngineRegenerator) -> tuple[float, float]:
    """Smallest and largest beta*omega product visited by the engine cycle.

    Scans bath, medium and regenerator inverse temperatures against both
    frequencies; used to score low/high-temperature regime validity.
    """
    betas = (spec.beta_h, spec.beta1, spec.beta2, spec.beta_c,
             regen.gamma1 * spec.beta1, regen.gamma1 * spec.beta2,
             regen.gamma2 * spec.beta1, regen.gamma2 * spec.beta2)
    return min(betas) * spec.omega1, max(betas) * spec.omega2


def fridge_regime_extents(spec: FridgeSpec, regen: LinearFridgeRegenerator) -> tuple[float, float]:
    """Fridge counterpart of :func:`engine_regime_extents`."""
    betas = (spec.beta1p, spec.beta_h, spec.beta_c, spec.beta2p,
             regen.b * spec.beta1p, regen.b * spec.beta2p,
             regen.bp * spec.beta1p, regen.bp * spec.beta2p)
    return min(betas) * spec.omega1, max(betas) * spec.omega2
