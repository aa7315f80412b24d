"""Quasistatic stroke heats, regenerator bookkeeping and figures of merit.

Cycle corners follow the n-omega diagrams: the engine visits
A(omega2, T1) -> B(omega1, T1) -> C(omega1, T2) -> D(omega2, T2) -> A,
absorbing heat on the hot isotherm A->B; the refrigerator runs the same
corners in reverse, A -> D -> C -> B -> A.  Every heat is signed into the
working medium.  The ledger stores ``w_tot = -(sum of stroke heats)``,
which is negative when the cycle delivers net work (engine) and positive
when work is consumed (refrigerator).
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass

from .errors import OrderingError, ParameterError
from .statistics import Statistics, population

STATUS_OK = "ok"
STATUS_NOT_AN_ENGINE = "not_an_engine"
STATUS_NOT_A_REFRIGERATOR = "not_a_refrigerator"


def _require_positive(**values):
    for name, value in values.items():
        if not value > 0.0:
            raise ParameterError(f"{name} must be positive, got {value!r}")


def isothermal_heat(stat: Statistics, temperature: float, omega_i: float, omega_f: float) -> float:
    """Heat absorbed while the frequency sweeps omega_i -> omega_f at fixed T_s.

    Closed form of ``integral omega dn`` along an isotherm:
    ``omega_f n_f - omega_i n_i +- T ln[(1 +- e^{-omega_f/T})/(1 +- e^{-omega_i/T})]``.
    Antisymmetric under swapping the endpoints.
    """
    _require_positive(temperature=temperature, omega_i=omega_i, omega_f=omega_f)
    x_i = omega_i / temperature
    x_f = omega_f / temperature
    n_i = population(stat, x_i)
    n_f = population(stat, x_f)
    if stat is Statistics.BOSONIC:
        logs = -temperature * (math.log1p(-math.exp(-x_f)) - math.log1p(-math.exp(-x_i)))
    else:
        logs = temperature * (math.log1p(math.exp(-x_f)) - math.log1p(math.exp(-x_i)))
    return omega_f * n_f - omega_i * n_i + logs


def isochoric_heat(stat: Statistics, omega: float, t_i: float, t_f: float) -> float:
    """Heat absorbed at fixed frequency while T_s moves t_i -> t_f: omega*(n_f - n_i)."""
    _require_positive(omega=omega, t_i=t_i, t_f=t_f)
    return omega * (population(stat, omega / t_f) - population(stat, omega / t_i))


def _check_chain(kind: str, links: list[tuple[str, float, str, float]]):
    violated = [f"{a} < {b}" for a, lo, b, hi in links if not lo < hi]
    if violated:
        raise OrderingError(f"{kind} ordering violated: requires " + ", ".join(violated))


@dataclass(frozen=True)
class EngineSpec:
    """Engine cycle parameters; temperatures obey T_h > T_1 > T_2 > T_c.

    Equivalently beta_h < beta1 < beta2 < beta_c, with omega1 < omega2.
    Pass ``validate=False`` only to probe degenerate corners in tests.
    """

    stat: Statistics
    omega1: float
    omega2: float
    beta_h: float
    beta1: float
    beta2: float
    beta_c: float
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        _require_positive(omega1=self.omega1, omega2=self.omega2, beta_h=self.beta_h,
                          beta1=self.beta1, beta2=self.beta2, beta_c=self.beta_c)
        if validate:
            _check_chain("EngineSpec", [
                ("omega1", self.omega1, "omega2", self.omega2),
                ("beta_h", self.beta_h, "beta1", self.beta1),
                ("beta1", self.beta1, "beta2", self.beta2),
                ("beta2", self.beta2, "beta_c", self.beta_c),
            ])


@dataclass(frozen=True)
class FridgeSpec:
    """Refrigerator cycle parameters; T'_1 > T_h > T_c > T'_2.

    Equivalently beta1p < beta_h < beta_c < beta2p, with omega1 < omega2.
    """

    stat: Statistics
    omega1: float
    omega2: float
    beta1p: float
    beta_h: float
    beta_c: float
    beta2p: float
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        _require_positive(omega1=self.omega1, omega2=self.omega2, beta1p=self.beta1p,
                          beta_h=self.beta_h, beta_c=self.beta_c, beta2p=self.beta2p)
        if validate:
            _check_chain("FridgeSpec", [
                ("omega1", self.omega1, "omega2", self.omega2),
                ("beta1p", self.beta1p, "beta_h", self.beta_h),
                ("beta_h", self.beta_h, "beta_c", self.beta_c),
                ("beta_c", self.beta_c, "beta2p", self.beta2p),
            ])


@dataclass(frozen=True)
class StrokeLedger:
    """Per-cycle heat bookkeeping.

    ``delta_q`` is the regenerator imbalance and ``delta`` the switch that
    selects which bath compensates it.  ``q_h``/``q_c`` are the net heats
    exchanged with the hot/cold baths after compensation, and
    ``w_tot = -(q_iso_hot + q_iso_cold + q_isochore_low + q_isochore_high)``.
    """

    q_iso_hot: float
    q_iso_cold: float
    q_isochore_low: float
    q_isochore_high: float
    delta_q: float
    delta: int
    q_h: float
    q_c: float
    w_tot: float


@dataclass(frozen=True)
class EngineCycle:
    ledger: StrokeLedger
    eta: float
    status: str


@dataclass(frozen=True)
class FridgeCycle:
    ledger: StrokeLedger
    epsilon: float
    status: str


def engine_ledger(spec: EngineSpec) -> EngineCycle:
    """Assemble the engine stroke heats and efficiency eta = -W_tot/Q_h.

    The regenerator imbalance ``delta_q = Q_BC + Q_DA`` is charged to the
    hot bath when positive (delta = 1) and dumped into the cold bath when
    negative (delta = 0); perfect regeneration keeps delta = 0.
    """
    t1 = 1.0 / spec.beta1
    t2 = 1.0 / spec.beta2
    q_ab = isothermal_heat(spec.stat, t1, spec.omega2, spec.omega1)
    q_cd = isothermal_heat(spec.stat, t2, spec.omega1, spec.omega2)
    q_bc = isochoric_heat(spec.stat, spec.omega1, t1, t2)
    q_da = isochoric_heat(spec.stat, spec.omega2, t2, t1)
    return _assemble_engine(q_ab, q_cd, q_bc, q_da)


def _assemble_engine(q_ab: float, q_cd: float, q_bc: float, q_da: float) -> EngineCycle:
    delta_q = q_bc + q_da
    delta = 1 if delta_q > 0.0 else 0
    q_h = q_ab + delta * delta_q
    q_c = q_cd + (1 - delta) * delta_q
    heat_sum = q_ab + q_bc + q_cd + q_da
    ledger = StrokeLedger(q_ab, q_cd, q_bc, q_da, delta_q, delta, q_h, q_c, -heat_sum)
    if q_h <= 0.0 or heat_sum <= 0.0:
        return EngineCycle(ledger, float("nan"), STATUS_NOT_AN_ENGINE)
    return EngineCycle(ledger, heat_sum / q_h, STATUS_OK)


def fridge_ledger(spec: FridgeSpec) -> FridgeCycle:
    """Assemble the refrigerator stroke heats and COP epsilon = Q_c/W_tot.

    Here ``delta_q = Q_AD + Q_CB``; a deficit (delta_q > 0) is made up by
    the hot bath while a surplus (delta = 1, delta_q < 0) is vented to the
    cold bath, reducing the useful cooling heat.
    """
    t1p = 1.0 / spec.beta1p
    t2p = 1.0 / spec.beta2p
    q_ba = isothermal_heat(spec.stat, t1p, spec.omega1, spec.omega2)
    q_dc = isothermal_heat(spec.stat, t2p, spec.omega2, spec.omega1)
    q_cb = isochoric_heat(spec.stat, spec.omega1, t2p, t1p)
    q_ad = isochoric_heat(spec.stat, spec.omega2, t1p, t2p)
    return _assemble_fridge(q_ba, q_dc, q_cb, q_ad)


def _assemble_fridge(q_ba: float, q_dc: float, q_cb: float, q_ad: float) -> FridgeCycle:
    delta_q = q_ad + q_cb
    delta = 1 if delta_q < 0.0 else 0
    q_c = q_dc - delta * abs(delta_q)
    q_h = q_ba + (1 - delta) * delta_q
    heat_sum = q_ba + q_dc + q_cb + q_ad
    w_tot = -heat_sum
    ledger = StrokeLedger(q_ba, q_dc, q_cb, q_ad, delta_q, delta, q_h, q_c, w_tot)
    if q_c <= 0.0 or w_tot <= 0.0:
        return FridgeCycle(ledger, float("nan"), STATUS_NOT_A_REFRIGERATOR)
    return FridgeCycle(ledger, q_c / w_tot, STATUS_OK)


def _log_weight(stat: Statistics, x: float) -> float:
    # +-ln(1 +- e^{-x}); the per-statistics piece of the isothermal log term
    if stat is Statistics.BOSONIC:
        return -math.log1p(-math.exp(-x))
    return math.log1p(math.exp(-x))


def engine_work_closed_form(spec: EngineSpec) -> float:
    """Signed total work from the two-isotherm closed form (ledger convention)."""
    lw = lambda x: _log_weight(spec.stat, x)
    minus_w = (lw(spec.beta1 * spec.omega1) - lw(spec.beta1 * spec.omega2)) / spec.beta1 \
        + (lw(spec.beta2 * spec.omega2) - lw(spec.beta2 * spec.omega1)) / spec.beta2
    return -minus_w


def fridge_work_closed_form(spec: FridgeSpec) -> float:
    """Signed total work for the refrigerator cycle (positive = work input)."""
    lw = lambda x: _log_weight(spec.stat, x)
    minus_w = (lw(spec.beta2p * spec.omega1) - lw(spec.beta2p * spec.omega2)) / spec.beta2p \
        + (lw(spec.beta1p * spec.omega2) - lw(spec.beta1p * spec.omega1)) / spec.beta1p
    return -minus_w


def engine_carnot_bound(spec: EngineSpec) -> float:
    """Upper efficiency bound 1 - T_c/T_h set by the bath temperatures."""
    return 1.0 - spec.beta_h / spec.beta_c
