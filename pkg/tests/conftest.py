"""Shared helpers: relative deviation and random-but-reproducible cycle specs."""

import numpy as np
import pytest

from qstirling import EngineSpec, FridgeSpec, Statistics


def rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def random_engine_spec(rng: np.random.Generator, stat: Statistics,
                       x_lo: float = 0.05, x_hi: float = 25.0) -> EngineSpec:
    """Valid engine spec with x = beta1*omega1 log-uniform in [x_lo, x_hi]."""
    omega1 = rng.uniform(0.5, 2.0)
    omega2 = omega1 * rng.uniform(1.2, 3.0)
    x = float(np.exp(rng.uniform(np.log(x_lo), np.log(x_hi))))
    beta1 = x / omega1
    beta2 = beta1 * rng.uniform(1.2, 3.0)
    alpha_h = rng.uniform(0.5, 0.95)
    alpha_c = rng.uniform(1.05, 2.0)
    return EngineSpec(stat, omega1, omega2, alpha_h * beta1, beta1, beta2, alpha_c * beta2)


def random_fridge_spec(rng: np.random.Generator, stat: Statistics,
                       x_lo: float = 0.05, x_hi: float = 25.0) -> FridgeSpec:
    """Valid fridge spec (beta1p < beta_h < beta_c < beta2p)."""
    omega1 = rng.uniform(0.5, 2.0)
    omega2 = omega1 * rng.uniform(1.2, 3.0)
    x = float(np.exp(rng.uniform(np.log(x_lo), np.log(x_hi))))
    beta1p = x / omega1
    ratio = rng.uniform(1.5, 3.0)
    beta2p = beta1p * ratio
    beta_h = beta1p * rng.uniform(1.02, 1.0 + 0.45 * (ratio - 1.0))
    beta_c = rng.uniform(beta_h * 1.02, beta2p * 0.98)
    return FridgeSpec(stat, omega1, omega2, beta1p, beta_h, beta_c, beta2p)


def lowtemp_engine_spec(stat: Statistics, x_min: float, omega_ratio: float = 2.0,
                        beta_ratio: float = 2.0, alpha_h: float = 0.6,
                        alpha_c: float = 1.4, gamma2: float = 0.6) -> EngineSpec:
    """Engine spec from the reference sweep family with a prescribed cycle x_min.

    x_min = min(alpha_h, gamma2) * beta1 * omega1 given gamma2 <= 1 <= gamma1.
    """
    omega1 = 1.0
    beta1 = x_min / (min(alpha_h, gamma2) * omega1)
    beta2 = beta_ratio * beta1
    return EngineSpec(stat, omega1, omega_ratio * omega1,
                      alpha_h * beta1, beta1, beta2, alpha_c * beta2)


def lowtemp_fridge_spec(stat: Statistics, x_min: float, omega_ratio: float = 2.0,
                        beta_ratio: float = 2.0, alpha_hp: float = 1.4,
                        alpha_cp: float = 0.8, bp: float = 0.6) -> FridgeSpec:
    """Fridge analogue; x_min = bp * beta1p * omega1 for bp < 1."""
    omega1 = 1.0
    beta1p = x_min / (bp * omega1)
    beta2p = beta_ratio * beta1p
    return FridgeSpec(stat, omega1, omega_ratio * omega1, beta1p,
                      alpha_hp * beta1p, alpha_cp * beta2p, beta2p)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
