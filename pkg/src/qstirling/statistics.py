"""Single-oscillator occupation statistics and path thermodynamics.

Natural units hbar = k_B = 1 throughout: frequencies, temperatures and
energies are plain positive floats, and every formula depends only on
products beta * omega.  Heat is positive when it flows into the working
medium; work is negative when done by the medium.

The two oscillator families never share a signed formula: each function
dispatches explicitly on :class:`Statistics` so the opposite sign
conventions of the bosonic and fermionic distributions cannot leak into
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .errors import ParameterError


class Statistics(Enum):
    """Working-medium family: unbounded harmonic mode or two-level mode."""

    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"


def population(stat: Statistics, x):
    """Mean occupation number at scaled energy ``x = beta_s * omega``.

    Parameters
    ----------
    stat : Statistics
        Bosonic gives ``1/(exp(x) - 1)``, fermionic ``1/(exp(x) + 1)``.
    x : float or ndarray
        Positive product of inverse temperature and frequency.

    Returns
    -------
    float or ndarray
        Occupation, in ``(0, inf)`` for bosonic and ``(0, 1/2)`` for
        fermionic media; strictly decreasing in ``x``.
    """
    xa = np.asarray(x, dtype=float)
    if xa.size == 0 or np.any(xa <= 0.0) or not np.all(np.isfinite(xa)):
        raise ParameterError("population requires x = beta_s*omega > 0")
    # exp(-x)/(1 -+ exp(-x)) never overflows, unlike 1/(exp(x) -+ 1)
    decay = np.exp(-xa)
    if stat is Statistics.BOSONIC:
        out = decay / (-np.expm1(-xa))
    elif stat is Statistics.FERMIONIC:
        out = decay / (1.0 + decay)
    else:
        raise ParameterError(f"unknown statistics kind: {stat!r}")
    return float(out) if np.ndim(x) == 0 else out


def inverse_population(stat: Statistics, n: float, temperature: float) -> float:
    """Frequency at which the medium holds occupation ``n`` at ``temperature``.

    Inverts :func:`population`: ``omega = T*log((1 -+ n)/n)`` with the
    statistics-appropriate sign.  Fermionic occupations must lie strictly
    inside ``(0, 1/2)``; bosonic occupations only need to be positive.
    """
    if temperature <= 0.0:
        raise ParameterError("temperature must be positive")
    if stat is Statistics.BOSONIC:
        if n <= 0.0:
            raise ParameterError("bosonic occupation must be positive")
        return temperature * math.log1p(1.0 / n)
    if stat is Statistics.FERMIONIC:
        if not 0.0 < n < 0.5:
            raise ParameterError("fermionic occupation must lie in (0, 1/2)")
        return temperature * math.log1p((1.0 - 2.0 * n) / n)
    raise ParameterError(f"unknown statistics kind: {stat!r}")


def internal_energy(stat: Statistics, omega: float, n: float):
    """Oscillator energy ``omega*(n + 1/2)`` bosonic, ``omega*(n - 1/2)`` fermionic.

    The zero-point shift makes fermionic energies live in ``[-omega/2, 0]``
    while bosonic ones exceed ``omega/2``.
    """
    if np.any(np.asarray(omega) <= 0.0):
        raise ParameterError("omega must be positive")
    if np.any(np.asarray(n) < 0.0):
        raise ParameterError("occupation must be nonnegative")
    if stat is Statistics.BOSONIC:
        return omega * (n + 0.5)
    if stat is Statistics.FERMIONIC:
        if np.any(np.asarray(n) > 0.5):
            raise ParameterError("fermionic occupation cannot exceed 1/2")
        return omega * (n - 0.5)
    raise ParameterError(f"unknown statistics kind: {stat!r}")


@dataclass(frozen=True)
class PathSpec:
    """Piecewise-smooth control path ``u -> (omega(u), beta_s(u))``, u in [0, 1].

    Both callables must accept numpy arrays and stay positive on [0, 1].
    """

    stat: Statistics
    omega: Callable
    beta: Callable
    step_count: int


class PathIntegral(NamedTuple):
    delta_e: float
    heat: float
    work: float


def integrate_path(path: PathSpec) -> PathIntegral:
    """Midpoint-rule discretization of dQ = omega*dn and dW = (n +- 1/2)*domega.

    Returns ``(delta_e, heat, work)`` with ``delta_e`` evaluated from the
    endpoint internal energies; ``heat + work`` converges to it at second
    order in ``1/step_count``.
    """
    if path.step_count < 2:
        raise ParameterError("step_count must be at least 2")
    u = np.linspace(0.0, 1.0, path.step_count + 1)
    mid = 0.5 * (u[:-1] + u[1:])
    omega = np.asarray(path.omega(u), dtype=float)
    beta = np.asarray(path.beta(u), dtype=float)
    omega_mid = np.asarray(path.omega(mid), dtype=float)
    beta_mid = np.asarray(path.beta(mid), dtype=float)
    for arr in (omega, beta, omega_mid, beta_mid):
        if np.any(arr <= 0.0):
            raise ParameterError("omega(u) and beta_s(u) must stay positive on [0, 1]")
    n = population(path.stat, beta * omega)
    n_mid = population(path.stat, beta_mid * omega_mid)
    heat = float(np.sum(omega_mid * np.diff(n)))
    half = 0.5 if path.stat is Statistics.BOSONIC else -0.5
    work = float(np.sum((n_mid + half) * np.diff(omega)))
    delta_e = float(
        internal_energy(path.stat, omega[-1], n[-1])
        - internal_energy(path.stat, omega[0], n[0])
    )
    return PathIntegral(delta_e, heat, work)
