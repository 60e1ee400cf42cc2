"""Bose statistics of the renormalized field modes.

Each mode is a quantum oscillator of frequency ``omega_s(k, beta)``.  Summing
the thermal (zero-point subtracted) energy over the continuum density of
states gives a field energy ``W_s(T)`` that factorizes into a ``T^4`` law
times a universal curve ``f(alpha_s, tau_s)``, ``tau_s = T / T_s``.  The curve
is defined for ``tau > alpha`` only and its slope diverges at the left edge,
which is where the heat capacity becomes singular.
"""

import math
from dataclasses import dataclass

import numpy as np

from .classical import ModeIndex, dispersion
from .errors import DomainError, SubcriticalError
from .numerics import QuadratureSpec, derivative, integrate_semi_infinite

__all__ = [
    "ThermoPoint",
    "CurveSample",
    "ZERO_POINT_ENERGY",
    "beta_hbar_omega",
    "reduced_integrand",
    "mode_partition_q",
    "mode_energy_q",
    "harmonic_correction",
    "thermal_correction",
    "f_curve",
    "f_curve_slope",
    "energy_prefactor",
    "energy_integrand_k",
    "energy_integrand_q",
    "field_energy",
    "heat_capacity_contrib",
    "curve_sweep",
    "density_of_states",
]

# The sum of hbar*omega/2 over all modes has no finite value.
ZERO_POINT_ENERGY = "zero-point energy divergent (UV)"

STEFAN_BOLTZMANN_INTEGRAL = math.pi**4 / 15

PREFACTORS = ("paper", "dos")

# Quadrature used when f is differentiated numerically; differences amplify
# integration noise by 1/h.
_SLOPE_SPEC = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300, max_subdivisions=2000)


@dataclass(frozen=True)
class ThermoPoint:
    """Temperature, its inverse and the reduced temperature of each channel."""

    T: float
    beta: float
    tau: tuple

    @classmethod
    def at(cls, T, channels, medium):
        if not T > 0:
            raise DomainError(f"temperature must be positive, got {T!r}")
        return cls(T, 1.0 / T, tuple(T / ch.T_char(medium) for ch in channels))


@dataclass(frozen=True)
class CurveSample:
    """One point of a reduced-temperature sweep, ready for CSV export."""

    tau: float
    f: float
    f2: float
    cv_contrib: float = math.nan


def _check_reduced(alpha, tau):
    if not alpha >= 0:
        raise DomainError(f"alpha must be non-negative, got {alpha!r}")
    if not tau > 0:
        raise DomainError(f"reduced temperature must be positive, got {tau!r}")
    if not tau > alpha:
        raise SubcriticalError(
            f"tau={tau!r} is not above the critical point alpha={alpha!r}",
            points=(tau,),
        )


def _gap_squared(alpha, tau):
    return (1.0 - alpha / tau) / tau**2


def beta_hbar_omega(alpha, Q, tau):
    """Reduced mode energy ``sqrt(Q^2 + (1 - alpha/tau) / tau^2)``.

    ``Q = beta hbar c k`` and ``alpha``, ``tau`` are the channel's coupling
    and reduced temperature.
    """
    _check_reduced(alpha, tau)
    return np.sqrt(np.square(Q) + _gap_squared(alpha, tau))


def reduced_integrand(alpha, tau, Q, shift=0.0):
    """Integrand of ``f`` without the ``15/pi^4`` normalization.

    ``s/(e^s - 1) * (1 - 1/(2[(tau/alpha)(tau^2 Q^2 + 1) - 1])) * Q^2`` with
    ``s = beta_hbar_omega``.  The result is multiplied by ``exp(shift)``,
    which lets callers factor out the Boltzmann suppression of a large gap.
    """
    _check_reduced(alpha, tau)
    Q = np.asarray(Q, dtype=float)
    s = np.sqrt(Q * Q + _gap_squared(alpha, tau))
    bose = s * np.exp(shift - s) / -np.expm1(-s)
    if alpha == 0:
        return bose * Q * Q
    excess = (tau / alpha) * (tau * tau * Q * Q + 1.0) - 1.0
    return bose * (1.0 - 0.5 / excess) * Q * Q


def f_curve(alpha, tau, spec=None):
    """Normalized field-energy curve ``f(alpha, tau)``.

    ``f -> 1`` for ``tau >> 1`` (Stefan-Boltzmann); defined for ``tau > alpha``.

    Raises
    ------
    SubcriticalError
        If ``tau <= alpha``.
    """
    _check_reduced(alpha, tau)
    gap = math.sqrt(_gap_squared(alpha, tau))
    start = 8.0 + 4.0 * math.sqrt(gap)
    breakpoints = []
    if alpha > 0:
        # Width in Q of the dip in the correction factor near Q = 0.
        width = math.sqrt((tau / alpha - 1.0) * alpha / tau**3)
        b = width
        while b < start:
            breakpoints.append(b)
            b *= 4.0
    integral = integrate_semi_infinite(
        lambda q: reduced_integrand(alpha, tau, q, shift=gap),
        spec, start=start, breakpoints=breakpoints,
    )
    return integral * math.exp(-gap) / STEFAN_BOLTZMANN_INTEGRAL


def f_curve_slope(alpha, tau, spec=None, mode="auto"):
    """``f2 = df/dtau`` by Richardson differences, one-sided near ``tau = alpha``."""
    _check_reduced(alpha, tau)
    spec = spec or _SLOPE_SPEC
    return derivative(lambda t: f_curve(alpha, t, spec), tau, scale=tau,
                      lower=alpha, mode=mode)


def _bose_energy(quantum, x):
    """``quantum / (e^x - 1)`` without overflow for large ``x``."""
    if not x > 0:
        return math.inf
    return quantum * math.exp(-x) / -math.expm1(-x)


def mode_partition_q(x):
    """Quantum partition function ``e^{-x/2} / (1 - e^{-x})`` of one oscillator, ``x = beta hbar omega``."""
    if not x > 0:
        raise DomainError(f"beta*hbar*omega must be positive, got {x!r}")
    return math.exp(-0.5 * x) / -math.expm1(-x)


def harmonic_correction(channel, medium, k, beta):
    """``c^2/(2 omega^2) * n beta gamma^2 / (2 kappa)``."""
    omega = dispersion(ModeIndex(channel, k), medium, beta)
    if omega == 0:
        raise SubcriticalError("zero mode frequency", channel=channel, k=k)
    return medium.c**2 / (2 * omega**2) * channel.mass_shift(medium, beta)


def thermal_correction(channel, medium, k, T):
    """``1 / (2 [2 T kappa (k^2 + mu^2) / (n gamma^2) - 1])``; zero when decoupled."""
    if channel.gamma == 0:
        return 0.0
    ratio = 2 * T * channel.kappa * (k * k + channel.mu**2) / (medium.density * channel.gamma**2)
    if not ratio > 1:
        raise SubcriticalError(f"mode k={k!r} subcritical at T={T!r}", channel=channel, k=k)
    return 0.5 / (ratio - 1.0)


def mode_energy_q(channel, medium, k, beta):
    """Mean energy of one quantum mode, zero point included.

    ``[hbar w/2 + hbar w/(e^{beta hbar w} - 1)] (1 - c^2/(2 w^2) n beta gamma^2/(2 kappa))``
    """
    omega = dispersion(ModeIndex(channel, k), medium, beta)
    quantum = medium.hbar * omega
    x = beta * quantum
    occupation = _bose_energy(quantum, x)
    return (0.5 * quantum + occupation) * (1.0 - harmonic_correction(channel, medium, k, beta))


def density_of_states(medium, k):
    """Number of modes per unit ``k``: ``V 4 pi k^2 / (2 pi)^3``."""
    if not k >= 0:
        raise DomainError(f"k must be non-negative, got {k!r}")
    return medium.volume * 4 * math.pi * k * k / (2 * math.pi) ** 3


def energy_prefactor(medium, T, prefactor="paper"):
    """Coefficient multiplying the Q-integral in the field energy.

    ``"paper"``: ``V T^4 / ((2 pi)^4 (hbar c)^3)``.
    ``"dos"``:   ``V T^4 / (2 pi^2 (hbar c)^3)``, which is what the density of
    states ``V 4 pi k^2 dk / (2 pi)^3`` produces after ``Q = beta hbar c k``.
    """
    hc3 = (medium.hbar * medium.c) ** 3
    if prefactor == "paper":
        return medium.volume * T**4 / ((2 * math.pi) ** 4 * hc3)
    if prefactor == "dos":
        return medium.volume * T**4 / (2 * math.pi**2 * hc3)
    raise DomainError(f"prefactor must be one of {PREFACTORS}, got {prefactor!r}")


def energy_integrand_k(channel, medium, T, k):
    """Zero-point subtracted energy density in ``k``: d W / d k."""
    beta = 1.0 / T
    omega = dispersion(ModeIndex(channel, k), medium, beta)
    quantum = medium.hbar * omega
    thermal = _bose_energy(quantum, beta * quantum)
    return (density_of_states(medium, k) * thermal
            * (1.0 - thermal_correction(channel, medium, k, T)))


def energy_integrand_q(channel, medium, T, Q, prefactor="dos"):
    """d W / d Q with ``Q = beta hbar c k``."""
    tau = T / channel.T_char(medium)
    return energy_prefactor(medium, T, prefactor) * reduced_integrand(channel.alpha(medium), tau, Q)


def _tau_of(channel, medium, T):
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T!r}")
    return T / channel.T_char(medium)


def field_energy(channel, medium, T, spec=None, prefactor="paper"):
    """Thermal energy ``W_s(T) = prefactor * (pi^4/15) * f(alpha_s, T/T_s)``."""
    tau = _tau_of(channel, medium, T)
    f = f_curve(channel.alpha(medium), tau, spec)
    return energy_prefactor(medium, T, prefactor) * STEFAN_BOLTZMANN_INTEGRAL * f


def _heat_capacity(pref, T, T_s, f, f2):
    return pref * STEFAN_BOLTZMANN_INTEGRAL * (4 * f / T + f2 / T_s)


def heat_capacity_contrib(channel, medium, T, spec=None, prefactor="paper", mode="auto"):
    """Contribution of one channel to ``C_V = dW_s/dT``.

    ``prefactor (pi^4/15) [4 f / T + f2 / T_s]``.  ``mode`` is passed to
    :func:`numerics.derivative`; ``"central"`` raises
    :class:`~auxtherm.errors.BoundaryError` when the stencil would reach
    ``tau = alpha``.
    """
    tau = _tau_of(channel, medium, T)
    alpha = channel.alpha(medium)
    f = f_curve(alpha, tau, spec)
    f2 = f_curve_slope(alpha, tau, mode=mode)
    return _heat_capacity(energy_prefactor(medium, T, prefactor), T,
                          channel.T_char(medium), f, f2)


def curve_sweep(channel, medium, tau_grid, spec=None, prefactor="paper"):
    """Samples ``(tau, f, f2, C_V)`` over a reduced-temperature grid, sorted by tau.

    Raises
    ------
    SubcriticalError
        Listing every grid point at or below ``alpha``; nothing is computed.
    """
    alpha = channel.alpha(medium)
    grid = sorted(float(t) for t in tau_grid)
    bad = [t for t in grid if not t > alpha]
    if bad:
        raise SubcriticalError(
            f"grid points at or below alpha={alpha!r}: {bad!r}", channel=channel, points=bad
        )
    T_s = channel.T_char(medium)
    samples = []
    for tau in grid:
        f = f_curve(alpha, tau, spec)
        f2 = f_curve_slope(alpha, tau)
        T = tau * T_s
        cv = _heat_capacity(energy_prefactor(medium, T, prefactor), T, T_s, f, f2)
        samples.append(CurveSample(tau, f, f2, cv))
    return samples
