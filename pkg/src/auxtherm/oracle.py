"""Brute-force reference values for the analytic shortcuts.

Nothing here imports the numerical kernels it is meant to check: each oracle
works from the defining integral or series with elementary arithmetic, and
returns its value together with the change observed when the resolution is
halved.  They are meant for small problems only.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SubcriticalError

__all__ = [
    "GridSpec",
    "Estimate",
    "WEYL_WAVENUMBERS",
    "y_integral_grid",
    "mode_partition_grid",
    "weyl_ergodic_average",
    "i0_series",
    "f_curve_gauss_legendre",
]

WEYL_WAVENUMBERS = (math.sqrt(2), math.sqrt(3), math.sqrt(5), math.sqrt(7))


@dataclass(frozen=True)
class GridSpec:
    """Tensor-grid resolution.

    ``extent`` is the half-width of a field-variable grid in units of the
    integrand's Gaussian width.
    """

    points_per_dim: int = 128
    extent: float = 8.0

    def __post_init__(self):
        if self.points_per_dim < 16:
            raise DomainError("points_per_dim must be at least 16")
        if self.extent < 5:
            raise DomainError("extent must be at least 5")


class Estimate(NamedTuple):
    """An oracle value and its self-convergence (change under halved resolution)."""

    value: float
    self_convergence: float


# pi to long-double precision; np.pi would put a systematic error into
# every node of the periodic grid.
_PI_LD = np.longdouble("3.14159265358979323846264338327950288")


def _periodic_mean(x, points):
    """Trapezoid average of exp(-x cos 2 pi z) over one period.

    The integrand is even about z = 1/2, so only half the nodes are formed.
    Terms are computed in long double and split into a high and a low double
    before the exact ``fsum``, which keeps the exponent's rounding out of the
    result.
    """
    j = np.arange(points // 2 + 1, dtype=np.longdouble)
    vals = np.exp(-np.longdouble(x) * np.cos(2 * _PI_LD * j / points))
    hi = vals.astype(float)
    lo = (vals - hi).astype(float)
    weights = np.full(vals.shape, 2.0)
    weights[0] = weights[-1] = 1.0
    return math.fsum(np.concatenate([weights * hi, weights * lo])) / points


def y_integral_grid(x, grid=GridSpec(points_per_dim=32)):
    """``int_0^1 exp(-x cos 2 pi z) dz`` on ``points_per_dim**2`` equispaced nodes.

    The integrand is periodic and entire, so the trapezoid rule converges
    geometrically; 1024 nodes are exact in double precision for ``x <= 50``.
    """
    if not x >= 0:
        raise DomainError("x must be non-negative")
    points = grid.points_per_dim**2
    fine = _periodic_mean(x, points)
    coarse = _periodic_mean(x, points // 2)
    return Estimate(fine, abs(fine - coarse))


def _log_weyl_average(x, points=256):
    """``ln int_0^1 exp(-x cos 2 pi z) dz`` for an array of x, overflow-free."""
    z = (np.arange(points) + 0.0) / points
    shifted = np.exp(-np.multiply.outer(x, np.cos(2 * np.pi * z) + 1.0))
    return x + np.log(shifted.mean(axis=-1))


def _log_field_integral(free, n_atoms, coupling, half_width, points):
    axis = np.linspace(-half_width, half_width, points)
    step = axis[1] - axis[0]
    psi, chi = np.meshgrid(axis, axis, indexing="ij")
    r = np.sqrt(psi * psi + chi * chi)
    log_vals = -free * r * r + n_atoms * _log_weyl_average(coupling * r)
    peak = log_vals.max()
    return peak + math.log(math.fsum(np.exp(log_vals - peak).ravel())) + 2 * math.log(step)


def mode_partition_grid(mode, medium, beta, grid=GridSpec()):
    """``ln Z_s(k)`` from a direct 2-D grid over the field variables (psi, chi).

    The momentum integrals are Gaussian and done analytically; the coordinate
    integrand ``exp(-beta N kappa (k^2+mu^2) r^2/(2n)) Y(beta gamma r)^N`` is
    summed on a square grid, with ``Y`` itself taken as the periodic average
    that defines it.  Returns an :class:`Estimate` of the logarithm.
    """
    ch = mode.channel
    n_atoms = medium.n_atoms
    n = n_atoms / medium.volume
    k2mu2 = mode.k**2 + ch.mu**2
    if ch.gamma != 0 and not ch.kappa * k2mu2 / (2 * n * beta * ch.gamma**2) > 0.25:
        raise SubcriticalError("coordinate integral diverges in the quadratic approximation",
                               channel=ch, k=mode.k)
    free = beta * n_atoms * ch.kappa * k2mu2 / (2 * n)
    width = 1.0 / math.sqrt(2 * (free - n_atoms * (beta * ch.gamma) ** 2 / 4))
    half_width = grid.extent * width
    coupling = beta * abs(ch.gamma)
    momenta = math.log(2 * math.pi * medium.volume * ch.kappa / (beta * medium.c**2))
    points = grid.points_per_dim
    fine = _log_field_integral(free, n_atoms, coupling, half_width, points)
    coarse = _log_field_integral(free, n_atoms, coupling, half_width, points // 2 + 1)
    return Estimate(momenta + fine, abs(fine - coarse))


def _line_average(amplitudes, wavenumbers, length, samples):
    t = np.linspace(0.0, length, samples + 1)
    phase = np.zeros_like(t)
    for x, k in zip(amplitudes, wavenumbers):
        phase += x * np.cos(k * t)
    vals = np.exp(-phase)
    inner = math.fsum(vals[1:-1])
    return (inner + 0.5 * (vals[0] + vals[-1])) * (length / samples) / length


def weyl_ergodic_average(x_list, k_list=None, length=1e4, samples_per_period=64):
    """Time average ``(1/L) int_0^L exp(-sum_j x_j cos(k_j t)) dt``.

    For rationally independent ``k_j`` this tends to ``prod_j I0(x_j)`` as
    ``L -> inf``; the deviation at finite ``L`` is of order ``1/L``.
    """
    x_list = [float(x) for x in x_list]
    if k_list is None:
        k_list = WEYL_WAVENUMBERS[: len(x_list)]
    k_list = [float(k) for k in k_list]
    if len(k_list) != len(x_list) or not 1 <= len(x_list) <= 4:
        raise DomainError("need between 1 and 4 amplitudes, one wavenumber each")
    samples = int(math.ceil(length * max(k_list) * samples_per_period / (2 * math.pi)))
    fine = _line_average(x_list, k_list, length, samples)
    coarse = _line_average(x_list, k_list, length, samples // 2)
    return Estimate(fine, abs(fine - coarse))


def _series_sum(x, terms):
    half = Fraction(x) / 2
    power = Fraction(1)
    factorial = 1
    floats = []
    for m in range(terms):
        if m:
            power *= half * half
            factorial *= m
        floats.append(float(power / (factorial * factorial)))
    return math.fsum(floats)


def i0_series(x, terms=60):
    """Partial sum of ``sum_m (x/2)^(2m) / (m!)^2`` with ``terms`` terms.

    Each term is formed exactly in rational arithmetic and rounded once; the
    rounded terms are added with ``math.fsum``.
    """
    if not x >= 0:
        raise DomainError("x must be non-negative")
    if terms < 1:
        raise DomainError("terms must be at least 1")
    value = _series_sum(x, terms)
    return Estimate(value, abs(value - _series_sum(x, max(1, terms // 2))))


def _gl_f(alpha, tau, order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (nodes + 1.0)
    gap2 = (1.0 - alpha / tau) / tau**2
    gap = math.sqrt(gap2)
    scale = 1.0 + math.sqrt(gap)
    q = scale * u / (1.0 - u)
    jac = scale / (1.0 - u) ** 2 * 0.5
    s = np.sqrt(q * q + gap2)
    # s/(e^s - 1), with exp(-gap) factored out and restored at the end.
    bose = s * np.exp(gap - s) / (1.0 - np.exp(-s))
    if alpha == 0:
        corr = 1.0
    else:
        corr = 1.0 - 1.0 / (2.0 * ((tau / alpha) * (tau * tau * q * q + 1.0) - 1.0))
    total = float(np.sum(weights * jac * bose * corr * q * q))
    return 15.0 / math.pi**4 * total * math.exp(-gap)


def f_curve_gauss_legendre(alpha, tau, order=400):
    """``f(alpha, tau)`` by a fixed Gauss-Legendre rule on ``Q = c u/(1-u)``.

    Adequate away from ``tau = alpha``, where the correction factor develops
    a spike narrower than any fixed rule resolves.
    """
    if not (alpha >= 0 and tau > alpha):
        raise SubcriticalError(f"tau={tau!r} not above alpha={alpha!r}", points=(tau,))
    fine = _gl_f(alpha, tau, order)
    return Estimate(fine, abs(fine - _gl_f(alpha, tau, order // 2)))
