"""Classical relativistic statistical mechanics of the atoms + field system.

After integrating out the atoms, every field mode (s, k) is an independent
two-dimensional nonlinear oscillator whose coordinate integral contains
``I0(beta*gamma*r)**N``.  Expanding ``ln I0`` to second order turns each mode
into a harmonic oscillator with a temperature dependent mass; both the exact
and the quadratic forms are provided here, together with the ideal-gas atomic
factor, the classical energy and the critical temperatures.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, SubcriticalError
from .numerics import (
    QuadratureSpec,
    bessel_i0,
    integrate_semi_infinite,
    ln_bessel_i0,
)

__all__ = [
    "Medium",
    "FieldChannel",
    "ModeIndex",
    "CriticalTemperatures",
    "single_mode_y",
    "dispersion",
    "renormalized_mass",
    "critical_temperature",
    "log_mode_partition_exact",
    "mode_partition_exact",
    "log_mode_partition_quadratic",
    "mode_partition_quadratic",
    "default_k_grid",
    "ln_factorial",
    "classical_log_partition",
    "classical_energy",
    "interaction_correction",
    "field_hamiltonian",
]


@dataclass(frozen=True)
class Medium:
    """Atoms in a box: count, volume, atomic mass and unit conventions.

    ``hbar`` and ``c`` default to 1 (natural units).
    """

    n_atoms: float
    volume: float
    mass: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not self.n_atoms >= 1:
            raise DomainError(f"n_atoms must be >= 1, got {self.n_atoms!r}")
        if not self.volume > 0:
            raise DomainError(f"volume must be positive, got {self.volume!r}")
        if not (self.mass > 0 and self.hbar > 0 and self.c > 0):
            raise DomainError("mass, hbar and c must be positive")

    @property
    def density(self):
        return self.n_atoms / self.volume


@dataclass(frozen=True)
class FieldChannel:
    """One elementary auxiliary field.

    Attributes
    ----------
    mu : float
        Mass parameter (inverse length), the pole position of the potential's
        Fourier transform.
    kappa : float
        Normalization of the free-field energy.
    gamma : float
        Atom-field coupling.
    sign : int
        Sign of the Yukawa term this channel reproduces in the static limit.
        Thermodynamics depends on ``gamma**2`` only.
    label : str
        Free-form name used in reports.
    """

    mu: float
    kappa: float
    gamma: float
    sign: int = 1
    label: str = ""

    def __post_init__(self):
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise DomainError(f"mu must be real and positive, got {self.mu!r}")
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise DomainError(f"kappa must be positive, got {self.kappa!r}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign!r}")

    def T_char(self, medium):
        """Relativistic quantum temperature scale ``hbar*c*mu``."""
        return medium.hbar * medium.c * self.mu

    def alpha(self, medium):
        """Dimensionless coupling ``n gamma^2 / (2 kappa hbar c mu^3)``."""
        return (medium.density * self.gamma**2
                / (2 * self.kappa * medium.hbar * medium.c * self.mu**3))

    def critical_temperature(self, medium):
        """``n gamma^2 / (2 kappa mu^2)``: where the k=0 mass vanishes."""
        return medium.density * self.gamma**2 / (2 * self.kappa * self.mu**2)

    def mass_shift(self, medium, beta):
        """``n beta gamma^2 / (2 kappa)``, subtracted from ``mu**2``."""
        return medium.density * beta * self.gamma**2 / (2 * self.kappa)

    def name(self, index=None):
        if self.label:
            return self.label
        return f"s{index}" if index is not None else f"mu={self.mu!r}"


@dataclass(frozen=True)
class ModeIndex:
    """Label (s, k) of one field oscillator."""

    channel: FieldChannel
    k: float

    def __post_init__(self):
        if not self.k >= 0:
            raise DomainError(f"wavevector magnitude must be >= 0, got {self.k!r}")


@dataclass(frozen=True)
class CriticalTemperatures:
    """Per-channel critical temperatures and the two global readings.

    ``threshold`` is the maximum over channels: every channel must be above
    its own critical point, so this is the temperature below which the model
    stops being defined.  ``lowest`` is the minimum over channels, kept so the
    two readings can be compared side by side.
    """

    per_channel: tuple
    threshold: float
    lowest: float


def single_mode_y(x):
    """Coordinate average of ``exp(-x cos 2 pi z)`` over one period: ``I0(x)``."""
    return bessel_i0(x)


def _radicand(channel, medium, k, beta):
    return k * k + channel.mu**2 - channel.mass_shift(medium, beta)


def _subcritical(channel, medium, k, beta, what):
    return SubcriticalError(
        f"{what}: mode (s={channel.name()}, k={k!r}) is below its critical "
        f"temperature T_crit={channel.critical_temperature(medium)!r} at "
        f"T={1.0 / beta if beta else math.inf!r}",
        channel=channel,
        k=k,
    )


def dispersion(mode, medium, beta):
    """Renormalized frequency ``c*sqrt(k^2 + mu^2 - n beta gamma^2/(2 kappa))``.

    Raises
    ------
    SubcriticalError
        If the radicand is negative.
    """
    rad = _radicand(mode.channel, medium, mode.k, beta)
    if rad < 0:
        raise _subcritical(mode.channel, medium, mode.k, beta, "negative dispersion radicand")
    return medium.c * math.sqrt(rad)


def renormalized_mass(channel, medium, beta):
    """Mass parameter after absorbing the atom-field interaction."""
    rad = channel.mu**2 - channel.mass_shift(medium, beta)
    if rad < 0:
        raise _subcritical(channel, medium, 0.0, beta, "negative renormalized mass squared")
    return math.sqrt(rad)


def critical_temperature(channels, medium):
    """Critical temperatures of a list of channels.

    Returns
    -------
    CriticalTemperatures
    """
    channels = list(channels)
    if not channels:
        raise DomainError("at least one channel is required")
    per = tuple(ch.critical_temperature(medium) for ch in channels)
    return CriticalTemperatures(per_channel=per, threshold=max(per), lowest=min(per))


# ---------------------------------------------------------------------------
# Single-mode partition functions
# ---------------------------------------------------------------------------


def _momentum_log_factor(channel, medium, beta):
    # Two Gaussian momentum integrals of width V kappa / (beta c^2).
    return math.log(2 * math.pi * medium.volume * channel.kappa / (beta * medium.c**2))


def _coordinate_coefficients(mode, medium, beta):
    """Gaussian coefficient of r^2 without and with the quadratic ln I0 term."""
    ch = mode.channel
    free = beta * medium.n_atoms * ch.kappa * (mode.k**2 + ch.mu**2) / (2 * medium.density)
    quadratic = free - medium.n_atoms * (beta * ch.gamma) ** 2 / 4
    return free, quadratic


def _check_convergence(mode, medium, beta):
    ch = mode.channel
    if ch.gamma == 0:
        return
    ratio = ch.kappa * (mode.k**2 + ch.mu**2) / (2 * medium.density * beta * ch.gamma**2)
    if not ratio > 0.25:
        raise _subcritical(
            ch, medium, mode.k, beta,
            f"convergence ratio {ratio!r} <= 1/4",
        )


def log_mode_partition_exact(mode, medium, beta, spec=None):
    """Logarithm of the exact classical partition function of mode (s, k).

    The (psi, chi) double integral depends only on ``r = sqrt(psi^2+chi^2)``
    and is reduced to ``2 pi int_0^inf r exp(-A r^2) I0(beta gamma r)^N dr``.
    The radial integrand is evaluated in log space, rescaled by the width of
    the quadratic approximation and normalized by its peak value, so that
    large ``N`` neither overflows nor underflows.
    """
    _check_convergence(mode, medium, beta)
    ch = mode.channel
    n_atoms = medium.n_atoms
    free, quadratic = _coordinate_coefficients(mode, medium, beta)
    sigma = 1.0 / math.sqrt(2 * quadratic)
    a = free * sigma**2
    b = beta * abs(ch.gamma) * sigma

    def log_integrand(t):
        return np.log(t) - a * t * t + n_atoms * ln_bessel_i0(b * t)

    # The peak of t exp(-a t^2) I0(b t)^N lies between the free (1/sqrt(2a))
    # and fully quadratic (t = 1) peaks.
    lo = 0.5 / math.sqrt(2 * a)
    res = optimize.minimize_scalar(
        lambda t: -float(log_integrand(np.array([t]))[0]),
        bounds=(lo, 1.5), method="bounded", options={"xatol": 1e-10},
    )
    peak = -res.fun

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = np.exp(log_integrand(t[pos]) - peak)
        return out

    spec = spec or QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300)
    radial = integrate_semi_infinite(integrand, spec, start=4.0)
    return (_momentum_log_factor(ch, medium, beta) + math.log(2 * math.pi)
            + 2 * math.log(sigma) + peak + math.log(radial))


def mode_partition_exact(mode, medium, beta, spec=None):
    """Exact classical partition function of one mode (may overflow; see log form)."""
    return math.exp(log_mode_partition_exact(mode, medium, beta, spec))


def log_mode_partition_quadratic(mode, medium, beta):
    """``2 ln(2 pi / (beta omega))`` from the quadratic Hamiltonian."""
    ch = mode.channel
    rad = _radicand(ch, medium, mode.k, beta)
    if not rad > 0:
        raise _subcritical(ch, medium, mode.k, beta, "non-positive dispersion radicand")
    omega = medium.c * math.sqrt(rad)
    return 2 * math.log(2 * math.pi / (beta * omega))


def mode_partition_quadratic(mode, medium, beta):
    """``(2 pi / (beta omega_s(k, beta)))**2``."""
    return math.exp(log_mode_partition_quadratic(mode, medium, beta))


def field_hamiltonian(mode, medium, beta, psi, chi, p, p_chi):
    """Effective single-mode Hamiltonian after integrating out the atoms.

    Kinetic part ``c^2 (p^2 + p_chi^2) / (2 V kappa)`` plus
    ``N [kappa (k^2+mu^2) r^2 / (2n) - ln I0(beta gamma r) / beta]``.
    """
    ch = mode.channel
    r = np.hypot(psi, chi)
    kinetic = medium.c**2 * (np.square(p) + np.square(p_chi)) / (2 * medium.volume * ch.kappa)
    potential = medium.n_atoms * (
        ch.kappa * (mode.k**2 + ch.mu**2) * r**2 / (2 * medium.density)
        - ln_bessel_i0(beta * abs(ch.gamma) * r) / beta
    )
    return kinetic + potential


# ---------------------------------------------------------------------------
# Whole-system classical partition function and energy
# ---------------------------------------------------------------------------


def default_k_grid(medium, modes):
    """Isotropic wavevector magnitudes ``2 pi j / V^(1/3)``, ``j = 1..modes``."""
    step = 2 * math.pi / medium.volume ** (1.0 / 3.0)
    return [step * j for j in range(1, int(modes) + 1)]


def ln_factorial(n):
    """``ln n!``: exact below 21, Stirling series (to 1/n^5) above."""
    if n < 0:
        raise DomainError("factorial of a negative number")
    if n <= 20:
        if n != int(n):
            raise DomainError("ln_factorial needs an integer below 21")
        return math.fsum(math.log(i) for i in range(2, int(n) + 1))
    n = float(n)
    return (n * math.log(n) - n + 0.5 * math.log(2 * math.pi * n)
            + 1 / (12 * n) - 1 / (360 * n**3) + 1 / (1260 * n**5))


def _ideal_gas_log_partition(medium, beta):
    n_atoms = medium.n_atoms
    return (n_atoms * math.log(medium.volume) - ln_factorial(n_atoms)
            + 1.5 * n_atoms * math.log(2 * math.pi * medium.mass / beta))


def _sorted_modes(channels, k_grid):
    ks = sorted(float(k) for k in k_grid)
    for index, ch in enumerate(channels, start=1):
        for k in ks:
            yield index, ch, k


def _mode_omega(index, ch, k, medium, beta):
    rad = _radicand(ch, medium, k, beta)
    if not rad > 0:
        raise SubcriticalError(
            f"mode (s={ch.name(index)}, k={k!r}) is subcritical at T={1.0 / beta!r}",
            channel=ch, k=k,
        )
    return medium.c * math.sqrt(rad)


def classical_log_partition(channels, medium, beta, k_grid):
    """``ln Z`` of atoms plus quadratic field modes on a finite k grid.

    ``ln[V^N/N! (2 pi m/beta)^(3N/2)] + 2 sum_{s,k} ln(2 pi/(beta omega_s(k)))``
    with the mode sum taken over ``channels x k_grid`` in sorted order.
    """
    terms = [_ideal_gas_log_partition(medium, beta)]
    for index, ch, k in _sorted_modes(channels, k_grid):
        omega = _mode_omega(index, ch, k, medium, beta)
        terms.append(2 * math.log(2 * math.pi / (beta * omega)))
    return math.fsum(terms)


def interaction_correction(channels, medium, beta, k_grid):
    """``sum_{s,k} c^2/(2 omega^2) * n gamma^2/(2 kappa)`` (finite for a finite grid)."""
    terms = []
    for index, ch, k in _sorted_modes(channels, k_grid):
        omega = _mode_omega(index, ch, k, medium, beta)
        terms.append(medium.c**2 / (2 * omega**2)
                     * medium.density * ch.gamma**2 / (2 * ch.kappa))
    return math.fsum(terms)


def classical_energy(channels, medium, beta, k_grid):
    """Mean energy ``-d ln Z / d beta`` in closed form.

    ``E = 3NT/2 + 2 M T - 2 sum_{s,k} c^2/(2 omega^2) n gamma^2/(2 kappa)``
    where ``M`` counts the modes.  The ``2 M T`` term grows without bound as
    the k grid is refined: classical equipartition over field modes.
    """
    channels = list(channels)
    k_grid = list(k_grid)
    temperature = 1.0 / beta
    modes = len(channels) * len(k_grid)
    correction = interaction_correction(channels, medium, beta, k_grid)
    return math.fsum([1.5 * medium.n_atoms * temperature,
                      2 * modes * temperature,
                      -2 * correction])
