"""Cross-validation of the analytic kernels against the brute-force oracles."""

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .classical import FieldChannel, Medium, ModeIndex, log_mode_partition_exact, log_mode_partition_quadratic
from .numerics import bessel_i0, find_root, integrate_semi_infinite
from .quantum import f_curve

__all__ = ["CheckResult", "run_validation"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.deviation <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} deviation={self.deviation:.3e}  tolerance={self.tolerance:.1e}"


def _checks(bessel_fault):
    def i0(x):
        return bessel_i0(x) * (1.0 + bessel_fault)

    xs = np.linspace(0.0, 20.0, 41)
    yield "weyl_bessel_grid", 1e-8, lambda: max(
        abs(i0(x) - oracle.y_integral_grid(x).value) for x in xs)

    yield "bessel_vs_series", 1e-12, lambda: max(
        abs(i0(x) / oracle.i0_series(x, 120).value - 1.0) for x in (0.5, 1.0, 10.0, 25.0))

    yield "weyl_ergodic_two_frequency", 2e-2, lambda: abs(
        oracle.weyl_ergodic_average([1.0, 1.0]).value - i0(1.0) ** 2)

    medium = Medium(5, 5.0)
    mode = ModeIndex(FieldChannel(1.0, 1.0, 0.6), 0.5)

    def exact_vs_grid():
        exact = log_mode_partition_exact(mode, medium, 1.0)
        grid = oracle.mode_partition_grid(mode, medium, 1.0).value
        return abs(exact - grid) / abs(grid)

    yield "mode_partition_exact_vs_grid", 1e-4, exact_vs_grid

    weak = ModeIndex(FieldChannel(1.0, 1.0, 0.01), 0.5)
    yield "mode_partition_quadratic_limit", 1e-3, lambda: abs(
        log_mode_partition_exact(weak, medium, 1.0)
        - log_mode_partition_quadratic(weak, medium, 1.0))

    yield "f_curve_vs_gauss_legendre", 1e-8, lambda: max(
        abs(f_curve(a, t) - oracle.f_curve_gauss_legendre(a, t).value)
        for a, t in ((0.0, 1.0), (0.5, 2.0), (0.1, 0.5), (1.0, 1.5)))

    yield "stefan_boltzmann_constant", 1e-8, lambda: abs(
        integrate_semi_infinite(lambda q: q**3 / np.expm1(q)) / (math.pi**4 / 15) - 1.0)

    channel = FieldChannel(1.3, 0.7, 0.9)

    def critical_root():
        formula = channel.critical_temperature(medium)
        root = find_root(lambda T: channel.mu**2 - channel.mass_shift(medium, 1.0 / T),
                         formula / 10, formula * 10)
        return abs(root / formula - 1.0)

    yield "critical_temperature_root", 1e-9, critical_root


def run_validation(bessel_fault=0.0):
    """Run every cross-check and return one :class:`CheckResult` per check.

    A failing or crashing check never stops the others; an exception is
    reported as an infinite deviation.  ``bessel_fault`` perturbs the Bessel
    values under test by that relative amount (fault injection).
    """
    results = []
    for name, tolerance, check in _checks(bessel_fault):
        try:
            deviation = float(check())
        except Exception:  # noqa: BLE001 - report, never short-circuit
            deviation = math.inf
        if math.isnan(deviation):
            deviation = math.inf
        results.append(CheckResult(name, deviation, tolerance))
    return results
