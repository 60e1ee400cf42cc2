"""Interatomic potentials described by the simple poles of their Fourier
transform.

A transform with simple poles at ``k^2 = -mu_s^2`` is a sum of Yukawa terms,

    v(r) = sum_s C_s exp(-mu_s r) / r,      v~(k^2) = sum_s 4 pi C_s / (k^2 + mu_s^2),

and each pole becomes one Klein-Gordon field channel with mass parameter
``mu_s``.
"""

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .classical import FieldChannel
from .errors import ConfigError, DomainError

__all__ = [
    "PoleTerm",
    "PotentialModel",
    "v_real",
    "v_fourier",
    "extract_channels",
    "static_potential",
    "channels_to_model",
]


@dataclass(frozen=True)
class PoleTerm:
    """One simple pole: ``strength * exp(-mu r) / r`` in real space."""

    mu: float
    strength: float
    multiplicity: int = 1

    def __post_init__(self):
        if isinstance(self.mu, complex) or not (self.mu > 0 and math.isfinite(self.mu)):
            raise DomainError(f"pole parameter mu must be real and positive, got {self.mu!r}")
        if not math.isfinite(self.strength):
            raise DomainError(f"strength must be finite, got {self.strength!r}")
        if self.multiplicity != 1:
            raise DomainError("only simple poles (multiplicity 1) are supported")


@dataclass(frozen=True)
class PotentialModel:
    """A potential as a finite, nonempty list of poles with distinct ``mu``.

    Use :meth:`from_terms` to build one from a list that may repeat a pole.
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise DomainError("a potential needs at least one pole")
        mus = [t.mu for t in terms]
        if len(set(mus)) != len(mus):
            raise DomainError("pole parameters mu must be distinct; use from_terms to merge")

    @classmethod
    def from_terms(cls, terms):
        """Build a model, adding the strengths of poles that share ``mu``.

        ``terms`` may hold :class:`PoleTerm` objects or ``(mu, strength)`` pairs.
        """
        merged = {}
        for term in terms:
            if not isinstance(term, PoleTerm):
                term = PoleTerm(*term)
            merged[term.mu] = merged.get(term.mu, 0.0) + term.strength
        return cls(tuple(PoleTerm(mu, c) for mu, c in merged.items()))


def v_real(model, r):
    """Real-space potential ``sum_s C_s exp(-mu_s r) / r`` for ``r > 0``."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise DomainError("distance r must be positive")
    total = sum(t.strength * np.exp(-t.mu * r_arr) for t in model.terms) / r_arr
    return float(total) if np.ndim(r_arr) == 0 else total


def v_fourier(model, k2):
    """Fourier transform ``sum_s 4 pi C_s / (k^2 + mu_s^2)`` for ``k^2 >= 0``."""
    k2_arr = np.asarray(k2, dtype=float)
    if np.any(~(k2_arr >= 0)):
        raise DomainError("k^2 must be non-negative")
    total = sum(4 * math.pi * t.strength / (k2_arr + t.mu**2) for t in model.terms)
    return float(total) if np.ndim(k2_arr) == 0 else total


def _kappas(model, kappa_policy):
    terms = model.terms
    if kappa_policy is None or kappa_policy == "unit":
        return [1.0] * len(terms)
    if isinstance(kappa_policy, Real):
        return [float(kappa_policy)] * len(terms)
    if isinstance(kappa_policy, Callable):
        return [float(kappa_policy(t)) for t in terms]
    if isinstance(kappa_policy, Sequence) and not isinstance(kappa_policy, str):
        if len(kappa_policy) != len(terms):
            raise ConfigError(
                f"kappa_policy lists {len(kappa_policy)} values for {len(terms)} poles"
            )
        return [float(k) for k in kappa_policy]
    raise ConfigError(f"unrecognized kappa_policy {kappa_policy!r}")


def extract_channels(model, kappa_policy=None):
    """One :class:`FieldChannel` per pole, sorted by ascending ``mu``.

    The coupling is ``gamma = sqrt(4 pi kappa |C|)`` so that the static
    potential between two atoms, ``gamma^2/(4 pi kappa) exp(-mu r)/r``,
    reproduces ``|C|``; the sign of ``C`` is kept on the channel.

    Parameters
    ----------
    model : PotentialModel
    kappa_policy : None, "unit", float, sequence or callable
        Field normalization per pole.  ``None``/``"unit"`` gives 1 for every
        pole, a number is used for all poles, a sequence is matched to
        ``model.terms`` in order, and a callable receives each
        :class:`PoleTerm`.

    Raises
    ------
    ConfigError
        If any resulting ``kappa`` is not positive.
    """
    kappas = _kappas(model, kappa_policy)
    channels = []
    for term, kappa in zip(model.terms, kappas):
        if not (kappa > 0 and math.isfinite(kappa)):
            raise ConfigError(f"kappa for pole mu={term.mu!r} must be positive, got {kappa!r}")
        gamma = math.sqrt(4 * math.pi * kappa * abs(term.strength))
        sign = -1 if term.strength < 0 else 1
        channels.append((term.mu, kappa, gamma, sign))
    channels.sort()
    return [FieldChannel(mu, kappa, gamma, sign, label=f"s{i}")
            for i, (mu, kappa, gamma, sign) in enumerate(channels, start=1)]


def static_potential(channels, r):
    """Static two-atom potential carried by a set of channels."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise DomainError("distance r must be positive")
    total = sum(
        ch.sign * ch.gamma**2 / (4 * math.pi * ch.kappa) * np.exp(-ch.mu * r_arr)
        for ch in channels
    ) / r_arr
    return float(total) if np.ndim(r_arr) == 0 else total


def channels_to_model(channels):
    """Inverse of :func:`extract_channels`: the Yukawa strengths as a model."""
    return PotentialModel.from_terms(
        (ch.mu, ch.sign * ch.gamma**2 / (4 * math.pi * ch.kappa)) for ch in channels
    )
