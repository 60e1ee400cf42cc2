"""Numerical kernels: modified Bessel function I0, semi-infinite quadrature,
Richardson differentiation and bracketed root finding.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import BoundaryError, BracketError, ConvergenceError, DomainError

__all__ = [
    "QuadratureSpec",
    "bessel_i0",
    "ln_bessel_i0",
    "integrate_semi_infinite",
    "derivative",
    "find_root",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for :func:`integrate_semi_infinite`."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 500

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("rel_tol and abs_tol must be positive")
        if int(self.max_subdivisions) < 1:
            raise DomainError("max_subdivisions must be at least 1")


DEFAULT_SPEC = QuadratureSpec()


# ---------------------------------------------------------------------------
# Bessel I0
# ---------------------------------------------------------------------------

# Below this argument the power series is summed in double-double arithmetic;
# above it the large-argument expansion is accurate to machine precision.
_SERIES_LIMIT = 30.0
_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _series_tail(x):
    """Double-double sum of (x/2)^(2m)/(m!)^2 for m >= 1, as (hi, lo)."""
    half = 0.5 * x
    t_hi, t_lo = _two_prod(half, half)
    term_hi = np.ones_like(x)
    term_lo = np.zeros_like(x)
    sum_hi = np.zeros_like(x)
    sum_lo = np.zeros_like(x)
    for m in range(1, 400):
        # term *= t
        p, e = _two_prod(term_hi, t_hi)
        e = e + (term_hi * t_lo + term_lo * t_hi)
        term_hi, term_lo = _fast_two_sum(p, e)
        # term /= m*m  (m*m is exact)
        d = float(m * m)
        q1 = term_hi / d
        p, e = _two_prod(q1, d)
        s, f = _two_sum(term_hi, -p)
        f = f - e + term_lo
        q2 = (s + f) / d
        term_hi, term_lo = _fast_two_sum(q1, q2)
        # sum += term
        s, e = _two_sum(sum_hi, term_hi)
        e = e + (sum_lo + term_lo)
        sum_hi, sum_lo = _fast_two_sum(s, e)
        if np.all(term_hi <= 1e-19 * (1.0 + sum_hi)):
            break
    return sum_hi, sum_lo


def _asymptotic_sum(x):
    """Sum of the large-argument series for exp(-x) sqrt(2 pi x) I0(x)."""
    total = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        term = term * (2 * k - 1) ** 2 / (8.0 * k * x)
        total = total + term
        if np.all(term < 1e-17 * total):
            break
    return total


def _as_nonnegative(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("argument must be non-negative (pass |x|; I0 is even)")
    return arr


def bessel_i0(x):
    """Modified Bessel function of the first kind, order zero.

    Accurate to about one unit in the last place for ``x <= 30`` (the power
    series is accumulated in double-double arithmetic) and to ~1e-15 relative
    beyond.  Returns ``inf`` once the result overflows; use
    :func:`ln_bessel_i0` there.

    Parameters
    ----------
    x : float or array_like
        Non-negative argument.

    Returns
    -------
    float or ndarray
    """
    arr = _as_nonnegative(x)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    small = flat <= _SERIES_LIMIT
    if np.any(small):
        hi, lo = _series_tail(flat[small])
        out[small] = (1.0 + hi) + lo
    if np.any(~small):
        xs = flat[~small]
        with np.errstate(over="ignore"):
            out[~small] = np.exp(xs) / np.sqrt(2 * np.pi * xs) * _asymptotic_sum(xs)
    out = out.reshape(np.shape(arr))
    return float(out) if np.ndim(arr) == 0 else out


def ln_bessel_i0(x):
    """Natural logarithm of I0(x), free of overflow for large arguments.

    Small arguments go through ``log1p`` of the series tail, so
    ``ln_bessel_i0(x) ~ x**2/4 - x**4/64`` holds to full relative precision
    as ``x -> 0``.  Large arguments use ``x - ln(2 pi x)/2 + ln(S(x))``.
    """
    arr = _as_nonnegative(x)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    small = flat <= _SERIES_LIMIT
    if np.any(small):
        hi, lo = _series_tail(flat[small])
        out[small] = np.log1p(hi) + lo / (1.0 + hi)
    if np.any(~small):
        xs = flat[~small]
        out[~small] = xs - 0.5 * np.log(2 * np.pi * xs) + np.log(_asymptotic_sum(xs))
    out = out.reshape(np.shape(arr))
    return float(out) if np.ndim(arr) == 0 else out


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes.
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _evaluate(f, pts):
    try:
        vals = np.asarray(f(pts), dtype=float)
        if vals.shape == pts.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(f(p)) for p in pts])


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = _evaluate(f, center + half * KRONROD_NODES)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"integrand is not finite on [{a!r}, {b!r}]")
    kronrod = half * float(np.dot(KRONROD_WEIGHTS, vals))
    gauss = half * float(np.dot(GAUSS_WEIGHTS, vals))
    resabs = abs(half) * float(np.dot(KRONROD_WEIGHTS, np.abs(vals)))
    return kronrod, abs(kronrod - gauss), resabs


class _Adaptive:
    """Global adaptive bisection over a growing set of panels."""

    def __init__(self, f, spec):
        self.f = f
        self.spec = spec
        self.heap = []
        self.total = 0.0
        self.error = 0.0
        self.resabs = 0.0
        self.panels = 0

    def add(self, a, b):
        val, err, resabs = _gk15(self.f, a, b)
        heapq.heappush(self.heap, (-err, a, b, val, resabs))
        self.total += val
        self.error += err
        self.resabs += resabs
        self.panels += 1

    def refine(self, target_extra=0.0):
        spec = self.spec
        while True:
            # Roundoff floor: panels cannot be resolved below a few ulps of |f|.
            floor = 50 * np.finfo(float).eps * self.resabs
            tol = max(spec.abs_tol, spec.rel_tol * abs(self.total), floor)
            if self.error + target_extra <= tol:
                return
            if self.panels >= spec.max_subdivisions:
                raise ConvergenceError(
                    f"quadrature tolerance {tol:.3g} not reached after "
                    f"{self.panels} panels",
                    estimate=self.total,
                    error=self.error + target_extra,
                )
            neg_err, a, b, val, resabs = heapq.heappop(self.heap)
            self.total -= val
            self.error += neg_err
            self.resabs -= resabs
            self.panels -= 1
            mid = 0.5 * (a + b)
            self.add(a, mid)
            self.add(mid, b)
            # Re-summing keeps the running totals free of cancellation drift.
            self.total = math.fsum(item[3] for item in self.heap)
            self.error = math.fsum(-item[0] for item in self.heap)


def _tail_bound(f, L):
    """Bound on int_L^inf |f| assuming a log-concave decreasing tail.

    Uses the chord of ln|f| over [0.9 L, L], which under-estimates the decay
    rate at L and therefore over-estimates the tail.  Returns None while the
    integrand is not yet decreasing.
    """
    inner, outer = np.abs(_evaluate(f, np.array([0.9 * L, L])))
    if outer == 0.0:
        return 0.0
    if not np.isfinite(outer) or inner <= outer:
        return None
    rate = math.log(inner / outer) / (0.1 * L)
    return outer / rate


def integrate_semi_infinite(f, spec=None, *, start=8.0, breakpoints=(), full_output=False):
    """Integrate ``f`` over ``[0, inf)``.

    The integral over ``[0, L]`` is computed by globally adaptive
    Gauss-Kronrod (7/15) bisection.  The cut ``L`` starts at ``start`` and is
    doubled, integrating each new stretch, until a bound on the remaining
    exponential tail drops below a tenth of the tolerance.  The tail bound is
    folded into the reported error, never into the value.

    Parameters
    ----------
    f : callable
        Integrand; called with 1-D arrays of abscissae where possible.
    spec : QuadratureSpec, optional
    start : float
        First trial cut.  A rough idea of where the integrand has decayed.
    breakpoints : sequence of float
        Interior points of ``(0, start)`` where the integrand has structure
        too narrow for the first panel to notice.
    full_output : bool
        If True return ``(value, error_bound)``.

    Raises
    ------
    ConvergenceError
        When ``spec.max_subdivisions`` panels do not reach the tolerance, or
        the integrand never starts to decay.
    """
    spec = spec or DEFAULT_SPEC
    quad = _Adaptive(f, spec)
    L = float(start)
    edges = [0.0] + sorted(b for b in breakpoints if 0 < b < L) + [L]
    for a, b in zip(edges[:-1], edges[1:]):
        quad.add(a, b)
    quad.refine()
    while True:
        tail = _tail_bound(f, L)
        if tail is not None:
            tol = max(spec.abs_tol, spec.rel_tol * abs(quad.total))
            if tail <= 0.1 * tol:
                break
        if L > 1e8:
            raise ConvergenceError(
                "integrand does not decay on [0, 1e8]", quad.total, math.inf
            )
        quad.add(L, 2 * L)
        L *= 2
        quad.refine()
    value = quad.total
    if full_output:
        return value, quad.error + tail
    return value


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------


def _checked_call(f, t):
    try:
        value = float(f(t))
    except (DomainError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"function undefined at stencil point {t!r}: {exc}") from exc
    if not math.isfinite(value):
        raise DomainError(f"function not finite at stencil point {t!r}")
    return value


def derivative(f, x, scale=1.0, *, lower=None, mode="auto", steps=10, full_output=False):
    """First derivative of ``f`` at ``x`` by Richardson-extrapolated differences.

    The initial step is ``scale * 1e-3`` and is halved ``steps`` times; a
    Neville tableau extrapolates the differences to zero step and the entry
    with the smallest error estimate is returned.

    With a left domain boundary ``lower``, ``mode='auto'`` switches to forward
    differences whenever the central stencil would come within four steps of
    the boundary, and also shrinks the initial step below the distance to the
    boundary.  ``mode='central'`` raises :class:`BoundaryError` instead, and
    ``mode='forward'`` forces the one-sided scheme.
    """
    if mode not in ("auto", "central", "forward"):
        raise ValueError(f"unknown mode {mode!r}")
    h = abs(scale) * 1e-3 or 1e-3
    forward = mode == "forward"
    if lower is not None:
        gap = x - lower
        if gap <= 0:
            raise DomainError(f"x={x!r} is not above the boundary {lower!r}")
        if gap < 4 * h:
            if mode == "central":
                raise BoundaryError(
                    f"central stencil at x={x!r} with step {h:.3g} crosses the "
                    f"boundary {lower!r}; use mode='forward' (one-sided)"
                )
            forward = True
        if forward:
            h = min(h, gap / 4)

    factor = 2.0 if forward else 4.0
    fx = _checked_call(f, x) if forward else None
    tableau = []
    best, best_err = math.nan, math.inf
    for i in range(steps):
        hi = h / 2**i
        if forward:
            row = [(_checked_call(f, x + hi) - fx) / hi]
        else:
            row = [(_checked_call(f, x + hi) - _checked_call(f, x - hi)) / (2 * hi)]
        for j in range(1, i + 1):
            # Forward differences carry every power of h; central only even ones.
            weight = factor**j - 1.0
            row.append(row[j - 1] + (row[j - 1] - tableau[i - 1][j - 1]) / weight)
            err = max(abs(row[j] - row[j - 1]), abs(row[j] - tableau[i - 1][j - 1]))
            if err <= best_err:
                best, best_err = row[j], err
        tableau.append(row)
        if i == 0:
            best = row[0]
        elif abs(row[i] - tableau[i - 1][i - 1]) >= 2 * best_err:
            break
    if full_output:
        return best, best_err
    return best


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def find_root(f, lo, hi, *, rel_tol=4 * np.finfo(float).eps, abs_tol=1e-300):
    """Root of ``f`` inside ``[lo, hi]`` by Brent's bracketing method.

    Raises
    ------
    BracketError
        If ``f(lo)`` and ``f(hi)`` have the same sign.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if flo * fhi > 0:
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}"
        )
    rtol = max(rel_tol, 4 * np.finfo(float).eps)
    return float(optimize.brentq(f, lo, hi, xtol=abs_tol, rtol=rtol, maxiter=500))
