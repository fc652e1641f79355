"""Character theory of SU(2) applied to the conjugacy product density.

The irreducible character indexed by k >= 0 (dimension k+1) evaluates to
sin((k+1)theta)/sin(theta) at class angle theta.  Summing the triple
character series reproduces the two-class product density; the series only
converges in the weak sense, so Cesaro (C,1) averaging of partial sums is
the default pointwise summation.  The same density has an even cosine
expansion whose coefficients telescope against the character series, and a
convolution-square norm given by an absolutely convergent series.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .densities import conj_density_raw
from .errors import InvalidParams


class Summation(enum.Enum):
    PARTIAL = "partial"
    CESARO = "cesaro"


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    summation: Summation


@dataclass(frozen=True)
class CharacterTable:
    """Characters of the representations with dimension up to max_k + 1."""

    max_k: int

    def __post_init__(self):
        if self.max_k < 1:
            raise InvalidParams(f"max_k = {self.max_k!r}, expected >= 1")

    def character(self, k, theta):
        if not 0 <= k <= self.max_k:
            raise InvalidParams(f"k = {k!r} outside [0, {self.max_k}]")
        return character(k, theta)

    def values(self, theta) -> np.ndarray:
        return np.array([character(k, theta) for k in range(self.max_k + 1)])


def character(k, theta):
    """sin((k+1)theta)/sin(theta), extended continuously to theta in {0, pi}.

    The limits are k+1 at 0 and (-1)^k (k+1) at pi.
    """
    if k < 0:
        raise InvalidParams(f"k = {k!r}, expected >= 0")
    th = np.asarray(theta, dtype=float)
    s = np.sin(th)
    tiny = np.abs(s) < 1e-12
    safe = np.where(tiny, 1.0, s)
    val = np.sin((k + 1) * th) / safe
    # Near a multiple m*pi the limit is (k+1)*(-1)^(k*m); cos picks the parity.
    limit = np.where(np.cos(th) > 0.0, float(k + 1), (-1.0) ** k * (k + 1))
    val = np.where(tiny, limit, val)
    return val if val.ndim else float(val)


def _check_angles(*pairs):
    for name, value in pairs:
        if not 0.0 < value < math.pi:
            raise InvalidParams(f"{name} = {value!r} outside (0, pi)")


def nu_series(alpha, beta, theta, K, summation=Summation.CESARO) -> SeriesResult:
    """Triple character series for the two-class product density.

    Partial sums of 16*pi*sin(a)sin(b)sin(th) * sum_k sin(k a)sin(k b)
    sin(k th)/k over k = 1..K.  With CESARO the (C,1) mean of the partial
    sums is returned; the Cesaro value converges to the two-branch density
    wherever the latter is continuous.
    """
    _check_angles(("alpha", alpha), ("beta", beta), ("theta", theta))
    if K < 1:
        raise InvalidParams(f"K = {K!r}, expected >= 1")
    k = np.arange(1, K + 1, dtype=float)
    terms = np.sin(k * alpha) * np.sin(k * beta) * np.sin(k * theta) / k
    partial = np.cumsum(terms)
    pref = 16.0 * math.pi * math.sin(alpha) * math.sin(beta) * math.sin(theta)
    if summation is Summation.PARTIAL:
        return SeriesResult(float(pref * partial[-1]), K, summation)
    return SeriesResult(float(pref * partial.mean()), K, summation)


def fourier_coefficient(n, alpha, beta):
    """Coefficient of cos(n theta) in the even expansion of the product density.

    8*pi*sin(a)sin(b) * [sin((n+1)a)sin((n+1)b)/(n+1)
                         - sin((n-1)a)sin((n-1)b)/(n-1)],
    where the second term at n = 1 is its limit value 0.  At n = 0 the
    formula returns a_0 with the density written as a_0/2 + sum a_n cos(n t).
    """
    _check_angles(("alpha", alpha), ("beta", beta))
    if n < 0:
        raise InvalidParams(f"n = {n!r}, expected >= 0")
    pref = 8.0 * math.pi * math.sin(alpha) * math.sin(beta)
    first = math.sin((n + 1) * alpha) * math.sin((n + 1) * beta) / (n + 1)
    if n == 1:
        second = 0.0
    else:
        second = math.sin((n - 1) * alpha) * math.sin((n - 1) * beta) / (n - 1)
    return pref * (first - second)


def fourier_synthesis(alpha, beta, theta, K, summation=Summation.CESARO) -> SeriesResult:
    """Cosine synthesis a_0/2 + sum_{n=1}^{N} a_n cos(n theta), N < K.

    Partial sums are indexed so that N terms use coefficients up to n = N-1;
    the Cesaro mean then telescopes against nu_series at matching K.
    """
    _check_angles(("alpha", alpha), ("beta", beta), ("theta", theta))
    if K < 1:
        raise InvalidParams(f"K = {K!r}, expected >= 1")
    n = np.arange(K, dtype=float)
    pref = 8.0 * math.pi * math.sin(alpha) * math.sin(beta)
    first = np.sin((n + 1) * alpha) * np.sin((n + 1) * beta) / (n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        second = np.sin((n - 1) * alpha) * np.sin((n - 1) * beta) / (n - 1)
    second[n == 1] = 0.0
    coeffs = pref * (first - second)
    coeffs[0] *= 0.5
    partial = np.cumsum(coeffs * np.cos(n * theta))
    if summation is Summation.PARTIAL:
        return SeriesResult(float(partial[-1]), K, summation)
    return SeriesResult(float(partial.mean()), K, summation)


def plancherel_norm_sq(alpha, beta, K):
    """Partial sum of the convolution-square norm series.

    sum_{k=1}^{K} 16 sin^2(k alpha) sin^2(k beta) / k^2, with the index
    unified to k = dimension.  Absolutely convergent, nondecreasing in K,
    with tail below 16/K.
    """
    _check_angles(("alpha", alpha), ("beta", beta))
    if K < 1:
        raise InvalidParams(f"K = {K!r}, expected >= 1")
    k = np.arange(1, K + 1, dtype=float)
    terms = 16.0 * np.sin(k * alpha) ** 2 * np.sin(k * beta) ** 2 / k**2
    return float(terms.sum())


def series_diagnostics(alpha, beta, theta, K) -> dict:
    """Per-truncation diagnostics: partial sum, Cesaro mean and the target value."""
    _check_angles(("alpha", alpha), ("beta", beta), ("theta", theta))
    if K < 1:
        raise InvalidParams(f"K = {K!r}, expected >= 1")
    k = np.arange(1, K + 1, dtype=float)
    terms = np.sin(k * alpha) * np.sin(k * beta) * np.sin(k * theta) / k
    pref = 16.0 * math.pi * math.sin(alpha) * math.sin(beta) * math.sin(theta)
    partial = pref * np.cumsum(terms)
    cesaro = np.cumsum(partial) / k
    reference = float(conj_density_raw(alpha, beta, theta))
    return {
        "K": k.astype(int),
        "partial": partial,
        "cesaro": cesaro,
        "reference": np.full(int(K), reference),
    }
