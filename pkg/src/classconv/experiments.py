"""Monte-Carlo product experiments and goodness-of-fit against the analytic laws.

Reproducibility contract: every experiment draws from the counter-based
Philox4x64-10 generator, keyed by the 128-bit pair (seed, stream).  Stream
j of an experiment with w streams produces chunk j of the sample, so a run
can be split across workers (one stream per worker) and merged
deterministically; the merged result is identical to a single-threaded run
with the same stream layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classes import (
    ConjugacyClass,
    SphericalClassCompact,
    SphericalClassNC,
    sample_conjugacy,
    sample_spherical_compact,
    sample_spherical_nc,
)
from .densities import ProductDensity, SupportInterval, product_density_for
from .errors import InvalidParams, UnsortedInput
from .groups import cartan_parameter, mul_entries

_UINT64 = (1 << 64) - 1
_CHUNK = 1 << 17


def stream_rng(seed, stream=0) -> np.random.Generator:
    """Philox4x64-10 generator keyed by (seed, stream)."""
    key = np.array([int(seed) & _UINT64, int(stream) & _UINT64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class Histogram:
    """Evenly binned counts over [lo, hi]; merge requires identical binning."""

    lo: float
    hi: float
    counts: np.ndarray
    n_total: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 1 or counts.size < 1:
            raise InvalidParams("counts must be a nonempty vector")
        if np.any(counts < 0):
            raise InvalidParams("negative bin count")
        if int(counts.sum()) != self.n_total:
            raise InvalidParams("counts do not sum to n_total")
        if not self.hi > self.lo:
            raise InvalidParams(f"degenerate range [{self.lo!r}, {self.hi!r}]")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_samples(cls, samples, lo, hi, bins=200) -> "Histogram":
        x = np.clip(np.asarray(samples, dtype=float), lo, hi)
        counts, _ = np.histogram(x, bins=int(bins), range=(lo, hi))
        return cls(float(lo), float(hi), counts.astype(np.int64), int(x.size))

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.counts.size + 1)

    @property
    def centers(self) -> np.ndarray:
        e = self.edges
        return 0.5 * (e[:-1] + e[1:])

    def density(self) -> np.ndarray:
        width = (self.hi - self.lo) / self.counts.size
        return self.counts / (self.n_total * width)

    def merge(self, other: "Histogram") -> "Histogram":
        if (self.lo, self.hi, self.counts.size) != (
            other.lo,
            other.hi,
            other.counts.size,
        ):
            raise InvalidParams("histograms have incompatible binning")
        return Histogram(
            self.lo,
            self.hi,
            self.counts + other.counts,
            self.n_total + other.n_total,
        )


@dataclass(frozen=True)
class ComparisonReport:
    ks: float
    l1: float
    n: int
    seed: int
    kind: str

    def __post_init__(self):
        if not 0.0 <= self.ks <= 1.0:
            raise InvalidParams(f"ks = {self.ks!r} outside [0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "ks": self.ks,
            "l1": self.l1,
            "n": self.n,
            "seed": self.seed,
            "kind": self.kind,
        }


def _pair_check(class_a, class_b):
    same = type(class_a) is type(class_b)
    if not same:
        raise InvalidParams("product experiments need two classes of the same family")
    if isinstance(class_a, SphericalClassNC) and class_a.flavor is not class_b.flavor:
        raise InvalidParams("mixed SL(2,R)/SL(2,C) products are not defined")


def _product_params_chunk(class_a, class_b, m, rng) -> np.ndarray:
    if isinstance(class_a, ConjugacyClass):
        a1, b1 = sample_conjugacy(class_a, rng, size=m)
        a2, b2 = sample_conjugacy(class_b, rng, size=m)
        p11, _ = mul_entries(a1, b1, a2, b2)
        return np.arccos(np.clip(p11.real, -1.0, 1.0))
    if isinstance(class_a, SphericalClassCompact):
        a1, b1 = sample_spherical_compact(class_a, rng, size=m)
        a2, b2 = sample_spherical_compact(class_b, rng, size=m)
        p11, _ = mul_entries(a1, b1, a2, b2)
        return np.abs(p11)
    g1 = sample_spherical_nc(class_a, rng, size=m)
    g2 = sample_spherical_nc(class_b, rng, size=m)
    return np.asarray(cartan_parameter(g1 @ g2))


def product_experiment(class_a, class_b, n, seed, streams=1, base_stream=0):
    """Sorted class parameters of n independent products g*h.

    g is drawn from class_a and h from class_b; the returned value is the
    product's class angle, radius or singular-value parameter depending on
    the family.  The sample is split evenly over ``streams`` Philox streams
    starting at ``base_stream`` and is fully determined by
    (n, seed, streams, base_stream).
    """
    _pair_check(class_a, class_b)
    n = int(n)
    if n < 1:
        raise InvalidParams(f"n = {n!r}, expected >= 1")
    if streams < 1:
        raise InvalidParams(f"streams = {streams!r}, expected >= 1")
    base, rem = divmod(n, streams)
    parts = []
    for j in range(streams):
        m = base + (1 if j < rem else 0)
        if m == 0:
            continue
        rng = stream_rng(seed, base_stream + j)
        done = 0
        while done < m:
            step = min(_CHUNK, m - done)
            parts.append(_product_params_chunk(class_a, class_b, step, rng))
            done += step
    return np.sort(np.concatenate(parts))


def ks_distance(sample, cdf) -> float:
    """Supremum gap between the empirical cdf of a sorted sample and ``cdf``.

    Both one-sided gaps are checked at every sample point.
    """
    x = np.asarray(sample, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise UnsortedInput("expected a nonempty 1-d sample")
    if np.any(np.diff(x) < 0.0):
        raise UnsortedInput("sample is not sorted ascending")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(x.size, dtype=float)
    d_hi = float(np.max((i + 1.0) / x.size - f))
    d_lo = float(np.max(f - i / x.size))
    return max(d_hi, d_lo, 0.0)


def ks_two_sample(a, b) -> float:
    """Two-sample KS statistic for two sorted samples."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(np.diff(a) < 0.0) or np.any(np.diff(b) < 0.0):
        raise UnsortedInput("samples must be sorted ascending")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def compare_experiment(
    class_a, class_b, n, seed, streams=1, bins=200
) -> tuple[ComparisonReport, Histogram]:
    """Run a product experiment and score it against the analytic law.

    Returns the report (KS on the raw sorted sample, L1 between the binned
    empirical density and the pdf at bin centers) plus the histogram.
    """
    density = product_density_for(class_a, class_b)
    sample = product_experiment(class_a, class_b, n, seed, streams=streams)
    ks = ks_distance(sample, density.cdf)
    hist = Histogram.from_samples(
        sample, density.support.lo, density.support.hi, bins=bins
    )
    width = hist.edges[1] - hist.edges[0]
    pdf_mid = np.asarray(density.pdf(hist.centers), dtype=float)
    l1 = float(np.sum(np.abs(hist.density() - pdf_mid)) * width)
    report = ComparisonReport(ks, l1, int(n), int(seed), density.kind.value)
    return report, hist


def convergence_study(class_a, class_b, n_grid, seeds=tuple(range(10))):
    """Mean and spread of the KS statistic along a growing-sample grid.

    Returns one (n, mean_ks, sd_ks) row per grid entry; for independent
    sampling the mean decays like n^(-1/2).
    """
    n_grid = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise InvalidParams("n_grid must be strictly ascending")
    density = product_density_for(class_a, class_b)
    rows = []
    for n in n_grid:
        ks_vals = [
            ks_distance(product_experiment(class_a, class_b, n, seed), density.cdf)
            for seed in seeds
        ]
        rows.append((n, float(np.mean(ks_vals)), float(np.std(ks_vals))))
    return rows


def iterate_conj_support(angles) -> SupportInterval:
    """Interval arithmetic for the angles reachable by a k-fold product.

    Folds sums through pi: combining reachable interval [lo, hi] with a new
    class angle g gives lower endpoint 0 when g is already reachable and
    min(|lo-g|, |hi-g|) otherwise, and upper endpoint pi when lo+g <= pi <=
    hi+g and the larger folded endpoint otherwise.
    """
    angles = [float(a) for a in angles]
    if len(angles) < 2:
        raise InvalidParams("need at least two classes")
    for a in angles:
        if not 0.0 < a < math.pi:
            raise InvalidParams(f"angle {a!r} outside (0, pi)")

    def fold(x):
        return min(x, 2.0 * math.pi - x)

    lo, hi = angles[0], angles[0]
    for g in angles[1:]:
        new_lo = 0.0 if lo <= g <= hi else min(abs(lo - g), abs(hi - g))
        if lo + g <= math.pi <= hi + g:
            new_hi = math.pi
        else:
            new_hi = max(fold(lo + g), fold(hi + g))
        lo, hi = new_lo, new_hi
    return SupportInterval(lo, hi)


def iterated_convolution(angles, n, seed, bins=200) -> Histogram:
    """Histogram of the product angle of k-fold conjugacy-class products."""
    classes = [ConjugacyClass(a) for a in angles]
    support = iterate_conj_support(angles)
    n = int(n)
    if n < 1:
        raise InvalidParams(f"n = {n!r}, expected >= 1")
    rng = stream_rng(seed, 0)
    parts = []
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        a, b = sample_conjugacy(classes[0], rng, size=m)
        for c in classes[1:]:
            a2, b2 = sample_conjugacy(c, rng, size=m)
            a, b = mul_entries(a, b, a2, b2)
        parts.append(np.arccos(np.clip(a.real, -1.0, 1.0)))
        done += m
    samples = np.concatenate(parts)
    return Histogram.from_samples(samples, support.lo, support.hi, bins=bins)
