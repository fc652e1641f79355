"""Tensor-product bookkeeping for the quantized picture of class products.

Integer labels n index the symmetric-power representations of SU(2)
(dimension n + 1) and, through the exponential of the coadjoint sphere of
radius n/(4pi), the conjugacy class at angle n/(4pi) mod pi.  The tensor
decomposition rule matches the Minkowski sum of the spheres: the labels
|n-m| .. n+m of matching parity.  Inside the continuous product support
the parity condition keeps about every other label, which is the "half the
representations" comparison quantified by ``quantization_consistency``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densities import SupportInterval, conj_support
from .errors import DegenerateClass, FoldedRegime, InvalidParams

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class RepLabel:
    """Symmetric-power label; the representation has dimension n + 1."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParams(f"label {self.n!r} < 0")

    @property
    def dimension(self) -> int:
        return self.n + 1


def clebsch_gordan_range(n, m) -> list:
    """Labels in the tensor product: |n-m| <= k <= n+m with k = n+m mod 2."""
    n, m = int(n), int(m)
    if n < 0 or m < 0:
        raise InvalidParams(f"labels {(n, m)!r} must be nonnegative")
    return [RepLabel(k) for k in range(abs(n - m), n + m + 1, 2)]


def minkowski_support(n, m) -> SupportInterval:
    """Label-unit radii reachable by the Minkowski sum of the two spheres."""
    n, m = int(n), int(m)
    if n < 0 or m < 0:
        raise InvalidParams(f"labels {(n, m)!r} must be nonnegative")
    return SupportInterval(float(abs(n - m)), float(n + m))


def label_angle(k) -> float:
    """Class angle of label k under the sphere-to-class exponential map."""
    return (int(k) / _FOUR_PI) % math.pi


@dataclass(frozen=True)
class QuantizationReport:
    n: int
    m: int
    cg_labels: tuple
    support_labels: tuple
    support_interval: SupportInterval
    ratio: float | None
    folded: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "cg_labels": list(self.cg_labels),
            "support_labels": list(self.support_labels),
            "support_interval": [self.support_interval.lo, self.support_interval.hi],
            "ratio": self.ratio,
            "folded": self.folded,
        }


def quantization_consistency(n, m, strict=False) -> QuantizationReport:
    """Compare tensor-product labels against the continuous product support.

    The classes at angles n/(4pi) and m/(4pi) (mod pi) multiply to a
    continuous support; labels whose angle falls inside it are collected
    and compared with the tensor-product labels.  When the angle sum folds
    at pi the unfolded comparison is unavailable: the report is flagged
    (ratio None) or, with ``strict=True``, FoldedRegime is raised.
    """
    n, m = int(n), int(m)
    alpha = label_angle(n)
    beta = label_angle(m)
    if alpha <= 0.0 or beta <= 0.0:
        raise DegenerateClass(f"labels {(n, m)!r} map to a degenerate class angle")
    folded = alpha + beta >= math.pi
    if folded and strict:
        raise FoldedRegime(
            f"alpha + beta = {alpha + beta!r} >= pi for labels {(n, m)!r}"
        )
    support = conj_support(alpha, beta)
    cg = tuple(lbl.n for lbl in clebsch_gordan_range(n, m))
    # Candidate labels stop at n+m: the Minkowski radius bound in label units.
    in_support = [
        int(k)
        for k in np.arange(0, n + m + 1)
        if support.lo - 1e-12 <= label_angle(k) <= support.hi + 1e-12
    ]
    ratio = None
    if not folded and in_support:
        ratio = len(cg) / len(in_support)
    return QuantizationReport(
        n, m, cg, tuple(in_support), support, ratio, folded
    )
