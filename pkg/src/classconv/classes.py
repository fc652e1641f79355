"""Class descriptors, invariant-measure samplers and class masses.

Three families of classes are covered: conjugacy classes of SU(2) (all
matrices with eigenvalues exp(+-i*alpha)), two-sided torus orbits in SU(2)
(constant |a11| = r), and two-sided compact orbits in SL(2,R) / SL(2,C)
(constant singular-value parameter t).  Samplers realize the unique
invariant probability measure on each orbit; masses carry the two
normalization conventions found in the source material side by side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateClass, InvalidParams
from .groups import (
    TWO_PI,
    Flavor,
    Sl2Element,
    Su2Element,
    haar_sample_su2,
    su2_matrices,
)


@dataclass(frozen=True)
class ConjugacyClass:
    """Conjugacy class of SU(2) with eigenvalue angle alpha in (0, pi)."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < math.pi:
            raise DegenerateClass(
                f"alpha = {self.alpha!r}: the class at 0 or pi is a central point"
            )


@dataclass(frozen=True)
class SphericalClassCompact:
    """Two-sided diagonal-torus orbit in SU(2), labelled by r = |a11|."""

    r: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise DegenerateClass(
                f"r = {self.r!r}: orbits at 0 or 1 are singular (circle or point)"
            )


@dataclass(frozen=True)
class SphericalClassNC:
    """Two-sided compact orbit in SL(2,R) or SL(2,C), labelled by t > 0."""

    t: float
    flavor: Flavor

    def __post_init__(self):
        if not self.t > 0.0:
            raise DegenerateClass(f"t = {self.t!r}: the orbit at t = 0 is compact")


class MassConvention(enum.Enum):
    # The two stated total masses for compact spherical orbits differ by a
    # factor 4*pi^2; both are carried so downstream code can pick either.
    PAPER_STATED = "paper_stated"
    PROOF_CONSISTENT = "proof_consistent"


@dataclass(frozen=True)
class ClassMass:
    value: float
    convention: MassConvention

    def __post_init__(self):
        if self.value < 0.0:
            raise InvalidParams(f"mass {self.value!r} < 0")


def sample_conjugacy(c: ConjugacyClass, rng, size=None):
    """Sample h * diag(exp(i*alpha), exp(-i*alpha)) * h^-1 with Haar h.

    Conjugating a Haar element gives the unique conjugation-invariant
    probability on the class.  Entrywise, with h = [[p, q], [-q~, p~]]:
    a11 = cos(alpha) + i*(2|p|^2 - 1)*sin(alpha), a12 = -2i*sin(alpha)*p*q.
    ``size=None`` returns one Su2Element, otherwise entry arrays.
    """
    n = 1 if size is None else int(size)
    p, q = haar_sample_su2(rng, size=n)
    sin_a = math.sin(c.alpha)
    a11 = math.cos(c.alpha) + 1j * (2.0 * np.abs(p) ** 2 - 1.0) * sin_a
    a12 = -2j * sin_a * p * q
    if size is None:
        return Su2Element(complex(a11[0]), complex(a12[0]))
    return a11, a12


def sample_spherical_compact(c: SphericalClassCompact, rng, size=None):
    """Sample the chart point (r, phi, psi) with independent uniform angles."""
    n = 1 if size is None else int(size)
    phi = rng.random(n) * TWO_PI
    psi = rng.random(n) * TWO_PI
    a11 = c.r * np.exp(1j * phi)
    a12 = math.sqrt(1.0 - c.r * c.r) * np.exp(-1j * psi)
    if size is None:
        return Su2Element(complex(a11[0]), complex(a12[0]))
    return a11, a12


def _so2_matrices(angles) -> np.ndarray:
    c, s = np.cos(angles), np.sin(angles)
    out = np.empty(np.shape(angles) + (2, 2))
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    return out


def sample_spherical_nc(c: SphericalClassNC, rng, size=None):
    """Sample k1 * diag(exp(t/2), exp(-t/2)) * k2 with Haar-random k1, k2.

    k1, k2 are drawn from SO(2) (REAL) or SU(2) (COMPLEX).  ``size=None``
    returns one Sl2Element, otherwise an (n, 2, 2) array.
    """
    n = 1 if size is None else int(size)
    if c.flavor is Flavor.REAL:
        k1 = _so2_matrices(rng.random(n) * TWO_PI)
        k2 = _so2_matrices(rng.random(n) * TWO_PI)
    else:
        k1 = su2_matrices(*haar_sample_su2(rng, size=n))
        k2 = su2_matrices(*haar_sample_su2(rng, size=n))
    half = math.exp(c.t / 2.0)
    mid = k1.copy()
    mid[..., :, 0] *= half
    mid[..., :, 1] /= half
    g = mid @ k2
    if size is None:
        return Sl2Element(g[0], c.flavor)
    return g


# Constant from the radial Haar normalization, fixed per flavor so that the
# noncompact orbit volume comes out as [4*pi^2*sinh(t)]^eps (eps = 1 or 2).
HAAR_RADIAL_CONSTANT = {Flavor.REAL: 1.0, Flavor.COMPLEX: 1.0}


def class_mass(descriptor, convention=MassConvention.PROOF_CONSISTENT) -> ClassMass:
    """Total mass of the invariant measure on a class.

    Conjugacy classes carry 4*pi*sin(alpha)^2 (the Weyl-factor normalization,
    which integrates to vol(SU(2)) = 4*pi^2 over a full torus period).  For
    compact spherical orbits both stated conventions are supported: 2r
    (PAPER_STATED) and 8*pi^2*r (PROOF_CONSISTENT); they differ by 4*pi^2.
    Noncompact orbits get [4*pi^2*c*sinh(t)]^eps with c from
    HAAR_RADIAL_CONSTANT.  Samplers are always normalized to probability
    measures, so the convention never touches distributional results.
    """
    if isinstance(descriptor, ConjugacyClass):
        return ClassMass(4.0 * math.pi * math.sin(descriptor.alpha) ** 2, convention)
    if isinstance(descriptor, SphericalClassCompact):
        if convention is MassConvention.PAPER_STATED:
            return ClassMass(2.0 * descriptor.r, convention)
        return ClassMass(8.0 * math.pi**2 * descriptor.r, convention)
    if isinstance(descriptor, SphericalClassNC):
        c = HAAR_RADIAL_CONSTANT[descriptor.flavor]
        base = 4.0 * math.pi**2 * c * math.sinh(descriptor.t)
        return ClassMass(base**descriptor.flavor.exponent, convention)
    raise InvalidParams(f"not a class descriptor: {descriptor!r}")


def descriptor_to_json(descriptor) -> dict:
    """JSON form {"kind": ..., "param": ..., "flavor": ...} for CLI round-trips."""
    if isinstance(descriptor, ConjugacyClass):
        return {"kind": "conjugacy", "param": descriptor.alpha, "flavor": None}
    if isinstance(descriptor, SphericalClassCompact):
        return {"kind": "spherical_compact", "param": descriptor.r, "flavor": None}
    if isinstance(descriptor, SphericalClassNC):
        return {
            "kind": "spherical_noncompact",
            "param": descriptor.t,
            "flavor": descriptor.flavor.value,
        }
    raise InvalidParams(f"not a class descriptor: {descriptor!r}")


def descriptor_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "conjugacy":
        return ConjugacyClass(float(obj["param"]))
    if kind == "spherical_compact":
        return SphericalClassCompact(float(obj["param"]))
    if kind == "spherical_noncompact":
        return SphericalClassNC(float(obj["param"]), Flavor(obj["flavor"]))
    raise InvalidParams(f"unknown descriptor kind {kind!r}")
