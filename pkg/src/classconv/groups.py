"""Elements, coordinates and decompositions for SU(2), SL(2,R) and SL(2,C).

SU(2) elements are stored as the two top-row entries (a11, a12); the full
matrix is ``[[a11, a12], [-conj(a12), conj(a11)]]``.  SL(2) elements carry
their four entries plus a flavor tag selecting the real or complex group.
Every operation here is a pure function; the only stateful inputs are
numpy random generators passed explicitly to the samplers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, TraceBelowTwo

TWO_PI = 2.0 * math.pi


class Flavor(enum.Enum):
    """Which noncompact group: SL(2,R) (compact part SO(2)) or SL(2,C) (SU(2))."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def exponent(self) -> int:
        # Radial Haar density is sinh(t)**exponent: 1 for SL(2,R), 2 for SL(2,C).
        return 1 if self is Flavor.REAL else 2


@dataclass(frozen=True)
class Su2Element:
    """Special-unitary 2x2 matrix, stored as its top-row entries.

    Invariant: |a11|^2 + |a12|^2 = 1 (unit determinant comes for free).
    """

    a11: complex
    a12: complex

    def __post_init__(self):
        norm = abs(self.a11) ** 2 + abs(self.a12) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidParams(f"row norm |a11|^2+|a12|^2 = {norm!r}, expected 1")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.a11, self.a12], [-np.conj(self.a12), np.conj(self.a11)]],
            dtype=complex,
        )

    def inverse(self) -> "Su2Element":
        return Su2Element(np.conj(self.a11), -self.a12)


@dataclass(frozen=True)
class ChartPoint:
    """Coordinates (rho, phi, psi) covering SU(2).

    The chart sends (rho, phi, psi) to a11 = rho*exp(i*phi),
    a12 = sqrt(1-rho^2)*exp(-i*psi); the invariant volume element in these
    coordinates is 2*rho drho dphi dpsi.  Angles are normalized to [0, 2pi).
    """

    rho: float
    phi: float
    psi: float

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise InvalidParams(f"rho = {self.rho!r} outside [0, 1]")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "psi", float(self.psi) % TWO_PI)


@dataclass(frozen=True)
class Sl2Element:
    """Determinant-one 2x2 matrix over R or C, per the flavor tag."""

    entries: np.ndarray
    flavor: Flavor

    def __post_init__(self):
        m = np.asarray(self.entries)
        if m.shape != (2, 2):
            raise InvalidParams(f"entries shape {m.shape}, expected (2, 2)")
        if self.flavor is Flavor.REAL:
            if np.max(np.abs(np.imag(m))) > 1e-12:
                raise InvalidParams("REAL flavor element has complex entries")
            m = np.real(m).astype(float)
        else:
            m = m.astype(complex)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det - 1.0) > 1e-10:
            raise InvalidParams(f"det = {det!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def matrix(self) -> np.ndarray:
        return self.entries


@dataclass(frozen=True)
class KakFactors:
    """Cartan factors g = k1 * diag(exp(t/2), exp(-t/2)) * k2, t >= 0."""

    k1: np.ndarray
    t: float
    k2: np.ndarray
    flavor: Flavor = field(default=Flavor.REAL)

    def compose(self) -> np.ndarray:
        a = np.diag([math.exp(self.t / 2.0), math.exp(-self.t / 2.0)])
        return self.k1 @ a @ self.k2


def su2_from_chart(p, phi=None, psi=None) -> Su2Element:
    """Build the SU(2) element at a chart point.

    Accepts either a ChartPoint or the three coordinates directly.
    """
    if phi is None:
        rho, phi, psi = p.rho, p.phi, p.psi
    else:
        rho = p
    if not 0.0 <= rho <= 1.0:
        raise InvalidParams(f"rho = {rho!r} outside [0, 1]")
    a11 = rho * np.exp(1j * phi)
    a12 = math.sqrt(max(0.0, 1.0 - rho * rho)) * np.exp(-1j * psi)
    return Su2Element(complex(a11), complex(a12))


def chart_from_su2(g: Su2Element) -> ChartPoint:
    """Invert the chart; phi (psi) is set to 0 where rho = 0 (rho = 1)."""
    rho = abs(g.a11)
    phi = float(np.angle(g.a11)) % TWO_PI if rho > 0.0 else 0.0
    psi = (-float(np.angle(g.a12))) % TWO_PI if rho < 1.0 else 0.0
    return ChartPoint(min(rho, 1.0), phi, psi)


def su2_multiply(g: Su2Element, h: Su2Element) -> Su2Element:
    a, b = mul_entries(g.a11, g.a12, h.a11, h.a12)
    return Su2Element(complex(a), complex(b))


def mul_entries(a1, b1, a2, b2):
    """Top-row entries of the product of two SU(2) elements (vectorized)."""
    return a1 * a2 - b1 * np.conj(b2), a1 * b2 + b1 * np.conj(a2)


def class_angle(g):
    """Eigenvalue angle theta in [0, pi]: the eigenvalues are exp(+-i*theta).

    Accepts an Su2Element, a complex a11 entry, or an array of entries;
    conjugation-invariant because Re(a11) is half the trace.
    """
    a11 = getattr(g, "a11", g)
    theta = np.arccos(np.clip(np.real(a11), -1.0, 1.0))
    return theta if np.ndim(theta) else float(theta)


def spherical_radius(g):
    """|a11|, the invariant of two-sided diagonal-torus orbits on SU(2)."""
    a11 = getattr(g, "a11", g)
    r = np.abs(a11)
    return r if np.ndim(r) else float(r)


def haar_sample_su2(rng, size=None):
    """Haar-uniform SU(2) sample(s).

    rho^2 is uniform on [0,1] and phi, psi uniform on [0,2pi), matching the
    invariant volume element 2*rho drho dphi dpsi.  With ``size=None`` a
    single Su2Element is returned, otherwise a pair of entry arrays.
    """
    n = 1 if size is None else int(size)
    rho = np.sqrt(rng.random(n))
    phi = rng.random(n) * TWO_PI
    psi = rng.random(n) * TWO_PI
    a11 = rho * np.exp(1j * phi)
    a12 = np.sqrt(np.maximum(0.0, 1.0 - rho * rho)) * np.exp(-1j * psi)
    if size is None:
        return Su2Element(complex(a11[0]), complex(a12[0]))
    return a11, a12


def su2_matrices(a11, a12) -> np.ndarray:
    """Stack entry arrays into (n, 2, 2) special-unitary matrices."""
    a11 = np.asarray(a11)
    out = np.empty(a11.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a11
    out[..., 0, 1] = a12
    out[..., 1, 0] = -np.conj(a12)
    out[..., 1, 1] = np.conj(a11)
    return out


def cartan_element(t, flavor: Flavor) -> Sl2Element:
    m = np.diag([math.exp(t / 2.0), math.exp(-t / 2.0)])
    return Sl2Element(m if flavor is Flavor.REAL else m.astype(complex), flavor)


def cartan_parameter(g):
    """Singular-value parameter t >= 0 with 2*cosh(t) = Tr(g g*).

    Bi-invariant under the maximal compact subgroup on both sides.  Accepts
    an Sl2Element or a (..., 2, 2) array.  Raises TraceBelowTwo when the
    Gram trace falls below 2 by more than 1e-9 (impossible for an exact
    determinant-one matrix, so the input is numerically invalid).
    """
    m = g.entries if isinstance(g, Sl2Element) else np.asarray(g)
    gram_half = 0.5 * np.einsum("...ij,...ij->...", m, np.conj(m)).real
    if np.any(gram_half < 1.0 - 5e-10):
        raise TraceBelowTwo(f"Tr(g g*) = {2.0 * np.min(gram_half)!r} < 2")
    t = np.arccosh(np.maximum(gram_half, 1.0))
    return t if np.ndim(t) else float(t)


def _fix_kak_gauge(k1, k2, flavor):
    # Make the decomposition deterministic: rotate by a torus element that
    # commutes with diag(e^{t/2}, e^{-t/2}) until k1[0,0] is real and >= 0.
    if flavor is Flavor.REAL:
        pivot = k1[0, 0] if abs(k1[0, 0]) > 1e-12 else k1[1, 0]
        if pivot < 0.0:
            return -k1, -k2
        return k1, k2
    pivot = k1[0, 0] if abs(k1[0, 0]) > 1e-12 else k1[1, 0]
    tau = -np.angle(pivot)
    d = np.diag([np.exp(1j * tau), np.exp(-1j * tau)])
    return k1 @ d, np.conj(d.T) @ k2


def kak_decompose(g: Sl2Element) -> KakFactors:
    """Cartan decomposition g = k1 a_t k2 via SVD with determinant correction.

    k1, k2 land in SO(2) or SU(2) per the flavor, t = cartan_parameter(g),
    and the recomposition reproduces g to within a few 1e-15 per entry.
    """
    m = g.entries
    u, s, vh = np.linalg.svd(m)
    if g.flavor is Flavor.REAL:
        if np.linalg.det(u) < 0.0:
            u = u @ np.diag([1.0, -1.0])
            vh = np.diag([1.0, -1.0]) @ vh
    else:
        # det(u) and det(vh) are conjugate phases; push both to 1 with a
        # diagonal unitary, which commutes with diag(s).
        phase = np.angle(np.linalg.det(u))
        d = np.diag([np.exp(-1j * phase), 1.0])
        u = u @ d
        vh = np.conj(d.T) @ vh
    t = max(0.0, 2.0 * math.log(max(s[0], 1.0)))
    k1, k2 = _fix_kak_gauge(u, vh, g.flavor)
    return KakFactors(k1, t, k2, g.flavor)
