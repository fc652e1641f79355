"""Sphere discretizations and their pairwise-product empirical measures.

Three families of point sets are built: seeded uniform-random points,
geodesic icosahedral lattices at frequency class (m, n) with
N = 10(mn + m^2 + n^2) + 2 points, and a deterministic equal-area banded
layout ("polar" points) that serves as the starting configuration for
Riesz-energy minimization.  Each unit vector maps onto a conjugacy class
through u -> cos(a) I + sin(a) xi(u) with xi(u) the traceless
skew-hermitian matrix of u, so a point set discretizes a class and the
full pairwise product table gives a deterministic empirical measure that
can be scored against the analytic product density.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .densities import conj_product_density
from .errors import CoincidentPoints, DegenerateClass, InvalidParams
from .experiments import Histogram, stream_rng
from .groups import Su2Element

_GOLDEN_FRAC = (math.sqrt(5.0) - 1.0) / 2.0


class Method(enum.Enum):
    RANDOM = "random"
    ICOSA_LATTICE = "icosa_lattice"
    POLAR = "polar"
    MINIMIZED = "minimized"


@dataclass(frozen=True)
class SpherePointSet:
    """N distinct unit vectors in R^3 plus the construction method tag."""

    points: np.ndarray
    method: Method

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 1:
            raise InvalidParams(f"points shape {pts.shape}, expected (N, 3)")
        norms = np.linalg.norm(pts, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise InvalidParams("points must lie on the unit sphere")
        if pts.shape[0] > 1 and _min_pair_distance(pts) <= 0.0:
            raise CoincidentPoints("duplicate points in the set")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class EnergyReport:
    s: float
    energy: float
    gradient_norm: float

    def to_json_dict(self) -> dict:
        return {"s": self.s, "energy": self.energy, "gradient_norm": self.gradient_norm}


def _min_pair_distance(pts, block=1024) -> float:
    best = np.inf
    n = pts.shape[0]
    for i0 in range(0, n, block):
        chunk = pts[i0 : i0 + block]
        d2 = np.sum((chunk[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
        rows = np.arange(chunk.shape[0])
        d2[rows, i0 + rows] = np.inf
        best = min(best, float(np.sqrt(np.min(d2))))
    return best


def icosahedron_vertices() -> np.ndarray:
    """The 12 vertices of the regular icosahedron on the unit sphere."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    out = []
    for a, b in itertools.product((1.0, -1.0), (phi, -phi)):
        out.extend([(0.0, a, b), (a, b, 0.0), (b, 0.0, a)])
    return np.array(out) / math.sqrt(1.0 + phi * phi)


def _icosahedron_faces(verts) -> list:
    # Faces are triples of mutually edge-adjacent vertices, oriented outward.
    d2 = np.sum((verts[:, None, :] - verts[None, :, :]) ** 2, axis=-1)
    edge2 = np.min(d2[d2 > 1e-9])
    adj = d2 < edge2 * 1.5
    faces = []
    n = verts.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if not adj[i, j]:
                continue
            for k in range(j + 1, n):
                if adj[i, k] and adj[j, k]:
                    tri = (i, j, k)
                    if np.linalg.det(verts[list(tri)]) < 0.0:
                        tri = (i, k, j)
                    faces.append(tri)
    return faces


def icosahedral_lattice(m, n) -> SpherePointSet:
    """Geodesic subdivision of the icosahedron at frequency class (m, n).

    Each face carries the triangular-lattice points of the great triangle
    spanned by the lattice vector m + n*omega (omega = exp(i*pi/3)); the
    barycentric image of every lattice point is projected to the sphere and
    shared boundary points are deduplicated, leaving exactly
    10(mn + m^2 + n^2) + 2 points.
    """
    m, n = int(m), int(n)
    if m < 1 or n < 0:
        raise InvalidParams(f"(m, n) = {(m, n)!r}: need m >= 1 and n >= 0")
    T = m * m + m * n + n * n
    verts = icosahedron_vertices()
    faces = _icosahedron_faces(verts)
    # Integer barycentric test: p = i + j*omega lies in the closed triangle
    # with corners 0, (m, n), (-n, m+n) iff u, v >= 0 and u + v <= T, where
    # u = i(m+n) + jn and v = jm - in (all exact integer arithmetic).
    coords = []
    for i in range(-n, m + 1):
        for j in range(0, m + n + 1):
            u = i * (m + n) + j * n
            v = j * m - i * n
            if u >= 0 and v >= 0 and u + v <= T:
                coords.append((u / T, v / T))
    bary = np.array([(1.0 - b1 - b2, b1, b2) for b1, b2 in coords])
    candidates = []
    for tri in faces:
        corner = verts[list(tri)]
        pts = bary @ corner
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        candidates.append(pts)
    cand = np.concatenate(candidates)
    # Shared corner/edge points reappear across faces within rounding error;
    # the lattice spacing is orders of magnitude above 1e-6, so dropping the
    # higher index of every near pair keeps exactly one copy per cluster.
    pairs = cKDTree(cand).query_pairs(r=1e-6, output_type="ndarray")
    keep = np.ones(cand.shape[0], dtype=bool)
    if pairs.size:
        keep[np.maximum(pairs[:, 0], pairs[:, 1])] = False
    out = cand[keep]
    out = out[np.lexsort(out.T[::-1])]
    return SpherePointSet(out, Method.ICOSA_LATTICE)


def polar_points(N) -> SpherePointSet:
    """Deterministic banded layout with near-equal-area cells.

    Latitude bands at uniform colatitude spacing receive point quotas
    proportional to band area; within a band the longitudes are uniformly
    spaced with a per-band golden-ratio offset.  N = 2 returns the poles.
    """
    N = int(N)
    if N < 2:
        raise InvalidParams(f"N = {N!r}, expected >= 2")
    if N == 2:
        return SpherePointSet(
            np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]), Method.POLAR
        )
    bands = max(2, round(math.sqrt(N * math.pi) / 2.0))
    theta = (np.arange(bands) + 0.5) * math.pi / bands
    weights = np.sin(theta)
    quota = N * weights / weights.sum()
    counts = np.floor(quota).astype(int)
    short = N - int(counts.sum())
    if short > 0:
        order = np.argsort(-(quota - counts), kind="stable")
        counts[order[:short]] += 1
    pts = []
    for b in range(bands):
        nb = counts[b]
        if nb == 0:
            continue
        offset = (b * _GOLDEN_FRAC) % 1.0
        phi = 2.0 * math.pi * (np.arange(nb) + offset) / nb
        st, ct = math.sin(theta[b]), math.cos(theta[b])
        pts.append(np.column_stack([st * np.cos(phi), st * np.sin(phi),
                                    np.full(nb, ct)]))
    out = np.concatenate(pts)
    out /= np.linalg.norm(out, axis=1)[:, None]
    return SpherePointSet(out, Method.POLAR)


def random_points(N, rng) -> SpherePointSet:
    """N uniform-random points on the sphere (normalized gaussians)."""
    N = int(N)
    if N < 1:
        raise InvalidParams(f"N = {N!r}, expected >= 1")
    g = rng.normal(size=(N, 3))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return SpherePointSet(g, Method.RANDOM)


def _energy_and_gradient(pts, s, block=512):
    n = pts.shape[0]
    energy = 0.0
    grad = np.zeros_like(pts)
    for i0 in range(0, n, block):
        chunk = pts[i0 : i0 + block]
        diff = chunk[:, None, :] - pts[None, :, :]
        d2 = np.sum(diff * diff, axis=-1)
        rows = np.arange(chunk.shape[0])
        d2[rows, i0 + rows] = np.inf
        if np.min(d2) < 1e-24:
            raise CoincidentPoints("coincident points give infinite energy")
        inv = d2 ** (-s / 2.0)
        energy += 0.5 * float(inv.sum())
        grad[i0 : i0 + block] = -s * np.einsum("ij,ijk->ik", inv / d2, diff)
    return energy, grad


def _tangential(grad, pts):
    radial = np.sum(grad * pts, axis=1)
    return grad - radial[:, None] * pts


def riesz_energy(ps: SpherePointSet, s=1.0) -> EnergyReport:
    """Pairwise Riesz s-energy sum_{i<j} |z_i - z_j|^(-s).

    The report carries the largest tangential gradient row norm, the
    criticality measure for configurations constrained to the sphere.
    """
    if not s > 0.0:
        raise InvalidParams(f"s = {s!r}, expected > 0")
    if len(ps) < 2:
        return EnergyReport(float(s), 0.0, 0.0)
    energy, grad = _energy_and_gradient(ps.points, float(s))
    gmax = float(np.max(np.linalg.norm(_tangential(grad, ps.points), axis=1)))
    return EnergyReport(float(s), energy, gmax)


def minimize_energy(ps: SpherePointSet, s=1.0, max_iters=1000, tol=1e-6,
                    full_output=False):
    """Projected gradient descent with backtracking on the product of spheres.

    Each step retracts p - eta * grad_tangential back to the sphere; eta
    backtracks from 1/N (warm-started between iterations, capped at 1/N)
    until the energy decreases, so the output energy never exceeds the
    input energy.  Stops when the largest tangential gradient row norm
    drops below tol or at the iteration cap, whichever comes first; hitting
    the cap is reported in the info dict, not raised.
    """
    if not s > 0.0:
        raise InvalidParams(f"s = {s!r}, expected > 0")
    pts = ps.points.copy()
    n = pts.shape[0]
    if n < 2:
        result = SpherePointSet(pts, Method.MINIMIZED)
        info = {"iterations": 0, "converged": True, "energy": 0.0,
                "gradient_norm": 0.0}
        return (result, info) if full_output else result
    s = float(s)
    eta_max = 1.0 / n
    eta = eta_max
    energy, grad = _energy_and_gradient(pts, s)
    converged = False
    iterations = 0
    for iterations in range(1, int(max_iters) + 1):
        tang = _tangential(grad, pts)
        gmax = float(np.max(np.linalg.norm(tang, axis=1)))
        if gmax < tol:
            converged = True
            iterations -= 1
            break
        gsq = float(np.sum(tang * tang))
        eta = min(eta_max, eta * 4.0)
        while True:
            trial = pts - eta * tang
            trial /= np.linalg.norm(trial, axis=1)[:, None]
            new_energy, new_grad = _energy_and_gradient(trial, s)
            if new_energy <= energy - 1e-4 * eta * gsq:
                pts, energy, grad = trial, new_energy, new_grad
                break
            eta *= 0.5
            if eta < 1e-18:
                # No decrease found along the tangential direction; treat
                # the configuration as converged at this resolution.
                converged = True
                break
        if converged:
            break
    tang = _tangential(grad, pts)
    gmax = float(np.max(np.linalg.norm(tang, axis=1)))
    converged = converged or gmax < tol
    result = SpherePointSet(pts, Method.MINIMIZED)
    info = {
        "iterations": iterations,
        "converged": converged,
        "energy": energy,
        "gradient_norm": gmax,
    }
    return (result, info) if full_output else result


def class_entries(ps: SpherePointSet, alpha):
    """Top-row entries of cos(a) I + sin(a) xi(u) for every point u.

    xi(a, b, c) = [[ic, a+ib], [-a+ib, -ic]] is traceless skew-hermitian
    with xi^2 = -I, so the image lies in the conjugacy class at angle a.
    """
    if not 0.0 < alpha < math.pi:
        raise DegenerateClass(f"alpha = {alpha!r} outside (0, pi)")
    x, y, z = ps.points[:, 0], ps.points[:, 1], ps.points[:, 2]
    sin_a = math.sin(alpha)
    a11 = math.cos(alpha) + 1j * sin_a * z
    a12 = sin_a * (x + 1j * y)
    return a11, a12


def pointset_to_class(ps: SpherePointSet, alpha) -> list:
    """SU(2) elements of the class at angle alpha, one per point."""
    a11, a12 = class_entries(ps, alpha)
    return [Su2Element(complex(a), complex(b)) for a, b in zip(a11, a12)]


def pointset_product_angles(ps_a: SpherePointSet, alpha, ps_b: SpherePointSet,
                            beta) -> np.ndarray:
    """Sorted class angles of all |A|*|B| pairwise products."""
    a1, b1 = class_entries(ps_a, alpha)
    a2, b2 = class_entries(ps_b, beta)
    out = np.empty(a1.size * a2.size)
    block = max(1, (1 << 22) // max(1, a2.size))
    for i0 in range(0, a1.size, block):
        sl = slice(i0, min(i0 + block, a1.size))
        p11 = np.outer(a1[sl], a2) - np.outer(b1[sl], np.conj(b2))
        out[sl.start * a2.size : sl.stop * a2.size] = np.arccos(
            np.clip(p11.real, -1.0, 1.0)
        ).ravel()
    out.sort()
    return out


def deterministic_product_measure(ps_a: SpherePointSet, alpha,
                                  ps_b: SpherePointSet, beta,
                                  bins=200) -> Histogram:
    """Histogram of the full pairwise product-angle table over the support."""
    if len(ps_a) < 1 or len(ps_b) < 1:
        raise InvalidParams("point sets must be nonempty")
    angles = pointset_product_angles(ps_a, alpha, ps_b, beta)
    support = conj_product_density(alpha, beta).support
    return Histogram.from_samples(angles, support.lo, support.hi, bins=bins)


def random_rotation(rng) -> np.ndarray:
    """Haar-random rotation matrix from a uniform unit quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


def rotate_pointset(ps: SpherePointSet, rotation) -> SpherePointSet:
    """Apply a rotation matrix; the method tag is preserved."""
    pts = ps.points @ np.asarray(rotation, dtype=float).T
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    return SpherePointSet(pts, ps.method)
