"""Convex network domains, uniform node placement and boundary solid angles.

Boxes are anchored at the origin, ``[0, s_1] x ... x [0, s_d]``; balls are
centred at the origin.  A wedge is an unbounded cone of given opening solid
angle and exists only to carry ``omega`` into radial mass integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

BOUNDARY_TOL = 1e-12
SUPPORTED_DIMS = (1, 2, 3)


def full_solid_angle(d: int) -> float:
    """Full solid angle ``2 pi^(d/2) / Gamma(d/2)`` of the unit sphere in R^d."""
    if int(d) != d or d < 1:
        raise DomainError(f"invalid dimension {d!r}; need integer d >= 1")
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def corner_solid_angle_ngon(n_sides: int) -> float:
    """Interior angle at a vertex of a regular planar polygon."""
    if int(n_sides) != n_sides or n_sides < 3:
        raise DomainError(f"invalid polygon: n_sides={n_sides!r}, need >= 3")
    return math.pi * (1.0 - 2.0 / n_sides)


@dataclass(frozen=True)
class Domain:
    kind: str
    dim: int
    sides: tuple[float, ...] = ()
    radius: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        if self.dim not in SUPPORTED_DIMS:
            raise DomainError(f"dimension must be one of {SUPPORTED_DIMS}, got {self.dim!r}")
        if self.kind == "box":
            if len(self.sides) != self.dim:
                raise DomainError(f"box needs {self.dim} side lengths, got {len(self.sides)}")
            if any(not s > 0 for s in self.sides):
                raise DomainError(f"box side lengths must be positive: {self.sides}")
        elif self.kind == "ball":
            if not self.radius > 0:
                raise DomainError(f"ball radius must be positive, got {self.radius}")
        elif self.kind == "wedge":
            full = full_solid_angle(self.dim)
            if not 0 < self.omega <= full * (1 + 1e-15):
                raise DomainError(f"wedge solid angle must lie in (0, {full}], got {self.omega}")
        else:
            raise DomainError(f"unknown domain kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind != "wedge"

    def describe(self) -> str:
        if self.kind == "box":
            return "box(" + ",".join(f"{s:g}" for s in self.sides) + ")"
        if self.kind == "ball":
            return f"ball(r={self.radius:g},d={self.dim})"
        return f"wedge(omega={self.omega:.12g},d={self.dim})"


def box(*sides: float) -> Domain:
    if len(sides) == 1 and not np.isscalar(sides[0]):
        sides = tuple(sides[0])
    return Domain("box", len(sides), sides=tuple(float(s) for s in sides))


def unit_box(d: int) -> Domain:
    return box(*([1.0] * d))


def ball(radius: float, dim: int) -> Domain:
    return Domain("ball", dim, radius=float(radius))


def wedge(omega: float, dim: int) -> Domain:
    return Domain("wedge", dim, omega=float(omega))


def _require_finite(domain: Domain, what: str) -> None:
    if not domain.is_finite:
        raise DomainError(f"{what} is undefined for an infinite-volume wedge domain")


def volume(domain: Domain) -> float:
    _require_finite(domain, "volume")
    if domain.kind == "box":
        return float(math.prod(domain.sides))
    d = domain.dim
    return full_solid_angle(d) * domain.radius**d / d


def diameter(domain: Domain) -> float:
    _require_finite(domain, "diameter")
    if domain.kind == "box":
        return math.sqrt(sum(s * s for s in domain.sides))
    return 2.0 * domain.radius


def sample_uniform(domain: Domain, count: int, rng_seed: int) -> np.ndarray:
    """Draw ``count`` i.i.d. uniform points (a binomial point process).

    Returns an array of shape ``(count, d)``.  Balls are sampled by rejection
    from the bounding cube.
    """
    _require_finite(domain, "uniform sampling")
    if count < 0:
        raise DomainError(f"count must be non-negative, got {count}")
    rng = np.random.default_rng(rng_seed)
    d = domain.dim
    if domain.kind == "box":
        return rng.random((count, d)) * np.asarray(domain.sides)
    accept_rate = volume(domain) / (2.0 * domain.radius) ** d
    out = np.empty((count, d))
    filled = 0
    while filled < count:
        batch = int((count - filled) / accept_rate * 1.1) + 16
        cand = (rng.random((batch, d)) * 2.0 - 1.0) * domain.radius
        keep = cand[np.einsum("ij,ij->i", cand, cand) <= domain.radius**2]
        take = min(len(keep), count - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out


def contains(domain: Domain, point, tol: float = BOUNDARY_TOL) -> bool:
    p = np.asarray(point, dtype=float)
    if p.shape != (domain.dim,):
        raise DomainError(f"point has shape {p.shape}, domain dimension is {domain.dim}")
    if domain.kind == "box":
        return bool(np.all(p >= -tol) and np.all(p <= np.asarray(domain.sides) + tol))
    if domain.kind == "ball":
        return float(np.linalg.norm(p)) <= domain.radius + tol
    return True


def distance_to_boundary(domain: Domain, points) -> np.ndarray:
    """Euclidean distance from each (interior) point to the domain boundary."""
    _require_finite(domain, "distance to boundary")
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if domain.kind == "box":
        sides = np.asarray(domain.sides)
        return np.minimum(p, sides - p).min(axis=1)
    return domain.radius - np.linalg.norm(p, axis=1)


def boundary_solid_angle(domain: Domain, point, tol: float = BOUNDARY_TOL) -> float:
    """Solid angle available to neighbours as seen from ``point``.

    On a box a point lying on ``k`` mutually orthogonal faces sees
    ``Omega / 2**k``; on the sphere surface of a ball it sees ``Omega / 2``.
    """
    if domain.kind == "wedge":
        return domain.omega
    if not contains(domain, point, tol):
        raise DomainError(f"point {tuple(np.asarray(point, dtype=float))} lies outside {domain.describe()}")
    full = full_solid_angle(domain.dim)
    p = np.asarray(point, dtype=float)
    if domain.kind == "box":
        sides = np.asarray(domain.sides)
        k = int(np.sum((np.abs(p) <= tol) | (np.abs(p - sides) <= tol)))
        return full / 2**k
    if abs(float(np.linalg.norm(p)) - domain.radius) <= tol:
        return full / 2.0
    return full


def box_feature_point(domain: Domain, feature: str) -> np.ndarray:
    """A representative point on a named box feature: interior, face, edge or corner."""
    if domain.kind != "box":
        raise DomainError("named features are only defined for boxes")
    k = {"interior": 0, "face": 1, "edge": 2, "corner": 3}.get(feature)
    if k is None or k > domain.dim:
        raise DomainError(f"feature {feature!r} not available in dimension {domain.dim}")
    p = np.asarray(domain.sides) / 2.0
    p[:k] = 0.0
    return p
