"""Full-connectivity probability: isolated-node approximation and soft RGG simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .errors import DomainError
from .geometry import Domain, sample_uniform, volume
from .mass import box_masses_grid, mass_spatial


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.components = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.components -= 1
        return True


@dataclass(frozen=True, eq=False)
class NetworkRealization:
    """Node positions plus the sampled links, stored as an upper-triangle edge list."""

    points: np.ndarray
    edges: np.ndarray
    seed: int

    @property
    def size(self) -> int:
        return len(self.points)

    def adjacency(self) -> np.ndarray:
        n = self.size
        adj = np.zeros((n, n), dtype=bool)
        if len(self.edges):
            adj[self.edges[:, 0], self.edges[:, 1]] = True
            adj[self.edges[:, 1], self.edges[:, 0]] = True
        return adj

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.size)


@dataclass(frozen=True)
class PfcEstimate:
    value: float
    method: str
    samples: int
    std_error: float
    raw_value: float | None = None


def _pair_indices(n):
    return np.triu_indices(n, k=1)


def simulate_realization(N: int, domain: Domain, H, seed) -> NetworkRealization:
    """Uniform nodes, each unordered pair linked independently with probability ``H(r_ij)``."""
    if N < 2:
        raise DomainError(f"a network realization needs N >= 2 nodes, got {N}")
    rng = np.random.default_rng(seed)
    points = sample_uniform(domain, N, rng)
    probs = np.asarray(H(pdist(points)), dtype=float)
    linked = rng.random(len(probs)) < probs
    i, j = _pair_indices(N)
    edges = np.column_stack([i[linked], j[linked]])
    return NetworkRealization(points, edges, seed)


def is_fully_connected(net: NetworkRealization) -> bool:
    n = net.size
    if n <= 1:
        return True
    uf = UnionFind(n)
    for a, b in net.edges:
        if uf.union(int(a), int(b)) and uf.components == 1:
            return True
    return uf.components == 1


@dataclass(frozen=True)
class EnsembleSummary:
    """Per-trial outcomes of a batch of independent realizations."""

    connected: np.ndarray
    has_isolated: np.ndarray
    mean_degree: np.ndarray

    @property
    def trials(self) -> int:
        return len(self.connected)


def _trial_seeds(seed, trials):
    return np.random.SeedSequence(seed).spawn(trials)


def run_ensemble(N: int, domain: Domain, H, trials: int, seed: int) -> EnsembleSummary:
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    connected = np.empty(trials, dtype=bool)
    isolated = np.empty(trials, dtype=bool)
    mean_deg = np.empty(trials)
    for t, child in enumerate(_trial_seeds(seed, trials)):
        net = simulate_realization(N, domain, H, child)
        deg = net.degrees()
        connected[t] = is_fully_connected(net)
        isolated[t] = bool(np.any(deg == 0))
        mean_deg[t] = deg.mean()
    return EnsembleSummary(connected, isolated, mean_deg)


def _binomial(hits: np.ndarray, method: str) -> PfcEstimate:
    k = len(hits)
    p = float(np.mean(hits))
    return PfcEstimate(p, method, k, math.sqrt(p * (1.0 - p) / k))


def simulate_pfc(N: int, domain: Domain, H, trials: int, seed: int) -> PfcEstimate:
    """Fraction of fully connected realizations, with binomial standard error."""
    return _binomial(run_ensemble(N, domain, H, trials, seed).connected, "simulation")


def isolation_probability(N: int, domain: Domain, H, trials: int, seed: int) -> PfcEstimate:
    """Fraction of realizations with at least one degree-zero node.

    Uses the same per-trial seeds as :func:`simulate_pfc`, so the two
    estimates are paired realization by realization.
    """
    return _binomial(run_ensemble(N, domain, H, trials, seed).has_isolated, "isolation")


def _grid_order(domain, order):
    return order or {1: 64, 2: 24, 3: 12}[domain.dim]


def _outer_masses(domain, H, outer_samples, inner_samples, seed, inner, grid_order):
    if inner == "auto":
        inner = "grid" if domain.kind == "box" else "mc"
    outer_seq, inner_seq = np.random.SeedSequence(seed).spawn(2)
    origins = sample_uniform(domain, outer_samples, outer_seq)
    if inner == "grid":
        order = _grid_order(domain, grid_order)
        batch = max(1, (1 << 22) // (2 * order) ** domain.dim)
        masses = np.concatenate([box_masses_grid(H, domain, origins[i:i + batch], order)
                                 for i in range(0, outer_samples, batch)])
    elif inner == "mc":
        children = inner_seq.spawn(outer_samples)
        masses = np.array([mass_spatial(H, domain, o, inner_samples, c).value
                           for o, c in zip(origins, children)])
    else:
        raise ValueError(f"unknown inner integrator {inner!r}")
    return origins, masses


def pfc_analytic(rho: float, domain: Domain, H, outer_samples: int = 4096,
                 inner_samples: int = 10_000, seed: int = 0, inner: str = "auto",
                 grid_order: int | None = None) -> PfcEstimate:
    """``1 - rho * int_V exp(-rho M(r)) dr`` by Monte Carlo over ``r``.

    The inner mass is a tensor Gauss-Legendre rule on boxes (``inner="grid"``)
    or :func:`mass_spatial` with ``inner_samples`` points (``inner="mc"``).
    ``raw_value`` keeps the unclamped estimate.
    """
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho}")
    vol = volume(domain)
    origins, masses = _outer_masses(domain, H, outer_samples, inner_samples, seed, inner, grid_order)
    integrand = np.exp(-rho * masses)
    iso = rho * vol * integrand.mean()
    se = rho * vol * integrand.std(ddof=1) / math.sqrt(outer_samples)
    raw = 1.0 - iso
    return PfcEstimate(min(max(raw, 0.0), 1.0), "analytic", outer_samples, se, raw)


def pfc_integrand_samples(rho: float, domain: Domain, H, outer_samples: int = 4096, seed: int = 0,
                          grid_order: int | None = None):
    """Origins and their ``exp(-rho M)`` values, for inspecting where isolation concentrates."""
    origins, masses = _outer_masses(domain, H, outer_samples, 0, seed, "grid", grid_order)
    return origins, np.exp(-rho * masses)


def mean_degree_prediction(N: int, domain: Domain, H, origins: int = 2000, seed: int = 0,
                           grid_order: int | None = None):
    """``(N - 1) E[M] / V`` and its standard error, averaging grid masses over uniform origins."""
    vol = volume(domain)
    pts = sample_uniform(domain, origins, seed)
    if domain.kind == "box":
        masses = box_masses_grid(H, domain, pts, _grid_order(domain, grid_order))
    else:
        children = np.random.SeedSequence(seed).spawn(origins)
        masses = np.array([mass_spatial(H, domain, o, 20_000, c).value for o, c in zip(pts, children)])
    factor = (N - 1) / vol
    return factor * masses.mean(), factor * masses.std(ddof=1) / math.sqrt(origins)
