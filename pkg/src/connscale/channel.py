"""Path loss, channel-gain distributions and samplers.

Three gain models are covered: ``|h|^2 ~ Exp(1)`` for SISO Rayleigh links,
the squared Frobenius norm of an ``n x m`` Gaussian channel for orthogonal
STBC (Gamma(mn, 1)), and the largest eigenvalue of the complex Wishart matrix
``H^H H`` for MIMO-MRC.  Channel entries have unit *total* variance, i.e.
``0.5`` per real dimension.
"""

from __future__ import annotations

import functools
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

_EPS = 1e-15
_FPMIN = sys.float_info.min / _EPS
_MAXIT = 100_000

DEFAULT_MRC_SAMPLES = 100_000
MRC_GRID_POINTS = 2048
MRC_UPPER_QUANTILE = 0.9999
# elements of H per sampling chunk; bounds memory at ~64 MB of complex128
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class ChannelParams:
    """Link-budget parameters.

    ``beta`` is inversely proportional to transmit power, so halving it
    doubles ``P_T``.  ``threshold`` is the SNR threshold.
    """

    eta: float
    epsilon: float = 1e-6
    beta: float = 1.0
    threshold: float = 1.0
    dim: int = 2

    def __post_init__(self):
        if not self.eta >= 2:
            raise ParameterError(f"path-loss exponent must satisfy eta >= 2, got {self.eta}")
        if not self.epsilon > 0:
            raise ParameterError(f"near-field regulariser must satisfy epsilon > 0, got {self.epsilon}")
        if not self.beta > 0:
            raise ParameterError(f"SNR scale must satisfy beta > 0, got {self.beta}")
        if not self.threshold > 0:
            raise ParameterError(f"SNR threshold must be positive, got {self.threshold}")
        if self.dim not in (1, 2, 3):
            raise ParameterError(f"dimension must be 1, 2 or 3, got {self.dim}")

    @property
    def threshold_beta(self) -> float:
        return self.threshold * self.beta

    def connectivity_exponent(self) -> float:
        return self.dim / self.eta


@dataclass(frozen=True)
class AntennaScheme:
    """SISO, diversity coding (orthogonal STBC) or beamforming (MIMO-MRC)."""

    kind: str
    m: int = 1
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("siso", "dc", "bf"):
            raise ParameterError(f"scheme kind must be siso, dc or bf, got {self.kind!r}")
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise ParameterError(f"antenna counts must be positive integers, got m={self.m}, n={self.n}")
        if self.kind == "siso" and (self.m, self.n) != (1, 1):
            raise ParameterError("SISO scheme must have m = n = 1")

    @classmethod
    def siso(cls):
        return cls("siso")

    @classmethod
    def dc(cls, m, n):
        return cls("dc", m, n)

    @classmethod
    def bf(cls, m, n):
        return cls("bf", m, n)

    @property
    def y(self) -> float:
        return self.m / self.n

    def zeta(self) -> int:
        """Code-rate factor entering the STBC post-processing SNR."""
        if self.kind == "dc" and self.m > 2:
            return 2
        return 1

    def rate_zeta(self) -> int:
        """Rate factor for the mutual-information metric: 2 only for STBC with m > 2."""
        return self.zeta()

    def describe(self) -> str:
        if self.kind == "siso":
            return "siso"
        return f"{self.kind}(m={self.m},n={self.n})"


def path_gain(r, params: ChannelParams):
    """Regularised path gain ``1 / (epsilon + r**eta)``."""
    r = np.asarray(r, dtype=float)
    out = 1.0 / (params.epsilon + r**params.eta)
    return out if out.ndim else float(out)


_lgamma = np.vectorize(math.lgamma, otypes=[float])


def _gammainc_pq(a, x):
    """Regularised lower and upper incomplete gamma ``(P, Q)``.

    Series expansion for ``x < a + 1`` and a Lentz continued fraction
    otherwise; vectorised over broadcast ``a`` and ``x``.
    """
    a, x = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(x, dtype=float))
    if np.any(a <= 0) or np.any(np.isnan(a)):
        raise ParameterError("incomplete gamma requires a > 0")
    if np.any(x < 0):
        raise ParameterError("incomplete gamma requires x >= 0")
    a = a.ravel()
    x = x.ravel()
    p = np.zeros_like(x)
    q = np.ones_like(x)

    ser = (x > 0) & (x < a + 1)
    if ser.any():
        aa, xx = a[ser], x[ser]
        ap = aa.copy()
        term = 1.0 / aa
        total = term.copy()
        for _ in range(_MAXIT):
            ap += 1.0
            term *= xx / ap
            total += term
            if np.all(np.abs(term) < np.abs(total) * _EPS):
                break
        else:
            raise ArithmeticError("incomplete gamma series did not converge")
        pp = total * np.exp(-xx + aa * np.log(xx) - _lgamma(aa))
        p[ser] = pp
        q[ser] = 1.0 - pp

    cf = (x > 0) & ~ser
    if cf.any():
        aa, xx = a[cf], x[cf]
        b = xx + 1.0 - aa
        c = np.full_like(xx, 1.0 / _FPMIN)
        d = 1.0 / b
        h = d.copy()
        for i in range(1, _MAXIT):
            an = -i * (i - aa)
            b += 2.0
            d = an * d + b
            d[np.abs(d) < _FPMIN] = _FPMIN
            c = b + an / c
            c[np.abs(c) < _FPMIN] = _FPMIN
            d = 1.0 / d
            delta = d * c
            h *= delta
            if np.all(np.abs(delta - 1.0) < _EPS):
                break
        else:
            raise ArithmeticError("incomplete gamma continued fraction did not converge")
        qq = np.exp(-xx + aa * np.log(xx) - _lgamma(aa)) * h
        q[cf] = qq
        p[cf] = 1.0 - qq
    return p, q


def _shaped(values, like):
    like = np.broadcast_shapes(*(np.shape(v) for v in like))
    out = values.reshape(like)
    return out if out.ndim else float(out)


def lower_incomplete_gamma_regularized(a, x):
    """``gamma(a, x) / Gamma(a)``, the Gamma(a, 1) CDF at ``x``."""
    p, _ = _gammainc_pq(a, x)
    return _shaped(p, (a, x))


def upper_incomplete_gamma_regularized(a, x):
    """``Gamma(a, x) / Gamma(a)``, computed directly so small tails keep precision."""
    _, q = _gammainc_pq(a, x)
    return _shaped(q, (a, x))


def gain_cdf_stbc(x, m: int, n: int):
    """CDF of ``||H||_F^2`` for an ``n x m`` unit-variance Rayleigh channel."""
    return lower_incomplete_gamma_regularized(m * n, x)


def gain_sf_stbc(x, m: int, n: int):
    return upper_incomplete_gamma_regularized(m * n, x)


def _chunk_size(m, n):
    return max(1, _CHUNK_ELEMENTS // (m * n))


def sample_lambda_max(m: int, n: int, rng_seed: int, count: int) -> np.ndarray:
    """Largest eigenvalue of ``H^H H`` for ``count`` independent ``n x m`` channels.

    Draws are generated in fixed-size chunks with child seeds spawned from
    ``rng_seed``, so a longer run reproduces every draw of a shorter one.
    """
    if m < 1 or n < 1 or count < 1:
        raise ParameterError(f"need m, n, count >= 1; got m={m}, n={n}, count={count}")
    chunk = _chunk_size(m, n)
    n_chunks = -(-count // chunk)
    children = np.random.SeedSequence(rng_seed).spawn(n_chunks)
    out = np.empty(count)
    k = min(m, n)
    for i, child in enumerate(children):
        size = min(chunk, count - i * chunk)
        rng = np.random.default_rng(child)
        # one contiguous block per draw, so a shorter chunk is a prefix of a longer one
        z = rng.standard_normal((size, 2, n, m))
        h = (z[:, 0] + 1j * z[:, 1]) * math.sqrt(0.5)
        if k == 1:
            lam = np.sum(h.real**2 + h.imag**2, axis=(1, 2))
        else:
            hh = np.conj(np.swapaxes(h, 1, 2))
            gram = hh @ h if m <= n else h @ hh
            lam = np.linalg.eigvalsh(gram)[:, -1]
        out[i * chunk:i * chunk + size] = lam
    return out


@functools.lru_cache(maxsize=64)
def _lambda_samples_cached(m, n, count, seed):
    s = sample_lambda_max(m, n, seed, count)
    s.setflags(write=False)
    return s


def lambda_samples(m: int, n: int, count: int = DEFAULT_MRC_SAMPLES, seed: int = 0) -> np.ndarray:
    """Memoised, read-only :func:`sample_lambda_max` draws."""
    return _lambda_samples_cached(int(m), int(n), int(count), int(seed))


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """Tabulated CDF with linear interpolation, 0 below the grid and 1 above it."""

    grid: np.ndarray
    values: np.ndarray
    sample_count: int
    seed: int
    m: int = 0
    n: int = 0

    def __post_init__(self):
        g, v = np.asarray(self.grid, float), np.asarray(self.values, float)
        if g.ndim != 1 or g.shape != v.shape or len(g) < 2:
            raise ParameterError("grid and values must be equal-length 1-D arrays")
        if np.any(np.diff(g) <= 0):
            raise ParameterError("CDF grid must be strictly increasing")
        if np.any(np.diff(v) < 0) or v[0] < 0 or v[-1] > 1:
            raise ParameterError("CDF values must be nondecreasing within [0, 1]")

    @classmethod
    def from_samples(cls, samples, seed=0, m=0, n=0, grid_points=MRC_GRID_POINTS,
                     upper_quantile=MRC_UPPER_QUANTILE):
        """Equiprobable grid on ``[q_0, q_upper]`` plus the sample maximum at ``F = 1``."""
        s = np.sort(np.asarray(samples, dtype=float))
        probs = np.append(np.linspace(0.0, upper_quantile, grid_points - 1), 1.0)
        grid = np.quantile(s, probs)
        keep = np.concatenate(([True], np.diff(grid) > 0))
        return cls(grid[keep], probs[keep], len(s), seed, m, n)

    def __call__(self, x):
        out = np.interp(x, self.grid, self.values, left=0.0, right=1.0)
        return out if np.ndim(out) else float(out)

    def survival(self, x):
        out = 1.0 - np.interp(x, self.grid, self.values, left=0.0, right=1.0)
        return out if np.ndim(out) else float(out)

    def quantile(self, p):
        return float(np.interp(p, self.values, self.grid))

    def to_csv(self, path_or_file) -> None:
        lines = ["x,cdf"] + [f"{x:.12g},{f:.12g}" for x, f in zip(self.grid, self.values)]
        text = "\n".join(lines) + "\n"
        if hasattr(path_or_file, "write"):
            path_or_file.write(text)
        else:
            with open(path_or_file, "w") as fh:
                fh.write(text)

    @classmethod
    def from_csv(cls, path, sample_count=0, seed=0, m=0, n=0):
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(data[:, 0], data[:, 1], sample_count, seed, m, n)


@functools.lru_cache(maxsize=64)
def _mrc_cdf_cached(m, n, sample_count, seed):
    return EmpiricalCdf.from_samples(lambda_samples(m, n, sample_count, seed), seed, m, n)


def gain_cdf_mrc(m: int, n: int, sample_count: int = DEFAULT_MRC_SAMPLES, seed: int = 0) -> EmpiricalCdf:
    """Empirical CDF of the MIMO-MRC gain ``lambda_max(H^H H)``, memoised per arguments."""
    if sample_count < 10_000:
        raise ParameterError(f"MRC CDF needs at least 10^4 samples, got {sample_count}")
    return _mrc_cdf_cached(int(m), int(n), int(sample_count), int(seed))
