"""Pairwise connection probabilities ``H(r)``.

Every fading-based connection function has the form
``H(r) = S(a * (epsilon + r**eta))`` where ``S`` is the survival function of
the channel gain and ``a`` folds together threshold, ``beta`` and any
code-rate normalisation.  Exposing ``gain_scale`` and ``gain_survival``
lets the radial mass integral change variables to the gain axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .channel import (
    AntennaScheme,
    ChannelParams,
    EmpiricalCdf,
    gain_cdf_mrc,
    upper_incomplete_gamma_regularized,
)
from .errors import ConfigError, ParameterError


def rate_threshold(rate: float, zeta: int = 1) -> float:
    """SNR threshold equivalent to a mutual-information target ``zeta * rate`` bits."""
    if not rate > 0:
        raise ParameterError(f"target rate must be positive, got {rate}")
    return 2.0 ** (zeta * rate) - 1.0


def _scalar_or_array(out):
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True, eq=False)
class ConnectionFunction:
    """``r -> H(r)`` for one antenna scheme under the SNR or rate outage metric."""

    scheme: AntennaScheme
    params: ChannelParams
    metric: str = "snr"
    rate: float | None = None
    cdf: EmpiricalCdf | None = None

    def __post_init__(self):
        if self.metric not in ("snr", "rate"):
            raise ParameterError(f"metric must be 'snr' or 'rate', got {self.metric!r}")
        if self.metric == "rate" and self.rate is None:
            raise ParameterError("rate metric needs a target rate")
        if self.scheme.kind == "bf":
            if self.cdf is None:
                object.__setattr__(self, "cdf", gain_cdf_mrc(self.scheme.m, self.scheme.n))
            elif (self.cdf.m, self.cdf.n) != (self.scheme.m, self.scheme.n):
                raise ConfigError(
                    f"MRC CDF was built for (m={self.cdf.m}, n={self.cdf.n}) "
                    f"but the scheme is (m={self.scheme.m}, n={self.scheme.n})"
                )

    def effective_threshold(self) -> float:
        if self.metric == "rate":
            return rate_threshold(self.rate, self.scheme.rate_zeta())
        return self.params.threshold

    @property
    def gain_scale(self) -> float:
        s = self.scheme
        a = self.effective_threshold() * self.params.beta
        if s.kind == "dc":
            a *= s.m / s.zeta()
        return a

    def gain_survival(self, x):
        s = self.scheme
        if s.kind == "siso":
            return _scalar_or_array(np.exp(-np.asarray(x, dtype=float)))
        if s.kind == "dc":
            return upper_incomplete_gamma_regularized(s.m * s.n, x)
        return self.cdf.survival(x)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.gain_survival(self.gain_scale * (self.params.epsilon + r**self.params.eta))

    def snr_equivalent(self) -> "ConnectionFunction":
        """The SNR-metric function with threshold replaced by the rate-equivalent one."""
        if self.metric == "snr":
            return self
        params = replace(self.params, threshold=self.effective_threshold())
        return ConnectionFunction(self.scheme, params, "snr", None, self.cdf)

    def describe(self) -> str:
        tag = f"rate(R={self.rate:g})" if self.metric == "rate" else f"snr(thr={self.params.threshold:g})"
        return f"{self.scheme.describe()}:{tag}"


@dataclass(frozen=True)
class StepConnection:
    """Large-n indicator approximation of the MIMO-MRC connection function.

    Links exist with certainty inside ``((1 + sqrt(y))**2 * n / (thr * beta))**(1/eta)``.
    The near-field regulariser plays no part.
    """

    m: int
    n: int
    params: ChannelParams

    @property
    def y(self) -> float:
        return self.m / self.n

    @property
    def cutoff(self) -> float:
        mu = (1.0 + math.sqrt(self.y)) ** 2 * self.n
        return (mu / self.params.threshold_beta) ** (1.0 / self.params.eta)

    def __call__(self, r):
        return _scalar_or_array(np.where(np.asarray(r, dtype=float) < self.cutoff, 1.0, 0.0))


@dataclass(frozen=True)
class ConstantConnection:
    """``H(r) = p`` for every distance; used for limiting cases and tests."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"connection probability must lie in [0, 1], got {self.p}")

    def __call__(self, r):
        return _scalar_or_array(np.full(np.shape(r), self.p))


def connection_function(scheme: AntennaScheme, params: ChannelParams, metric="snr",
                        rate=None, cdf=None) -> ConnectionFunction:
    return ConnectionFunction(scheme, params, metric, rate, cdf)


def pair_conn_siso(r, params: ChannelParams):
    """``exp(-thr * beta * (epsilon + r**eta))``."""
    r = np.asarray(r, dtype=float)
    return _scalar_or_array(np.exp(-params.threshold_beta * (params.epsilon + r**params.eta)))


def pair_conn_dc(r, m: int, n: int, params: ChannelParams):
    return ConnectionFunction(AntennaScheme("dc", m, n), params)(r)


def pair_conn_mrc(r, m: int, n: int, params: ChannelParams, cdf: EmpiricalCdf):
    return ConnectionFunction(AntennaScheme("bf", m, n), params, cdf=cdf)(r)


def pair_conn_mrc_step(r, m: int, n: int, params: ChannelParams):
    return StepConnection(m, n, params)(r)


def pair_conn_rate(r, scheme: AntennaScheme, params: ChannelParams, rate: float, cdf=None):
    return ConnectionFunction(scheme, params, "rate", rate, cdf)(r)
