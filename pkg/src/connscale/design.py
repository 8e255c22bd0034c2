"""Design rules that undo boundary losses, and STBC vs MIMO-MRC comparisons.

A node on a boundary feature of solid angle ``omega`` loses the fraction
``omega / Omega`` of its connectivity mass.  Because every leading-order
mass scales like ``z**C`` in power or antenna count, the loss is recovered
by scaling ``z`` by ``(Omega/omega)**(1/C)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .channel import AntennaScheme, ChannelParams
from .connectivity import rate_threshold
from .errors import DomainError, ParameterError
from .geometry import full_solid_angle
from .mass import (
    mass_bf_asymptotic,
    mass_bf_numeric,
    mass_dc_asymptotic,
    mass_dc_closed,
)


def _check_omega(omega, d):
    full = full_solid_angle(d)
    if not 0 < omega <= full * (1 + 1e-12):
        raise DomainError(f"solid angle must lie in (0, {full:.12g}], got {omega}")
    return full


def reference_mass(d, eta, threshold_beta) -> float:
    """Interior SISO mass ``Omega Gamma(1 + C) / ((thr*beta)**C d)``."""
    C = d / eta
    return full_solid_angle(d) * math.gamma(1.0 + C) / (threshold_beta**C * d)


@dataclass(frozen=True)
class DesignTarget:
    reference_mass: float
    feature_omega: float
    exponent: float
    dim: int

    def __post_init__(self):
        if not self.reference_mass > 0:
            raise ParameterError("reference mass must be positive")
        _check_omega(self.feature_omega, self.dim)

    @classmethod
    def for_feature(cls, omega, d, eta, threshold_beta):
        return cls(reference_mass(d, eta, threshold_beta), omega, d / eta, d)


def power_for_boundary(omega: float, C: float, P_T0: float = 1.0, d: int = 2) -> float:
    """Transmit power ``(Omega/omega)**(1/C) P_T0`` restoring the interior mass."""
    full = _check_omega(omega, d)
    return (full / omega) ** (1.0 / C) * P_T0


def antennas_for_boundary(omega: float, C: float, scheme_kind: str, y: float = 0.0,
                          zeta: int = 1, d: int = 2) -> float:
    """Receive-antenna count ``((Omega/omega) Gamma(1 + C))**(1/C) / w`` as a real number.

    ``w = zeta`` for diversity coding and ``w = (1 + sqrt(y))**2`` for
    beamforming.  Round up with :func:`ceil_antennas`.
    """
    full = _check_omega(omega, d)
    if scheme_kind == "dc":
        if zeta not in (1, 2):
            raise ParameterError(f"STBC rate factor must be 1 or 2, got {zeta}")
        w = float(zeta)
    elif scheme_kind == "bf":
        if y < 0:
            raise ParameterError(f"antenna ratio must be non-negative, got {y}")
        w = (1.0 + math.sqrt(y)) ** 2
    else:
        raise ParameterError(f"scheme kind must be 'dc' or 'bf', got {scheme_kind!r}")
    return (full / omega * math.gamma(1.0 + C)) ** (1.0 / C) / w


def ceil_antennas(n: float) -> int:
    # guard against 2.0000000000000004 -> 3
    return max(1, math.ceil(n - 1e-9))


def critical_ratio() -> float:
    """``(sqrt(2) - 1)**2``: the ratio m/n at which leading-order masses tie."""
    return 3.0 - 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class SchemeComparison:
    m: int
    n: int
    metric: str
    dc_mass: float
    bf_mass: float
    bf_std_err: float
    dc_leading: float
    bf_leading: float
    preferred: str
    leading_order_ratio: float

    def as_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "metric": self.metric,
            "dc_mass": self.dc_mass, "bf_mass": self.bf_mass, "bf_std_err": self.bf_std_err,
            "dc_leading": self.dc_leading, "bf_leading": self.bf_leading,
            "preferred": self.preferred, "leading_order_ratio": self.leading_order_ratio,
        }


def compare_schemes(m: int, n: int, params: ChannelParams, metric: str = "snr", rate: float | None = None,
                    omega: float | None = None, samples: int = 100_000, seed: int = 0) -> SchemeComparison:
    """Finite-(m, n) STBC mass (closed form) against MIMO-MRC mass (Wishart Monte Carlo).

    Under ``metric="rate"`` each scheme's SNR threshold becomes
    ``2**(zeta*R) - 1`` with its own rate factor.
    """
    d, eta = params.dim, params.eta
    omega = full_solid_angle(d) if omega is None else omega
    dc, bf = AntennaScheme.dc(m, n), AntennaScheme.bf(m, n)
    if metric == "snr":
        thr_dc = thr_bf = params.threshold
    elif metric == "rate":
        if rate is None:
            raise ParameterError("rate metric needs a target rate")
        thr_dc = rate_threshold(rate, dc.rate_zeta())
        thr_bf = rate_threshold(rate, bf.rate_zeta())
    else:
        raise ParameterError(f"metric must be 'snr' or 'rate', got {metric!r}")
    tb_dc, tb_bf = thr_dc * params.beta, thr_bf * params.beta
    dc_mass = mass_dc_closed(omega, d, eta, tb_dc, m, n).value
    bf_res = mass_bf_numeric(omega, d, replace(params, threshold=thr_bf), m, n, samples, seed)
    dc_lead = mass_dc_asymptotic(omega, d, eta, tb_dc, m, n).value
    bf_lead = mass_bf_asymptotic(omega, d, eta, tb_bf, n, m / n).value
    preferred = "beamforming" if bf_res.value > dc_mass else "diversity-coding"
    return SchemeComparison(m, n, metric, dc_mass, bf_res.value, bf_res.error_estimate,
                            dc_lead, bf_lead, preferred, dc_lead / bf_lead)


def leading_order_preference(y: float, zeta: int = 2) -> str:
    """Scheme favoured by the leading-order masses at antenna ratio ``y``."""
    w_bf = (1.0 + math.sqrt(y)) ** 2
    if math.isclose(w_bf, zeta, rel_tol=1e-12):
        return "tie"
    return "beamforming" if w_bf > zeta else "diversity-coding"
