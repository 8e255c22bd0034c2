"""Connectivity mass: spatial integrals, radial boundary integrals and closed forms.

The mass ``M(r_i) = int_V H(|r_i - r_j|) dr_j`` measures how many receiver
positions a node at ``r_i`` reaches; ``(N - 1) M / V`` is its expected degree.
Near a boundary feature of solid angle ``omega`` it reduces to the radial form
``omega * int_0^inf r**(d-1) H(r) dr``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .channel import ChannelParams, EmpiricalCdf, lambda_samples
from .connectivity import ConnectionFunction
from .errors import DomainError, NumericalError
from .geometry import Domain, contains, sample_uniform, volume

TRUNCATION_LEVEL = 1e-12
DEFAULT_SPATIAL_SAMPLES = 1_000_000
_CHUNK = 1 << 18


@dataclass(frozen=True)
class MassResult:
    value: float
    method: str
    error_estimate: float = 0.0

    def __float__(self):
        return float(self.value)


def _zeta(m) -> int:
    return 2 if m > 2 else 1


# -- spatial integrals over finite domains -------------------------------------------


def mass_spatial(H, domain: Domain, origin, samples: int = DEFAULT_SPATIAL_SAMPLES,
                 seed: int = 0) -> MassResult:
    """Monte Carlo estimate of ``int_V H(|r - origin|) dr`` with its standard error."""
    if not domain.is_finite:
        raise DomainError("spatial mass needs a finite domain; use mass_radial for wedges")
    origin = np.asarray(origin, dtype=float)
    if not contains(domain, origin):
        raise DomainError(f"origin {tuple(origin)} lies outside {domain.describe()}")
    pts = sample_uniform(domain, samples, seed)
    total = 0.0
    total_sq = 0.0
    for lo in range(0, samples, _CHUNK):
        h = np.asarray(H(np.linalg.norm(pts[lo:lo + _CHUNK] - origin, axis=1)), dtype=float)
        total += h.sum()
        total_sq += np.dot(h, h)
    vol = volume(domain)
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / max(samples - 1, 1)
    return MassResult(vol * mean, "spatial-mc", vol * math.sqrt(var / samples))


def _axis_rules(lengths, origins, order):
    """Gauss-Legendre nodes/weights on ``[0, o]`` and ``[o, L]`` for a batch of origins."""
    x, w = np.polynomial.legendre.leggauss(order)
    half = (x + 1.0) / 2.0
    out = []
    for k, length in enumerate(lengths):
        o = origins[:, k:k + 1]
        nodes = np.concatenate([o * half, o + (length - o) * half], axis=1)
        weights = np.concatenate([o * w / 2.0, (length - o) * w / 2.0], axis=1)
        out.append((nodes - o, weights))
    return out


def box_masses_grid(H, domain: Domain, origins, order: int = 24) -> np.ndarray:
    """Tensor Gauss-Legendre masses for many origins in a box.

    Each axis is split at the origin coordinate so a kink of ``H`` at
    ``r = 0`` falls on a cell corner.
    """
    if domain.kind != "box":
        raise DomainError("grid quadrature is implemented for boxes only")
    origins = np.atleast_2d(np.asarray(origins, dtype=float))
    rules = _axis_rules(domain.sides, origins, order)
    batch = len(origins)
    if domain.dim == 1:
        (dx, wx), = rules
        return np.sum(H(np.abs(dx)) * wx, axis=1)
    if domain.dim == 2:
        (dx, wx), (dy, wy) = rules
        r = np.sqrt(dx[:, :, None] ** 2 + dy[:, None, :] ** 2)
        w = wx[:, :, None] * wy[:, None, :]
        return np.sum(np.asarray(H(r)).reshape(batch, -1) * w.reshape(batch, -1), axis=1)
    (dx, wx), (dy, wy), (dz, wz) = rules
    r = np.sqrt(dx[:, :, None, None] ** 2 + dy[:, None, :, None] ** 2 + dz[:, None, None, :] ** 2)
    w = wx[:, :, None, None] * wy[:, None, :, None] * wz[:, None, None, :]
    return np.sum(np.asarray(H(r)).reshape(batch, -1) * w.reshape(batch, -1), axis=1)


def mass_grid(H, domain: Domain, origin, order: int = 32) -> MassResult:
    origin = np.asarray(origin, dtype=float)
    if not contains(domain, origin):
        raise DomainError(f"origin {tuple(origin)} lies outside {domain.describe()}")
    coarse = box_masses_grid(H, domain, origin[None, :], order // 2)[0]
    fine = box_masses_grid(H, domain, origin[None, :], order)[0]
    return MassResult(float(fine), "spatial-grid", abs(fine - coarse))


# -- radial integrals near boundary features -----------------------------------------


def _check_quad(res, tol, what):
    # quad(full_output=1) appends a message to its result only when it reports a problem
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > 10 * tol * abs(value):
        raise NumericalError(f"{what} quadrature did not converge (abserr={abserr:.3g})",
                             partial_value=value, error_estimate=abserr)


def _cdf_segments_integral(cdf: EmpiricalCdf, shift: float, C: float) -> float:
    """``int_shift^inf (x - shift)**(C-1) * (1 - F(x)) dx`` for a piecewise-linear F, in closed form."""
    g = np.asarray(cdf.grid, dtype=float)
    s = 1.0 - np.asarray(cdf.values, dtype=float)
    total = 0.0
    if g[0] > shift:
        total += (g[0] - shift) ** C / C
    x0, x1 = g[:-1], g[1:]
    slope = (s[1:] - s[:-1]) / (x1 - x0)
    lo = np.maximum(x0, shift) - shift
    hi = np.maximum(x1, shift) - shift
    alpha = s[:-1] + slope * (shift - x0)

    def antider(t):
        return alpha * t**C / C + slope * t ** (C + 1) / (C + 1)

    total += float(np.sum(antider(hi) - antider(lo)))
    return total


def _survival_upper(survival, start):
    x = max(start, 1.0)
    for _ in range(200):
        if survival(x) < TRUNCATION_LEVEL:
            return x
        x *= 2.0
    raise NumericalError("connection function does not decay; radial mass diverges")


def mass_radial(H, omega: float, d: int, quad_tol: float = 1e-10) -> MassResult:
    """``omega * int_0^inf r**(d-1) H(r) dr`` by adaptive quadrature.

    For fading links, integrates on the gain axis: with ``x = a(eps + r**eta)``
    and ``u = (x - a*eps)**C`` the integrand becomes ``S(a*eps + u**(1/C))``,
    free of endpoint singularities for any ``C = d/eta``.  Tabulated MRC
    gain CDFs are integrated exactly segment by segment.
    """
    if isinstance(H, ConnectionFunction):
        eta = H.params.eta
        C = d / eta
        a = H.gain_scale
        shift = a * H.params.epsilon
        prefactor = omega / (d * a**C)
        if H.scheme.kind == "bf":
            value = prefactor * C * _cdf_segments_integral(H.cdf, shift, C)
            return MassResult(value, "radial-quadrature", 1e-12 * abs(value))
        x_hi = _survival_upper(H.gain_survival, shift + H.scheme.m * H.scheme.n)
        u_hi = (x_hi - shift) ** C
        peak = H.scheme.m * H.scheme.n - 1.0
        points = [(peak - shift) ** C] if shift < peak < x_hi else None

        def f(u):
            return H.gain_survival(shift + u ** (1.0 / C))

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            res = integrate.quad(f, 0.0, u_hi, epsabs=0.0, epsrel=quad_tol, limit=500,
                                 points=points, full_output=1)
        _check_quad(res, quad_tol, "radial mass")
        return MassResult(prefactor * res[0], "radial-quadrature", prefactor * res[1])

    cutoff = getattr(H, "cutoff", None)
    r_hi = _survival_upper(lambda r: float(H(r)), 1.0 if cutoff is None else cutoff * 1.5)
    points = [cutoff] if cutoff is not None and cutoff < r_hi else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        res = integrate.quad(lambda r: r ** (d - 1) * float(H(r)), 0.0, r_hi, epsabs=0.0,
                             epsrel=quad_tol, limit=500, points=points, full_output=1)
    _check_quad(res, quad_tol, "radial mass")
    return MassResult(omega * res[0], "radial-quadrature", omega * res[1])


# -- closed forms and power laws ---------------------------------------------------


def mass_leading_siso(omega, d, eta, threshold_beta) -> MassResult:
    """``omega * Gamma(C) / (eta * (thr*beta)**C)``: the epsilon -> 0 SISO mass."""
    C = d / eta
    value = math.exp(math.log(omega) + math.lgamma(C) - math.log(eta) - C * math.log(threshold_beta))
    return MassResult(value, "leading-power")


def mass_dc_closed(omega, d, eta, threshold_beta, m, n) -> MassResult:
    """STBC mass ``(omega/d) (zeta/(m thr beta))**C Gamma(mn + C) / Gamma(mn)`` in log space."""
    C = d / eta
    mn = m * n
    # poch keeps Gamma(mn + C)/Gamma(mn) accurate where a difference of lgammas cancels
    ratio = special.poch(mn, C)
    log_ratio = math.log(ratio) if math.isfinite(ratio) and ratio > 0 else math.lgamma(mn + C) - math.lgamma(mn)
    log_v = (math.log(omega / d) + C * (math.log(_zeta(m)) - math.log(m) - math.log(threshold_beta))
             + log_ratio)
    return MassResult(math.exp(log_v), "closed-form-dc")


def mass_dc_asymptotic(omega, d, eta, threshold_beta, m, n) -> MassResult:
    C = d / eta
    return MassResult((omega / d) * (_zeta(m) * n / threshold_beta) ** C, "asymptotic-dc")


def mass_bf_asymptotic(omega, d, eta, threshold_beta, n, y) -> MassResult:
    if y < 0:
        raise DomainError(f"antenna ratio must be non-negative, got {y}")
    C = d / eta
    return MassResult((omega / d) * ((1.0 + math.sqrt(y)) ** 2 * n / threshold_beta) ** C,
                      "asymptotic-bf")


def mass_bf_numeric(omega, d, params: ChannelParams, m: int, n: int,
                    samples: int = 100_000, seed: int = 0) -> MassResult:
    """Exact-distribution MIMO-MRC radial mass from Wishart draws.

    Uses ``int_0^inf r**(d-1) P(lam >= a(eps + r**eta)) dr = E[(lam/a - eps)_+**C] / d``,
    which is the radial integral against the raw empirical CDF and carries a
    standard error.
    """
    C = d / params.eta
    lam = lambda_samples(m, n, samples, seed)
    v = np.maximum(lam / params.threshold_beta - params.epsilon, 0.0) ** C
    scale = omega / d
    return MassResult(scale * float(v.mean()), "mrc-sample-mean",
                      scale * float(v.std(ddof=1)) / math.sqrt(len(v)))


def mass_bf_error_term(n, m, params: ChannelParams, omega, d, cdf_samples: int = 100_000,
                       seed: int = 0) -> MassResult:
    """Exact MRC mass minus the step-function mass ``(omega/d)(mu/(thr*beta))**C``."""
    exact = mass_bf_numeric(omega, d, params, m, n, cdf_samples, seed)
    step = mass_bf_asymptotic(omega, d, params.eta, params.threshold_beta, n, m / n)
    return MassResult(exact.value - step.value, "bf-error-term", exact.error_estimate)
