"""Cross-module consistency checks run by ``connscale validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import AntennaScheme, ChannelParams, sample_lambda_max
from .connectivity import ConnectionFunction
from .geometry import full_solid_angle, unit_box
from .global_connectivity import pfc_analytic, simulate_pfc
from .mass import (
    mass_bf_asymptotic,
    mass_dc_asymptotic,
    mass_dc_closed,
    mass_leading_siso,
    mass_radial,
)

EXPONENTS = (3 / 5, 3 / 4, 1.0, 3 / 2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def check_power_law(tol: float = 1e-3) -> CheckResult:
    """Halving beta multiplies every mass form by ``2**C``."""
    d = 3
    omega = full_solid_angle(d)
    worst = 0.0
    for C in EXPONENTS:
        eta = d / C
        forms = [
            lambda tb: mass_leading_siso(omega, d, eta, tb).value,
            lambda tb: mass_dc_closed(omega, d, eta, tb, 3, 4).value,
            lambda tb: mass_dc_asymptotic(omega, d, eta, tb, 3, 4).value,
            lambda tb: mass_bf_asymptotic(omega, d, eta, tb, 4, 0.5).value,
            lambda tb: mass_radial(ConnectionFunction(
                AntennaScheme.dc(2, 2), ChannelParams(eta, 1e-6, tb, 1.0, d)), omega, d).value,
        ]
        for f in forms:
            ratio = f(0.5) / f(1.0)
            worst = max(worst, abs(ratio / 2**C - 1.0))
    return CheckResult("power-law scaling", worst <= tol, f"max |ratio/2^C - 1| = {worst:.3g} (tol {tol:g})")


def stirling_ratios(C: float, mns=(16, 64, 256, 1024, 4096)):
    """``|closed/asymptotic - 1| * mn`` for the STBC mass with ``m = 1``."""
    out = []
    for mn in mns:
        closed = mass_dc_closed(1.0, 3, 3 / C, 1.0, 1, mn).value
        asym = mass_dc_asymptotic(1.0, 3, 3 / C, 1.0, 1, mn).value
        out.append(abs(closed / asym - 1.0) * mn)
    return out


def check_stirling() -> CheckResult:
    ok = True
    spans = []
    for C in EXPONENTS:
        if C == 1.0:
            continue  # Gamma(mn + 1)/Gamma(mn) = mn: the ratio is exactly 1
        r = stirling_ratios(C)
        lo, hi = min(r), max(r)
        ok &= r[0] / 3 <= lo and hi <= 3 * r[0]
        spans.append(f"C={C:g}:[{lo:.3g},{hi:.3g}]")
    return CheckResult("Stirling convergence", ok, " ".join(spans))


def edge_concentration(y: float, ns, draws: int, seed: int):
    """Mean and standard deviation of ``lambda_max / n`` at ``m = y n``."""
    out = []
    for k, n in enumerate(ns):
        m = max(1, round(y * n))
        lam = sample_lambda_max(m, n, seed + k, draws) / n
        out.append((n, m, float(lam.mean()), float(lam.std(ddof=1))))
    return out


def check_edge_concentration(ns=(16, 64, 256), draws: int = 200, seed: int = 0) -> CheckResult:
    """Bias of ``lambda_max / n`` shrinks with n and is within 5% at the largest n; spread shrinks."""
    ok = True
    parts = []
    for y in (0.25, 1.0):
        rows = edge_concentration(y, ns, draws, seed)
        bias = [abs(mean / (1.0 + math.sqrt(m / n)) ** 2 - 1.0) for n, m, mean, _ in rows]
        sds = [r[3] for r in rows]
        ok &= bias[-1] <= 0.05
        ok &= all(b < a for a, b in zip(bias, bias[1:]))
        ok &= all(b < a for a, b in zip(sds, sds[1:]))
        parts.append(f"y={y:g}: |bias| " + ",".join(f"{b:.3f}" for b in bias))
    return CheckResult("largest-eigenvalue concentration", ok, "; ".join(parts))


def check_pfc(trials: int = 300, seed: int = 0, N: int = 200, beta: float = 52.0) -> CheckResult:
    params = ChannelParams(eta=2.0, epsilon=1e-6, beta=beta, dim=2)
    H = ConnectionFunction(AntennaScheme.siso(), params)
    dom = unit_box(2)
    an = pfc_analytic(N, dom, H, outer_samples=8192, seed=seed)
    sim = simulate_pfc(N, dom, H, trials, seed + 1)
    se = math.hypot(an.std_error, sim.std_error)
    tol = max(0.03, 4 * se)
    gap = abs(an.value - sim.value)
    return CheckResult("isolated-node P_fc vs simulation", gap <= tol,
                       f"analytic={an.value:.4f} sim={sim.value:.4f} gap={gap:.4f} tol={tol:.4f}")


def run_all(seed: int = 0, trials: int = 300, draws: int = 200):
    return [
        check_power_law(),
        check_stirling(),
        check_edge_concentration(draws=draws, seed=seed),
        check_pfc(trials=trials, seed=seed),
    ]
