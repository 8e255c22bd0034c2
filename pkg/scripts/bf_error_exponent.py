"""Growth of the beamforming error term |exact - step| with n at m = n.

Fits the log-log slope and compares it with C - 2/3.
"""

import argparse
import math

import numpy as np

from connscale.channel import ChannelParams
from connscale.mass import mass_bf_asymptotic, mass_bf_error_term


def fit(eta, ns, samples, d=3):
    params = ChannelParams(eta=eta, dim=d)
    omega = 4 * math.pi
    errs = []
    for n in ns:
        e = mass_bf_error_term(n, n, params, omega, d, samples, seed=n)
        rel = e.value / mass_bf_asymptotic(omega, d, eta, 1.0, n, 1.0).value
        errs.append(abs(e.value))
        print(f"eta={eta:g} n={n}: error {e.value:.6g} +- {e.error_estimate:.2g}, relative {rel:+.4f}")
    return np.polyfit(np.log(ns), np.log(errs), 1)[0]


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--etas", type=float, nargs="+", default=[3.0, 2.0])
    ap.add_argument("--ns", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    ap.add_argument("--samples", type=int, default=10_000)
    args = ap.parse_args()
    for eta in args.etas:
        C = 3 / eta
        print(f"C={C:g}: slope {fit(eta, args.ns, args.samples):.3f}, expected {C - 2 / 3:.3f}")
