"""Size of the near-field correction M(eps) - M(0) for SISO and STBC links.

For SISO the mass factorises as M(0) exp(-thr*beta*eps), so the correction
is linear in eps whatever C is; STBC has a bounded gain density at zero and
behaves the same way.
"""

import argparse
import math
import sys

import numpy as np

from connscale.channel import AntennaScheme, ChannelParams
from connscale.connectivity import ConnectionFunction
from connscale.mass import mass_radial


def slopes(C, schemes, eps, d=3):
    eta = d / C
    out = {}
    for scheme in schemes:
        def M(e):
            H = ConnectionFunction(scheme, ChannelParams(eta=eta, epsilon=e, dim=d))
            return mass_radial(H, 4 * math.pi, d).value

        m0 = M(sys.float_info.min)
        diffs = [abs(M(e) - m0) for e in eps]
        out[scheme.describe()] = np.polyfit(np.log(eps), np.log(diffs), 1)[0]
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--exponents", type=float, nargs="+", default=[0.6, 0.75, 1.0, 1.5])
    args = ap.parse_args()
    eps = np.array([1e-1, 1e-2, 1e-3, 1e-4])
    schemes = [AntennaScheme.siso(), AntennaScheme.dc(2, 2), AntennaScheme.dc(4, 4)]
    for C in args.exponents:
        fitted = ", ".join(f"{k}: {v:.3f}" for k, v in slopes(C, schemes, eps).items())
        print(f"C={C:g} (min(C,1)={min(C, 1.0):g}): {fitted}")
