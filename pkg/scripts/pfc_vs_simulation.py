"""Isolated-node P_fc against brute-force soft-RGG simulation on the unit square."""

import argparse

import numpy as np

from connscale.channel import AntennaScheme, ChannelParams
from connscale.connectivity import ConnectionFunction
from connscale.geometry import unit_box
from connscale.global_connectivity import isolation_probability, pfc_analytic, simulate_pfc


def sweep(beta, nodes, trials, seed):
    H = ConnectionFunction(AntennaScheme.siso(), ChannelParams(eta=2.0, beta=beta, dim=2))
    dom = unit_box(2)
    print("N,pfc_analytic,pfc_raw,pfc_sim,sim_se,isolation")
    for k, N in enumerate(nodes):
        an = pfc_analytic(N, dom, H, outer_samples=8192, seed=seed + 3 * k)
        sim = simulate_pfc(N, dom, H, trials, seed + 3 * k + 1)
        iso = isolation_probability(N, dom, H, trials, seed + 3 * k + 1)
        print(f"{N},{an.value:.6f},{an.raw_value:.6f},{sim.value:.4f},{sim.std_error:.4f},{iso.value:.4f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=52.0)
    ap.add_argument("--nodes", type=int, nargs="+", default=[100, 150, 200, 250, 300, 400])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sweep(args.beta, np.array(args.nodes), args.trials, args.seed)
