"""Mean of lambda_max / n against the spectral edge (1 + sqrt(y))^2.

Also prints the edge-plus-Tracy-Widom prediction
``(sqrt(m) + sqrt(n))^2 + (sqrt(m) + sqrt(n)) (1/sqrt(m) + 1/sqrt(n))^(1/3) E[TW2]``,
which accounts for the finite-n bias.
"""

import argparse
import math

from connscale.channel import sample_lambda_max

TW2_MEAN = -1.7710868074


def row(y, n, draws, seed):
    m = max(1, round(y * n))
    lam = sample_lambda_max(m, n, seed, draws) / n
    edge = (1 + math.sqrt(m / n)) ** 2
    s = math.sqrt(m) + math.sqrt(n)
    tw = (s * s + s * (1 / math.sqrt(m) + 1 / math.sqrt(n)) ** (1 / 3) * TW2_MEAN) / n
    print(f"y={y:g} n={n:4d} m={m:4d}: mean {lam.mean():.4f} sd {lam.std(ddof=1):.4f} "
          f"edge {edge:.4f} ({lam.mean() / edge - 1:+.3f}) tw {tw:.4f} ({lam.mean() / tw - 1:+.3f})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[16, 64, 256, 512])
    ap.add_argument("--draws", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for y in (0.25, 1.0):
        for n in args.ns:
            row(y, n, args.draws, args.seed + n)
