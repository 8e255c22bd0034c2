"""Connectivity mass against receive antennas in a unit cube for fixed m = 2 and for m near y_c n.

Writes one CSV per panel: fixed m = 2, and m = round(y_c n).
"""

import argparse
from pathlib import Path

from connscale.cli import main


def run(out_dir: Path, samples: int, seed: int):
    out_dir.mkdir(parents=True, exist_ok=True)
    panels = {"fixed_m2": "2", "critical_ratio": "yc"}
    for name, m in panels.items():
        cfg = out_dir / f"{name}.cfg"
        cfg.write_text(f"[domain]\nsides = 1,1,1\n[sweep]\nn = 2:16\nm = {m}\netas = 2,3,4,5\n")
        csv = out_dir / f"{name}.csv"
        main(["mass-curve", "--config", str(cfg), "--samples", str(samples), "--seed", str(seed),
              "--out", str(csv)])
        print(f"wrote {csv}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out-dir", type=Path, default=Path("results/mass_curves"))
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.out_dir, args.samples, args.seed)
