"""Command-line front end.

Subcommands write CSV tables (``%.12g`` numbers, one leading ``#`` comment
recording version, command, seed and every configured parameter) so that
identical inputs give byte-identical files.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from . import __version__
from .config import RunConfig, load_config, ngon_or_feature_omega, parse_domain_flag
from .connectivity import ConnectionFunction, StepConnection
from .design import (
    antennas_for_boundary,
    ceil_antennas,
    critical_ratio,
    power_for_boundary,
    reference_mass,
)
from .errors import ConnScaleError
from .geometry import diameter, full_solid_angle, volume
from .global_connectivity import pfc_analytic, simulate_pfc
from .mass import mass_bf_asymptotic, mass_bf_numeric, mass_dc_asymptotic, mass_dc_closed
from .validation import run_all

FLAG_KEYS = {
    "eta": ("channel", "eta"),
    "threshold": ("channel", "threshold"),
    "rate": ("channel", "rate"),
    "beta": ("channel", "beta"),
    "m": ("scheme", "m"),
    "n": ("scheme", "n"),
    "y": ("scheme", "y"),
    "scheme": ("scheme", "kind"),
    "seed": ("run", "seed"),
    "samples": ("run", "samples"),
    "trials": ("run", "trials"),
    "out": ("run", "out"),
}


def _num(x) -> str:
    return f"{x:.12g}"


class Table:
    def __init__(self, command: str, cfg: RunConfig, columns):
        self.buf = io.StringIO()
        self.buf.write(f"# connscale {__version__} command={command} seed={cfg.seed} {cfg.describe()}\n")
        self.buf.write(",".join(columns) + "\n")

    def row(self, *values):
        self.buf.write(",".join(v if isinstance(v, str) else _num(v) for v in values) + "\n")

    def text(self) -> str:
        return self.buf.getvalue()


def _emit(cfg: RunConfig, text: str):
    out = cfg.get("run", "out")
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConnScaleError(f"cannot write {out}: {exc.strerror}") from None


def _omega(cfg: RunConfig, d: int) -> float:
    omega = cfg.get("design", "omega")
    if omega is not None:
        return omega
    feature = cfg.get("design", "feature")
    if feature is not None:
        return ngon_or_feature_omega(feature, d)
    return full_solid_angle(d)


def cmd_mass_curve(cfg: RunConfig) -> int:
    """Connectivity mass against receive-antenna count, per path-loss exponent."""
    if cfg.get("domain", "sides") is None and cfg.get("domain", "kind") is None:
        cfg.set("domain", "sides", "1,1,1")
    dom = cfg.domain()
    d = dom.dim
    omega = _omega(cfg, d)
    default_etas = [2.0, 3.0, 4.0, 5.0]
    if cfg.get("channel", "eta") is not None:
        default_etas = [cfg.get("channel", "eta")]
    etas = cfg.get("sweep", "etas", default_etas)
    ns = cfg.get("sweep", "n", list(range(2, 17)))
    if cfg.get("scheme", "n") is not None:
        ns = [cfg.get("scheme", "n")]
    m_mode = cfg.get("sweep", "m", "2")
    if cfg.get("scheme", "m") is not None:
        m_mode = str(cfg.get("scheme", "m"))
    samples = cfg.get("run", "samples", 100_000)
    yc = critical_ratio()
    table = Table("mass-curve", cfg, ["n", "eta", "C", "m", "mass_dc_closed", "mass_dc_asym",
                                      "mass_bf_numeric", "mass_bf_asym", "bf_std_err"])
    warned = False
    for eta in etas:
        params = cfg.channel(eta)
        tb = params.threshold_beta
        for n in ns:
            if m_mode == "yc":
                m, y = max(1, round(yc * n)), yc
            else:
                m, y = int(m_mode), 0.0
            bf = mass_bf_numeric(omega, d, params, m, n, samples, cfg.seed)
            if not warned and StepConnection(m, n, params).cutoff > diameter(dom) / 2:
                print(f"warning: transmission range exceeds half the domain diameter at eta={eta:g}, "
                      f"n={n}; boundary-free masses overstate what fits in {dom.describe()}", file=sys.stderr)
                warned = True
            table.row(n, eta, d / eta, m,
                      mass_dc_closed(omega, d, eta, tb, m, n).value,
                      mass_dc_asymptotic(omega, d, eta, tb, m, n).value,
                      bf.value, mass_bf_asymptotic(omega, d, eta, tb, n, y).value, bf.error_estimate)
    _emit(cfg, table.text())
    return 0


def _connection(cfg: RunConfig) -> ConnectionFunction:
    params = cfg.channel()
    scheme = cfg.scheme()
    if cfg.rate is not None:
        return ConnectionFunction(scheme, params, "rate", cfg.rate)
    return ConnectionFunction(scheme, params)


def cmd_pfc_sweep(cfg: RunConfig) -> int:
    dom = cfg.domain()
    H = _connection(cfg)
    vol = volume(dom)
    nodes = cfg.get("sweep", "nodes", [100, 150, 200, 300])
    trials = cfg.get("run", "trials", 1000)
    outer = cfg.get("sweep", "outer_samples", 4096)
    table = Table("pfc-sweep", cfg, ["rho", "N", "pfc_analytic", "pfc_sim", "sim_std_err"])
    for k, N in enumerate(nodes):
        an = pfc_analytic(N / vol, dom, H, outer_samples=outer, seed=cfg.seed + 2 * k)
        sim = simulate_pfc(N, dom, H, trials, cfg.seed + 2 * k + 1)
        table.row(N / vol, N, an.value, sim.value, sim.std_error)
    _emit(cfg, table.text())
    return 0


def cmd_conn_curve(cfg: RunConfig) -> int:
    dom = cfg.domain()
    H = _connection(cfg)
    r = np.linspace(0.0, cfg.get("sweep", "r_max", diameter(dom)), cfg.get("sweep", "points", 201))
    table = Table("conn-curve", cfg, ["r", "H"])
    for ri, hi in zip(r, np.asarray(H(r), dtype=float)):
        table.row(ri, hi)
    _emit(cfg, table.text())
    return 0


def cmd_design(cfg: RunConfig) -> int:
    dom = cfg.domain()
    d = dom.dim
    params = cfg.channel()
    C = params.connectivity_exponent()
    feature = cfg.get("design", "feature", "corner")
    omega = cfg.get("design", "omega")
    if omega is None:
        omega = ngon_or_feature_omega(feature, d)
    else:
        feature = "custom"
    p0 = cfg.get("design", "p_t0", 1.0)
    y = cfg.get("scheme", "y", 0.0)
    n_dc1 = antennas_for_boundary(omega, C, "dc", zeta=1, d=d)
    n_dc2 = antennas_for_boundary(omega, C, "dc", zeta=2, d=d)
    n_bf = antennas_for_boundary(omega, C, "bf", y=y, d=d)
    power = power_for_boundary(omega, C, p0, d)
    reference = reference_mass(d, params.eta, params.threshold_beta)
    n1 = ceil_antennas(n_dc1)
    residual = mass_dc_closed(omega, d, params.eta, params.threshold_beta, 1, n1).value / reference - 1.0
    report = [
        ("feature", feature), ("omega", omega), ("Omega", full_solid_angle(d)), ("C", C),
        ("power_multiplier", power / p0), ("required_power", power),
        ("n_dc_zeta1", n_dc1), ("n_dc_zeta1_ceil", n1), ("n_dc_zeta2", n_dc2),
        ("n_dc_zeta2_ceil", ceil_antennas(n_dc2)), ("y", y), ("n_bf", n_bf),
        ("n_bf_ceil", ceil_antennas(n_bf)), ("reference_mass", reference),
        ("dc_finite_n_residual", residual), ("y_c", critical_ratio()),
    ]
    text = "".join(f"{k}={v if isinstance(v, (str, int)) else _num(v)}\n" for k, v in report)
    sys.stdout.write(f"# connscale {__version__} command=design seed={cfg.seed}\n" + text)
    out = cfg.get("run", "out")
    if out is not None and out != "-":
        csv = "key,value\n" + "".join(line.replace("=", ",", 1) for line in text.splitlines(True))
        _emit(cfg, csv)
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    trials = cfg.get("run", "trials", 300)
    draws = cfg.get("run", "samples", 200)
    print(f"# connscale {__version__} validate seed={cfg.seed}")
    results = run_all(seed=cfg.seed, trials=trials, draws=draws)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


COMMANDS = {
    "mass-curve": cmd_mass_curve,
    "pfc-sweep": cmd_pfc_sweep,
    "design": cmd_design,
    "validate": cmd_validate,
    "conn-curve": cmd_conn_curve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="connscale", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"connscale {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=(fn.__doc__ or name).split("\n")[0])
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--domain", help="box:1,1[,1] or ball:RADIUS:DIM")
        for flag in FLAG_KEYS:
            p.add_argument(f"--{flag}")
    return parser


def make_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.domain:
        for key, raw in parse_domain_flag(args.domain).items():
            cfg.set("domain", key, raw)
        if cfg.get("domain", "kind") == "box":
            cfg.values.pop(("domain", "radius"), None)
            cfg.values.pop(("domain", "dim"), None)
        else:
            cfg.values.pop(("domain", "sides"), None)
    for flag, (section, key) in FLAG_KEYS.items():
        raw = getattr(args, flag)
        if raw is not None:
            cfg.set(section, key, raw)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[args.command](cfg)
    except ConnScaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
