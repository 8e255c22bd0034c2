"""Run configuration: flat ``key = value`` files with ``[section]`` headers.

Example::

    [domain]
    kind = box
    sides = 1, 1

    [channel]
    eta = 2
    beta = 52

    [run]
    seed = 7

Every value is checked against its constraint at parse time and errors name
the offending line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .channel import AntennaScheme, ChannelParams
from .errors import ConfigError, DomainError
from .geometry import Domain, ball, box, corner_solid_angle_ngon, full_solid_angle


def _floats(text):
    return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]


def _int_range(text):
    """``2:16`` (inclusive), ``2:64:2`` or a comma list."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            parts.append(1)
        lo, hi, step = parts
        if step < 1:
            raise ValueError("range step must be positive")
        return list(range(lo, hi + 1, step))
    return [int(t) for t in text.split(",") if t.strip()]


def _positive(v):
    return v > 0


# (section, key) -> (converter, predicate, constraint text)
SCHEMA = {
    ("domain", "kind"): (str, lambda v: v in ("box", "ball"), "kind in {box, ball}"),
    ("domain", "sides"): (_floats, lambda v: 1 <= len(v) <= 3 and all(s > 0 for s in v),
                          "1-3 positive side lengths"),
    ("domain", "radius"): (float, _positive, "radius > 0"),
    ("domain", "dim"): (int, lambda v: v in (1, 2, 3), "dim in {1, 2, 3}"),
    ("channel", "eta"): (float, lambda v: v >= 2, "eta >= 2"),
    ("channel", "epsilon"): (float, _positive, "epsilon > 0"),
    ("channel", "beta"): (float, _positive, "beta > 0"),
    ("channel", "power"): (float, _positive, "power > 0"),
    ("channel", "threshold"): (float, _positive, "threshold > 0"),
    ("channel", "rate"): (float, _positive, "rate > 0"),
    ("scheme", "kind"): (str, lambda v: v in ("siso", "dc", "bf"), "kind in {siso, dc, bf}"),
    ("scheme", "m"): (int, lambda v: v >= 1, "m >= 1"),
    ("scheme", "n"): (int, lambda v: v >= 1, "n >= 1"),
    ("scheme", "y"): (float, lambda v: v >= 0, "y >= 0"),
    ("run", "seed"): (int, lambda v: v >= 0, "seed >= 0"),
    ("run", "samples"): (int, lambda v: v >= 1, "samples >= 1"),
    ("run", "spatial_samples"): (int, lambda v: v >= 1, "spatial_samples >= 1"),
    ("run", "trials"): (int, lambda v: v >= 1, "trials >= 1"),
    ("run", "out"): (str, lambda v: bool(v), "non-empty path"),
    ("sweep", "n"): (_int_range, lambda v: len(v) > 0 and min(v) >= 1, "antenna counts >= 1"),
    ("sweep", "etas"): (_floats, lambda v: len(v) > 0 and min(v) >= 2, "every eta >= 2"),
    ("sweep", "m"): (str, lambda v: v == "yc" or v.isdigit() and int(v) >= 1, "m = yc or integer >= 1"),
    ("sweep", "nodes"): (_int_range, lambda v: len(v) > 0 and min(v) >= 2, "node counts >= 2"),
    ("sweep", "outer_samples"): (int, lambda v: v >= 2, "outer_samples >= 2"),
    ("sweep", "r_max"): (float, _positive, "r_max > 0"),
    ("sweep", "points"): (int, lambda v: v >= 2, "points >= 2"),
    ("design", "feature"): (str, bool, "non-empty feature name"),
    ("design", "omega"): (float, _positive, "omega > 0"),
    ("design", "p_t0"): (float, _positive, "p_t0 > 0"),
}


@dataclass
class RunConfig:
    values: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    source: str = "<defaults>"

    def get(self, section, key, default=None):
        return self.values.get((section, key), default)

    def set(self, section, key, raw, line=None):
        """Convert and validate one raw value; ``line`` is used in error messages."""
        spec = SCHEMA.get((section, key))
        if spec is None:
            raise ConfigError(f"unknown key {key!r} in section [{section}]", line)
        conv, ok, constraint = spec
        try:
            value = conv(raw.strip()) if isinstance(raw, str) else raw
        except ValueError:
            raise ConfigError(f"{section}.{key}: cannot parse {raw!r} (need {constraint})", line) from None
        if not ok(value):
            raise ConfigError(f"{section}.{key} = {raw!r} violates constraint {constraint}", line)
        self.values[(section, key)] = value
        if line is not None:
            self.lines[(section, key)] = line

    def _line(self, *keys):
        for k in keys:
            if k in self.lines:
                return self.lines[k]
        return None

    # -- typed views -------------------------------------------------------------

    def domain(self) -> Domain:
        kind = self.get("domain", "kind", "box")
        try:
            if kind == "box":
                return box(*self.get("domain", "sides", [1.0, 1.0]))
            dim = self.get("domain", "dim", 3)
            return ball(self.get("domain", "radius", 1.0), dim)
        except DomainError as exc:
            raise ConfigError(str(exc), self._line(("domain", "sides"), ("domain", "radius"))) from None

    def channel(self, eta=None) -> ChannelParams:
        beta = self.get("channel", "beta", 1.0) / self.get("channel", "power", 1.0)
        return ChannelParams(
            eta=self.get("channel", "eta", 3.0) if eta is None else eta,
            epsilon=self.get("channel", "epsilon", 1e-6),
            beta=beta,
            threshold=self.get("channel", "threshold", 1.0),
            dim=self.domain().dim,
        )

    @property
    def rate(self):
        return self.get("channel", "rate")

    def scheme(self) -> AntennaScheme:
        kind = self.get("scheme", "kind", "siso")
        if kind == "siso":
            for key in ("m", "n"):
                if self.get("scheme", key, 1) != 1:
                    raise ConfigError(f"siso scheme requires {key} = 1; set scheme.kind to dc or bf",
                                      self._line(("scheme", key)))
            return AntennaScheme.siso()
        n = self.get("scheme", "n", 1)
        m = self.get("scheme", "m")
        y = self.get("scheme", "y")
        if m is None:
            m = max(1, round(y * n)) if y is not None else 1
        return AntennaScheme(kind, m, n)

    @property
    def seed(self) -> int:
        return self.get("run", "seed", 0)

    def describe(self) -> str:
        # the output path is where results go, not what produced them
        return " ".join(f"{s}.{k}={_fmt(v)}" for (s, k), v in sorted(self.values.items())
                        if (s, k) != ("run", "out"))


def _fmt(v):
    if isinstance(v, list):
        return ",".join(_fmt(x) for x in v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def parse_config_text(text: str, source: str = "<string>") -> RunConfig:
    cfg = RunConfig(source=source)
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in {s for s, _ in SCHEMA}:
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if section is None:
            raise ConfigError("key outside of any [section]", lineno)
        key, value = (p.strip() for p in line.split("=", 1))
        cfg.set(section, key.lower(), value, lineno)
    _cross_check(cfg)
    return cfg


def _cross_check(cfg: RunConfig):
    sides = cfg.get("domain", "sides")
    if cfg.get("domain", "kind") == "ball" and sides is not None:
        raise ConfigError("ball domains take radius and dim, not sides", cfg._line(("domain", "sides")))
    if cfg.get("scheme", "kind") == "siso":
        for key in ("m", "n"):
            if cfg.get("scheme", key, 1) != 1:
                raise ConfigError(f"siso scheme requires {key} = 1", cfg._line(("scheme", key)))


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config_text(text, str(path))


def parse_domain_flag(text: str) -> dict:
    """``box:1,1,1`` or ``ball:RADIUS:DIM`` -> raw config values."""
    kind, _, rest = text.partition(":")
    if kind == "box":
        return {"kind": "box", "sides": rest or "1,1"}
    if kind == "ball":
        radius, _, dim = rest.partition(":")
        return {"kind": "ball", "radius": radius or "1", "dim": dim or "3"}
    raise ConfigError(f"--domain must look like box:1,1 or ball:1:3, got {text!r}")


def ngon_or_feature_omega(feature: str, d: int) -> float:
    """Solid angle for ``interior``, ``face``, ``edge``, ``corner`` or ``ngon:K``."""
    full = full_solid_angle(d)
    if feature.startswith("ngon:"):
        if d != 2:
            raise ConfigError("n-gon corners are planar; use a 2-D domain")
        try:
            sides = int(feature.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"n-gon feature needs an integer side count, got {feature!r}") from None
        return corner_solid_angle_ngon(sides)
    k = {"interior": 0, "face": 1, "edge": 2, "corner": d}.get(feature)
    if k is None or k > d:
        raise ConfigError(f"unknown or unavailable feature {feature!r} in {d} dimensions")
    return full / 2**k
