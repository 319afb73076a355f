"""Run configuration: YAML round trip, validation with line numbers, hashing."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import yaml

from .constants import DEFAULT_EPSILON, DEFAULT_TRUNCATION, SCHEMA_VERSION
from .noise import SUBORDINATED, WHITE_NOISE
from .spectral import EXPLICIT, POWER_LAW, SemigroupSpec


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<config>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class SemigroupConfig:
    model: str = POWER_LAW
    c_lo: float = 1.0
    c_hi: float = 1.0
    exponent: Optional[float] = None
    dim: Optional[int] = None
    lambdas: Optional[tuple] = None
    truncation: int = DEFAULT_TRUNCATION

    def spec(self) -> SemigroupSpec:
        if self.model == EXPLICIT:
            return SemigroupSpec.explicit(self.lambdas or ())
        if self.exponent is not None:
            exponent = self.exponent
        elif self.dim is not None:
            exponent = 2.0 / self.dim
        else:
            exponent = 1.0
        return SemigroupSpec.power_law(self.c_lo, exponent, self.truncation, c_hi=self.c_hi)


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 1.5
    semigroup: SemigroupConfig = field(default_factory=SemigroupConfig)
    horizon: float = 1.0
    dt: float = 1e-3
    galerkin_n: int = 16
    paths: int = 1
    seed: int = 0
    output_dir: str = "output"
    representation: str = SUBORDINATED
    s_min: float = 1e-8
    epsilon: float = DEFAULT_EPSILON
    schema_version: int = SCHEMA_VERSION

    # fields that do not change results
    NON_SEMANTIC = ("output_dir",)

    def to_dict(self) -> dict:
        d = asdict(self)
        sg = d["semigroup"]
        if sg["lambdas"] is not None:
            sg["lambdas"] = list(sg["lambdas"])
        return d

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    def save(self, path) -> None:
        Path(path).write_text(self.to_yaml())

    def semantic_dict(self) -> dict:
        d = self.to_dict()
        for k in self.NON_SEMANTIC:
            d.pop(k)
        d["semigroup"] = self.semigroup.spec().to_dict()
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.semantic_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def time_grid_steps(self) -> int:
        return max(1, int(round(self.horizon / self.dt)))

    def with_overrides(self, **kw) -> "RunConfig":
        top = {k: v for k, v in kw.items() if v is not None and k in _TOP_FIELDS}
        sg = {k: v for k, v in kw.items() if v is not None and k in _SG_FIELDS}
        cfg = replace(self, **top)
        if sg:
            if "dim" in sg and "exponent" not in sg:
                sg["exponent"] = None
            cfg = replace(cfg, semigroup=replace(cfg.semigroup, **sg))
        return validate(cfg)


_TOP_FIELDS = {f.name for f in fields(RunConfig)} - {"semigroup"}
_SG_FIELDS = {f.name for f in fields(SemigroupConfig)}


def _line_index(node, prefix=(), out=None):
    """Map key paths to 1-based line numbers from a composed YAML node tree."""
    out = {} if out is None else out
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = prefix + (k.value,)
            out[key] = k.start_mark.line + 1
            _line_index(v, key, out)
    return out


def _check(cond, msg, lines, key, source):
    if not cond:
        raise ConfigError(msg, lines.get(key), source)


def validate(cfg: RunConfig, lines: Optional[dict] = None, source: str = "<config>") -> RunConfig:
    lines = lines or {}
    sg = cfg.semigroup
    _check(cfg.schema_version == SCHEMA_VERSION,
           f"unsupported schema_version {cfg.schema_version}", lines, ("schema_version",), source)
    _check(0.0 < cfg.alpha < 2.0, f"alpha must lie in (0, 2), got {cfg.alpha}", lines, ("alpha",), source)
    _check(cfg.horizon > 0.0, "horizon must be positive", lines, ("horizon",), source)
    _check(0.0 < cfg.dt <= cfg.horizon, "dt must lie in (0, horizon]", lines, ("dt",), source)
    _check(cfg.galerkin_n >= 1, "galerkin_n must be at least 1", lines, ("galerkin_n",), source)
    _check(cfg.paths >= 0, "paths must be nonnegative", lines, ("paths",), source)
    _check(0 <= cfg.seed < 2**64, "seed must be a 64-bit unsigned integer", lines, ("seed",), source)
    _check(0.0 < cfg.s_min < cfg.horizon, "s_min must lie in (0, horizon)", lines, ("s_min",), source)
    _check(cfg.epsilon > 0.0, "epsilon must be positive", lines, ("epsilon",), source)
    _check(cfg.representation in (SUBORDINATED, WHITE_NOISE),
           f"representation must be {SUBORDINATED!r} or {WHITE_NOISE!r}", lines, ("representation",), source)
    if cfg.representation == WHITE_NOISE:
        _check(1.0 < cfg.alpha < 2.0, "the white-noise representation needs alpha in (1, 2)",
               lines, ("alpha",), source)
    _check(sg.model in (POWER_LAW, EXPLICIT), f"unknown semigroup model {sg.model!r}",
           lines, ("semigroup", "model"), source)
    if sg.model == POWER_LAW:
        _check(0.0 < sg.c_lo <= sg.c_hi, "need 0 < c_lo <= c_hi", lines, ("semigroup", "c_lo"), source)
        _check(sg.dim is None or sg.dim >= 1, "dim must be a positive integer", lines, ("semigroup", "dim"), source)
        _check(sg.exponent is None or sg.exponent > 0, "exponent must be positive",
               lines, ("semigroup", "exponent"), source)
        _check(sg.truncation >= cfg.galerkin_n, "truncation must be at least galerkin_n",
               lines, ("semigroup", "truncation"), source)
    else:
        lam = sg.lambdas or ()
        _check(len(lam) >= cfg.galerkin_n and all(v >= 0 for v in lam),
               "explicit lambdas must be nonnegative and at least galerkin_n long",
               lines, ("semigroup", "lambdas"), source)
    return cfg


_TYPES = {
    "alpha": float, "horizon": float, "dt": float, "galerkin_n": int, "paths": int,
    "seed": int, "output_dir": str, "representation": str, "s_min": float,
    "epsilon": float, "schema_version": int,
}
_SG_TYPES = {
    "model": str, "c_lo": float, "c_hi": float, "exponent": float, "dim": int,
    "truncation": int,
}


def _coerce(value, typ, key, lines, source):
    if value is None:
        return None
    if typ is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if typ is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if typ is str and isinstance(value, str):
        return value
    raise ConfigError(f"{'.'.join(key)} must be of type {typ.__name__}, got {value!r}",
                      lines.get(key), source)


def from_yaml(text: str, source: str = "<config>") -> RunConfig:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"malformed YAML: {getattr(exc, 'problem', exc)}",
                          mark.line + 1 if mark else None, source) from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", 1, source)
    lines = _line_index(node)
    kw = {}
    for k, v in data.items():
        if k == "semigroup":
            continue
        if k not in _TYPES:
            raise ConfigError(f"unknown field {k!r}", lines.get((k,)), source)
        kw[k] = _coerce(v, _TYPES[k], (k,), lines, source)
    sg_data = data.get("semigroup") or {}
    if not isinstance(sg_data, dict):
        raise ConfigError("semigroup must be a mapping", lines.get(("semigroup",)), source)
    sg_kw = {}
    for k, v in sg_data.items():
        key = ("semigroup", k)
        if k == "lambdas":
            if v is not None and (not isinstance(v, list)
                                  or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
                raise ConfigError("semigroup.lambdas must be a list of numbers", lines.get(key), source)
            sg_kw[k] = None if v is None else tuple(float(x) for x in v)
        elif k in _SG_TYPES:
            sg_kw[k] = _coerce(v, _SG_TYPES[k], key, lines, source)
        else:
            raise ConfigError(f"unknown field semigroup.{k}", lines.get(key), source)
    kw = {k: v for k, v in kw.items() if v is not None}
    cfg = RunConfig(semigroup=SemigroupConfig(**sg_kw), **kw)
    return validate(cfg, lines, source)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", None, str(path)) from None
    return from_yaml(text, str(path))
