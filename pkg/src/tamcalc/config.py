"""Run configuration: a ``key = value`` file plus ``TAMCALC_*`` environment overrides."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
import os

from .linalg import is_prime


@dataclass(frozen=True)
class Config:
    seed: int
    scale: int = 10**9
    prime: int = 2
    chord_tol: float = 1e-6
    stability_eps: float = 1e-3
    oracle_cases: int = 200

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0 and f.name != "seed":
                raise ValueError(f"config: {f.name} must be positive")
        if self.seed < 0:
            raise ValueError("config: seed must be nonnegative")
        if not is_prime(self.prime):
            raise ValueError(f"config: prime {self.prime} is not a prime")
        if self.scale < 1 or str(self.scale).rstrip("0") != "1":
            raise ValueError("config: scale must be a power of ten")


_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(key: str, raw: str, where: str):
    if key not in _TYPES:
        raise ValueError(f"{where}: unknown key {key!r}")
    try:
        if _TYPES[key] in ("int", int):
            return int(raw.replace("_", ""))
        return float(raw)
    except ValueError:
        raise ValueError(f"{where}: {key} = {raw!r} is not a number") from None


def load_config(path=None, env=None, defaults=None) -> Config:
    """Read ``path`` (optional) then apply ``TAMCALC_<KEY>`` overrides; ``seed`` is mandatory.

    ``defaults`` are used for keys that neither the file nor the environment set.
    """
    env = os.environ if env is None else env
    values: dict = dict(defaults or {})
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.optionxform = str
        parser.read_string("[tamcalc]\n" + text if not text.lstrip().startswith("[") else text)
        for section in parser.sections():
            for key, raw in parser.items(section):
                values[key] = _coerce(key, raw.strip().strip('"'), f"{path} [{section}]")
    for key in _TYPES:
        raw = env.get(f"TAMCALC_{key.upper()}")
        if raw is not None:
            values[key] = _coerce(key, raw, f"TAMCALC_{key.upper()}")
    if "seed" not in values:
        raise ValueError("config: a seed is required (config file or TAMCALC_SEED)")
    return Config(**values)


def default_config(seed: int = 0, **overrides) -> Config:
    return replace(Config(seed=seed), **overrides)
