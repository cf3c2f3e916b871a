"""Run configuration: the non-explicit constants and numeric knobs.

Files are TOML.  Keys may sit at top level or under a ``[constants]``
table; absent keys take their defaults and unknown keys are an error.
"""
from __future__ import annotations

import os
import sys
from dataclasses import asdict, dataclass, fields

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from linlog.bounds import Constants
from linlog.errors import LinlogError

ENV_VAR = "LINLOG_CONFIG"


class ConfigError(LinlogError):
    """Malformed configuration file."""

    exit_code = 78


@dataclass(frozen=True)
class Config:
    C0: int = 2
    c_thm: float = 1.0
    c5: float | None = None  # None: (g+1) C0^6
    c6: float | None = None
    chi_H_cap: float = 1.0
    siegel_search_box: int = 3
    subgroup_lattice_bound: int = 3
    float_precision_bits: int = 80
    shape_constant: float = 10.0  # c in the auxiliary height-shape report

    def __post_init__(self) -> None:
        if self.C0 < 2:
            raise ConfigError(f"C0 must be >= 2 (got {self.C0})")
        if self.float_precision_bits < 53:
            raise ConfigError(f"float_precision_bits must be >= 53 (got {self.float_precision_bits})")
        if self.siegel_search_box < 1 or self.subgroup_lattice_bound < 1:
            raise ConfigError("search bounds must be >= 1")
        for name in ("c_thm", "chi_H_cap", "shape_constant"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0")

    def constants(self) -> Constants:
        return Constants(self.C0, self.c_thm, self.c5, self.chi_H_cap, self.subgroup_lattice_bound)

    def window(self, g: int, ultrametric: bool = False) -> float:
        c = self.c6 if ultrametric else self.c5
        return float(c) if c is not None else float((g + 1) * self.C0**6)

    def to_json(self) -> dict:
        return asdict(self)


_TYPES = {f.name: f.type for f in fields(Config)}
_INTS = {"C0", "siegel_search_box", "subgroup_lattice_bound", "float_precision_bits"}
_RULE = "(g+1)C0^6"


def _coerce(key: str, value, where: str):
    if key in ("c5", "c6") and isinstance(value, str):
        if value.replace(" ", "") != _RULE:
            raise ConfigError(f"{where}: {key} must be a number or {_RULE!r}")
        return None
    if key in _INTS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}: {key} must be an integer")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: {key} must be a number")
    return float(value)


def _line_of(text: str, key: str) -> int:
    for i, line in enumerate(text.splitlines(), 1):
        if line.split("=", 1)[0].strip() == key:
            return i
    return 0


def parse_config_text(text: str, source: str = "<config>") -> Config:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    flat = {}
    for k, v in raw.items():
        if k == "constants" and isinstance(v, dict):
            flat.update(v)
        else:
            flat[k] = v
    values = {}
    for k, v in flat.items():
        where = f"{source}:{_line_of(text, k)}"
        if k not in _TYPES:
            raise ConfigError(f"{where}: unknown key {k!r}")
        values[k] = _coerce(k, v, where)
    try:
        return Config(**values)
    except ConfigError as exc:
        key = next((k for k in values if str(exc).startswith(k + " ")), None)
        line = _line_of(text, key) if key else 0
        raise ConfigError(f"{source}:{line}: {exc}") from None


def parse_config(path: str | None = None) -> Config:
    """Read ``path``, else the file named by $LINLOG_CONFIG, else defaults."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config_text(text, path)
