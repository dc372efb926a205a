"""Flat dotted-key configuration text.

Grammar (one assignment per line):

    # comment (also allowed after values)
    section.key = value
    sweep.p_grid = 1.05, 1.1, 1.5, 2.0

Values parse as int, float, bool (true/false), a comma list of those, or a
bare string.  One config file = one reproducible artifact; command-line
--set overrides win over the file.
"""

from __future__ import annotations

from ..errors import ConfigurationError

__all__ = ["parse_config", "load_config", "parse_value", "merge"]


def parse_value(text: str):
    text = text.strip()
    if "," in text:
        return [parse_value(part) for part in text.split(",") if part.strip()]
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def parse_config(text: str) -> dict:
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key or any(not part.isidentifier() for part in key.split(".")):
            raise ConfigurationError(f"line {lineno}: bad key {key!r}")
        out[key] = parse_value(value)
    return out


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc


def merge(base: dict, overrides: dict) -> dict:
    merged = dict(base)
    merged.update(overrides)
    return merged
