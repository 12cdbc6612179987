"""
Loading `SimConfig` from a flat `KEY=value` file plus overrides.
Precedence, lowest first: field defaults, config file, overrides.
"""

import os
from logging import getLogger
from pathlib import Path
from typing import Any, Iterable, Mapping

from dotenv import dotenv_values
from pydantic import ValidationError

from aerial_cine.core.config import SimConfig
from aerial_cine.errors import ConfigError

logger = getLogger(__name__)

CONFIG_ENV_VAR = "AERIAL_CINE_CONFIG"


def resolve_config_path(
    path: str | Path | None, environ: Mapping[str, str] | None = None
) -> Path | None:
    """Explicit path first, then the `AERIAL_CINE_CONFIG` environment variable"""
    environ = os.environ if environ is None else environ
    if path:
        return Path(path)
    if environ.get(CONFIG_ENV_VAR):
        return Path(environ[CONFIG_ENV_VAR])
    return None


def parse_overrides(pairs: Iterable[str]) -> dict[str, str]:
    """`["alpha=0.3", "rng_seed=4"]` -> `{"alpha": "0.3", "rng_seed": "4"}`"""
    overrides, errors = {}, []
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            errors.append(f"override '{pair}' is not of the form KEY=VALUE")
            continue
        overrides[key.strip()] = value.strip()
    if errors:
        raise ConfigError(errors)
    return overrides


def _format_error(error: dict[str, Any]) -> str:
    where = ".".join(str(p) for p in error["loc"]) or "config"
    return f"{where}: {error['msg']} (got {error.get('input')!r})"


def build_config(values: Mapping[str, Any]) -> SimConfig:
    """
    Validate raw key-value pairs into a `SimConfig`.

    Raises:
        ConfigError: every unknown key, missing value and invalid field at once
    """
    known = SimConfig.model_fields
    errors = [f"{key}: unknown configuration key" for key in values if key not in known]
    errors += [f"{key}: no value given" for key, value in values.items() if value is None]
    fields = {k: v for k, v in values.items() if k in known and v is not None}
    try:
        config = SimConfig.model_validate(fields)
    except ValidationError as e:
        errors += [_format_error(err) for err in e.errors()]
        config = None
    if errors:
        raise ConfigError(errors)
    return config


def load_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    environ: Mapping[str, str] | None = None,
) -> SimConfig:
    """
    Read the config file (if any), apply overrides and validate.

    Raises:
        FileNotFoundError: the resolved config file does not exist
        ConfigError: invalid content
    """
    resolved = resolve_config_path(path, environ)
    values: dict[str, Any] = {}
    if resolved is not None:
        if not resolved.is_file():
            raise FileNotFoundError(f"config file not found: {resolved}")
        values.update(dotenv_values(resolved, interpolate=False))
        logger.info(f"Loaded {len(values)} settings from {resolved}")
    values.update(overrides or {})
    return build_config(values)
