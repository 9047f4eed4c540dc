from typing import Sequence

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException
from omegaconf.omegaconf import DictConfig

from src.errors import ConfigError
from src.utils.config_io import load_config, get_conf_path


def _normalize_override(item: str) -> str:
    """Accepts `section.key=value`, `--section.key=value` and boolean spellings True/true/False/false."""
    item = item.lstrip("-")
    if "=" not in item:
        raise ConfigError(f"override {item!r} must have the form section.key=value")
    key, value = item.split("=", 1)
    if value in ["True", "true"]:
        value = "true"
    elif value in ["False", "false"]:
        value = "false"
    return f"{key}={value}"


def apply_overrides(config: DictConfig, overrides: Sequence[str]) -> DictConfig:
    """Merges dot-list overrides into the config; overrides win. Unknown keys are rejected."""
    if not overrides:
        return config
    OmegaConf.set_struct(config, True)
    try:
        new_config = OmegaConf.merge(config, OmegaConf.from_dotlist([_normalize_override(o) for o in overrides]))
    except OmegaConfBaseException as e:
        raise ConfigError(f"invalid override: {e}")
    OmegaConf.set_struct(new_config, False)
    return new_config


def _require(condition: bool, message: str):
    if not condition:
        raise ConfigError(message)


def validate_run_config(config: DictConfig) -> DictConfig:
    """Re-checks the range constraints of all modules, so that a bad value fails before any sampling starts."""
    try:
        _require(4 < config.kappa_prime <= 8, f"kappa_prime must lie in (4, 8], got {config.kappa_prime}")
        _require(config.alpha_scale > 0, f"alpha_scale must be positive, got {config.alpha_scale}")
        _require(config.n_steps >= 1, f"n_steps must be at least 1, got {config.n_steps}")
        _require(config.dt > 0, f"dt must be positive, got {config.dt}")
        _require(config.trials >= 1, f"trials must be at least 1, got {config.trials}")
        _require(config.kind in ("lattice", "brownian"), f"kind must be lattice or brownian, got {config.kind}")
        _require(0 <= config.window.a < config.window.b <= 1,
                 f"window fractions must satisfy 0 <= a < b <= 1, got ({config.window.a}, {config.window.b})")
        _require(config.eps_grid.min_exponent < config.eps_grid.max_exponent,
                 f"eps grid exponents must increase, got {config.eps_grid.min_exponent} >= "
                 f"{config.eps_grid.max_exponent}")
        _require(config.eps_grid.min_exponent >= 1, "eps grid must stay below half the window")
        _require(0 < config.tail.quantile < 1, f"tail quantile must lie in (0, 1), got {config.tail.quantile}")
        _require(config.tail.decades > 0, f"tail decades must be positive, got {config.tail.decades}")
        _require(config.tail.min_samples >= 3, f"tail min_samples must be at least 3, got {config.tail.min_samples}")
        _require(config.tail.get("guard", 0.) >= 0, f"tail guard must be non-negative, got {config.tail.get('guard')}")
        _require(config.bootstrap.resamples >= 0, "bootstrap resamples must be non-negative")
        for name, claim in config.get("claims", {}).items():
            for key in ("n_steps", "n_paths", "trials", "beads", "beads_per_path", "samples"):
                if key in claim:
                    _require(claim[key] >= 1, f"claims.{name}.{key} must be at least 1, got {claim[key]}")
            if "tolerance" in claim:
                _require(claim.tolerance >= 0, f"claims.{name}.tolerance must be non-negative")
            if "kappas" in claim:
                _require(all(4 < k < 8 for k in claim.kappas), f"claims.{name}.kappas must lie in (4, 8)")
            if "kind" in claim:
                _require(claim.kind in ("lattice", "brownian"), f"claims.{name}.kind must be lattice or brownian")
            if "guard" in claim:
                _require(claim.guard >= 0, f"claims.{name}.guard must be non-negative, got {claim.guard}")
            if "decades" in claim:
                _require(claim.decades > 0, f"claims.{name}.decades must be positive, got {claim.decades}")
            if "quantile" in claim:
                _require(0 < claim.quantile < 1, f"claims.{name}.quantile must lie in (0, 1)")
    except (AttributeError, KeyError, OmegaConfBaseException) as e:
        raise ConfigError(f"incomplete run configuration: {e}")
    except TypeError as e:
        raise ConfigError(f"ill-typed run configuration: {e}")
    return config


def build_run_config(name_or_path: str, overrides: Sequence[str] = ()) -> DictConfig:
    """Loads a config by experiment name or file path, applies the overrides and validates the result."""
    try:
        config = load_config(get_conf_path(name_or_path))
    except (OSError, OmegaConfBaseException) as e:
        raise ConfigError(f"cannot read config {name_or_path!r}: {e}")
    return validate_run_config(apply_overrides(config, overrides))
