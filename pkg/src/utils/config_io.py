from omegaconf import OmegaConf, DictConfig
from pathlib import Path
from typing import Union
import os

from src import settings
from src.errors import ConfigError


def load_config(path: Union[str, Path]) -> DictConfig:
    with open(path, "r") as conf_file:
        config = OmegaConf.load(conf_file)
    return config


def save_config(path: Union[str, Path], config: DictConfig):
    with open(path, "w") as conf_file:
        OmegaConf.save(config=config, f=conf_file)


def get_conf_path(experiment_name: str, configs_path: Union[str, Path] = None) -> str:
    """
    Finds `<experiment_name>_conf.yaml` in the configs directory. A name that points to an existing file is returned
    unchanged.
    """
    if os.path.isfile(experiment_name):
        return str(experiment_name)
    configs_path = settings.configs_dir if configs_path is None else configs_path
    all_configs = sorted(os.listdir(configs_path))
    exp_config = [config_file for config_file in all_configs if f"{experiment_name}_conf" in config_file.split(".")]
    if not exp_config:
        raise ConfigError(f"No suitable config file could be found in {configs_path}!\n"
                          f"Please choose a valid experiment name or config file! Got {experiment_name!r}")
    else:
        exp_config = exp_config[0]

    return os.path.join(configs_path, exp_config)
