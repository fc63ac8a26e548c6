"""Experiment configuration files: INI-style key/value with sections.

Schema (see README for the full description)::

    [experiment]            # required
    kind = fig3_linf_vs_p   # one of the experiment kinds, default custom
    n = 1000
    trials = 20
    seed = 7
    zeta = 0.5
    estimator = alg1        # alg1 | alg1_alt | alg3
    u_distribution = uniform
    min_abs_c = 0
    record_timing = false

    [grid]                  # required; comma-separated lists
    p_list = 2, 4, 6
    m_list = 1
    theta_list = 0.1, 0.3
    snr_db_list = none      # "none" = noiseless

    [baselines]             # optional
    procrustes_known_x = false

    [model]                 # optional
    value_low = 1.0
    value_high = 2.0
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .experiments import ConfigError, ExperimentSpec

_EXPERIMENT_KEYS = {
    "kind",
    "n",
    "trials",
    "seed",
    "zeta",
    "estimator",
    "u_distribution",
    "min_abs_c",
    "record_timing",
}
_GRID_KEYS = {"p_list", "m_list", "theta_list", "snr_db_list"}
_BASELINE_KEYS = {"procrustes_known_x"}
_MODEL_KEYS = {"value_low", "value_high"}


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip()) for part in text.split(",") if part.strip())


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part.strip()) for part in text.split(",") if part.strip())


def _optional_float_list(text: str) -> tuple[float | None, ...]:
    out: list[float | None] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        out.append(None if part.lower() in ("none", "null") else float(part))
    return tuple(out)


def _check_keys(section, allowed: set[str], name: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")


def parse_experiment_config(text: str) -> ExperimentSpec:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    if "experiment" not in parser or "grid" not in parser:
        raise ConfigError("config needs [experiment] and [grid] sections")
    exp = parser["experiment"]
    grid = parser["grid"]
    _check_keys(exp, _EXPERIMENT_KEYS, "experiment")
    _check_keys(grid, _GRID_KEYS, "grid")
    baselines = parser["baselines"] if "baselines" in parser else {}
    model = parser["model"] if "model" in parser else {}
    if baselines:
        _check_keys(baselines, _BASELINE_KEYS, "baselines")
    if model:
        _check_keys(model, _MODEL_KEYS, "model")

    try:
        spec = ExperimentSpec(
            experiment_kind=exp.get("kind", "custom"),
            n=exp.getint("n", 100),
            trials=exp.getint("trials", 1),
            seed=exp.getint("seed", 0),
            zeta=exp.getfloat("zeta", 0.5),
            estimator=exp.get("estimator", "alg1"),
            u_distribution=exp.get("u_distribution", "uniform"),
            min_abs_c=exp.getfloat("min_abs_c", 0.0),
            record_timing=exp.getboolean("record_timing", False),
            p_list=_int_list(grid.get("p_list", "")),
            m_list=_int_list(grid.get("m_list", "1")),
            theta_list=_float_list(grid.get("theta_list", "")),
            snr_db_list=_optional_float_list(grid.get("snr_db_list", "none")),
            procrustes_known_x=(
                baselines.getboolean("procrustes_known_x", False) if baselines else False
            ),
            value_low=model.getfloat("value_low", 1.0) if model else 1.0,
            value_high=model.getfloat("value_high", 2.0) if model else 2.0,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad config value: {exc}") from exc
    return spec


def load_experiment_config(path) -> ExperimentSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_experiment_config(text)
