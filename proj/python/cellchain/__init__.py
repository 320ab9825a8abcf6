"""Ledger-mediated pick-and-place cell testbed."""

from ._core import (
    compute_x,
    compute_velocity,
    count_balls,
    detect_circles,
    dump_storage,
    preset_config,
    render_scene_ppm,
    render_table,
    run_experiment,
    sha256_hex,
    verify_run,
)

__all__ = [
    "compute_x",
    "compute_velocity",
    "count_balls",
    "detect_circles",
    "dump_storage",
    "preset_config",
    "render_scene_ppm",
    "render_table",
    "run_experiment",
    "sha256_hex",
    "verify_run",
]
