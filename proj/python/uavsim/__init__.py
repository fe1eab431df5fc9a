"""Deterministic indoor UAV SLAM simulator (C++ core)."""

from ._uavsim import (
    SimError,
    WorldModel,
    attitude_step_response,
    canny_edges,
    default_world,
    eval_reconstruction,
    load_world,
    optimize_pose_graph,
    raycast,
    run_default_mission,
    run_mission,
    world_to_json,
)

__all__ = [
    "SimError",
    "WorldModel",
    "attitude_step_response",
    "canny_edges",
    "default_world",
    "eval_reconstruction",
    "load_world",
    "optimize_pose_graph",
    "raycast",
    "run_default_mission",
    "run_mission",
    "world_to_json",
]
