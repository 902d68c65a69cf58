"""Physics adapter contract: the only simulator coupling in the pipeline.

Any rigid-body backend that can load the generated URDFs and implement this
protocol can drive robot validation and data collection. The package ships
one backend (`morphid.physics.engine.RigidBodyEngine`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np


@dataclass
class StateFrame:
    """Proprioceptive state at one timestep: 18 values."""

    base_position: np.ndarray  # x, y, z (m), body center
    base_euler: np.ndarray  # roll, pitch, yaw (rad), world Rz(yaw)Ry(pitch)Rx(roll)
    joint_angles: np.ndarray  # 12 rad, leg-major inner/middle/outer

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.base_position, self.base_euler, self.joint_angles])


@runtime_checkable
class PhysicsAdapter(Protocol):
    """Operations any backend must provide."""

    def load(self, urdf_text: str) -> None:
        """Parse and instantiate a robot; replaces any previous robot."""

    def reset(
        self,
        base_position: np.ndarray,
        base_quaternion: np.ndarray,
        joint_angles: np.ndarray,
    ) -> None:
        """Set pose (quaternion w,x,y,z) and joint angles; zero velocities."""

    def set_targets(self, targets: np.ndarray) -> None:
        """Position targets for the 12 controllable joints."""

    def step(self) -> None:
        """Advance one fixed timestep. Deterministic for fixed configuration."""

    def read_state(self) -> StateFrame:
        ...

    def self_collision(self) -> bool:
        """Any contact between non-adjacent links of the robot itself."""

    def toppled(self) -> bool:
        """|roll| > pi/2 or |pitch| > pi/2."""
