"""Built-in rigid-body backend implementing the physics adapter contract."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernel
from .adapter import StateFrame
from .urdf_model import ArticulatedModel, UrdfError, load_urdf


@dataclass(frozen=True)
class EngineConfig:
    """Integration, contact and actuation constants."""

    timestep: float = 1.0 / 240.0
    gravity: float = 9.81
    contact_stiffness: float = 1500.0  # N/m
    contact_damping: float = 30.0  # N*s/m, normal (implicit)
    friction: float = 0.8
    friction_stiffness: float = 300.0  # N*s/m, regularized tangential (implicit)
    kp: float = 3.0  # N*m/rad position control
    kd: float = 0.15  # N*m*s/rad, applied implicitly
    limit_stiffness: float = 5.0  # N*m/rad beyond joint limits
    spawn_clearance: float = 1e-3  # m above ground at reset
    fixed_base: bool = False  # pin the base (analysis/testing)

    def __post_init__(self) -> None:
        if self.timestep <= 0 or self.contact_stiffness <= 0:
            raise ValueError("timestep and contact stiffness must be positive")


class RigidBodyEngine:
    """Deterministic articulated dynamics with penalty ground contact.

    Satisfies `morphid.physics.adapter.PhysicsAdapter`.
    """

    def __init__(self, config: EngineConfig | None = None):
        self.config = config if config is not None else EngineConfig()
        self.model: ArticulatedModel | None = None
        self._base_pos = np.zeros(3)
        self._base_quat = np.array([1.0, 0.0, 0.0, 0.0])
        self._theta = np.zeros(0)
        self._u = np.zeros(6)
        self._targets = np.zeros(0)

    # -- adapter surface ----------------------------------------------------

    def load(self, urdf_text: str) -> None:
        self.model = load_urdf(urdf_text)
        nj = self.model.num_joints
        self._theta = np.zeros(nj)
        self._u = np.zeros(6 + nj)
        self._targets = np.zeros(nj)

    def reset(
        self,
        base_position: np.ndarray,
        base_quaternion: np.ndarray,
        joint_angles: np.ndarray,
    ) -> None:
        model = self._require_model()
        joint_angles = np.asarray(joint_angles, dtype=np.float64)
        if joint_angles.shape != (model.num_joints,):
            raise ValueError(f"expected {model.num_joints} joint angles")
        self._base_pos[:] = np.asarray(base_position, dtype=np.float64)
        quat = np.asarray(base_quaternion, dtype=np.float64)
        self._base_quat[:] = quat / np.linalg.norm(quat)
        self._theta = joint_angles.copy()
        self._u[:] = 0.0
        self._targets = joint_angles.copy()

    def set_targets(self, targets: np.ndarray) -> None:
        model = self._require_model()
        targets = np.asarray(targets, dtype=np.float64)
        if targets.shape != (model.num_joints,):
            raise ValueError(f"expected {model.num_joints} targets")
        self._targets = targets.copy()

    def step(self) -> None:
        self.step_n(1)

    def read_state(self) -> StateFrame:
        self._require_model()
        R = np.empty((3, 3))
        kernel.quat_to_rot(self._base_quat, R)
        sp = float(np.clip(-R[2, 0], -1.0, 1.0))
        pitch = math.asin(sp)
        roll = math.atan2(R[2, 1], R[2, 2])
        yaw = math.atan2(R[1, 0], R[0, 0])
        return StateFrame(
            base_position=self._base_pos.copy(),
            base_euler=np.array([roll, pitch, yaw]),
            joint_angles=self._theta.copy(),
        )

    def self_collision(self) -> bool:
        return self.min_separation() < 0.0

    def toppled(self) -> bool:
        self._require_model()
        return bool(kernel.is_toppled(self._base_quat))

    # -- extended surface ---------------------------------------------------

    def step_n(self, n: int) -> tuple[int, int]:
        """Advance up to n steps, stopping early on topple.
        Returns (status, steps_taken) with status kernel.OK or kernel.TOPPLED."""
        model = self._require_model()
        cfg = self.config
        return kernel.run_steps(
            n,
            model.parent, model.r_tree, model.R_tree, model.axis,
            model.mass, model.com, model.inertia_com,
            model.cp_body, model.cp_pos, model.cp_radius,
            model.joint_lower, model.joint_upper, model.joint_effort,
            model.joint_damping,
            self._base_pos, self._base_quat, self._theta, self._u, self._targets,
            cfg.timestep, cfg.gravity,
            cfg.contact_stiffness, cfg.contact_damping,
            cfg.friction, cfg.friction_stiffness,
            cfg.kp, cfg.kd, cfg.limit_stiffness, cfg.fixed_base,
        )

    def min_separation(self) -> float:
        """Smallest self-collision gap (negative = penetration)."""
        model = self._require_model()
        Rw, pw = self._poses()
        return float(
            kernel.min_separation(
                model.pair_i, model.pair_j,
                model.shape_body, model.shape_p0, model.shape_p1,
                model.shape_radius, Rw, pw,
            )
        )

    def spawn(self, joint_angles: np.ndarray, yaw: float = 0.0) -> None:
        """Reset at x=y=0 with the base high enough that the lowest contact
        point clears the ground by the configured margin."""
        model = self._require_model()
        quat = np.array([math.cos(yaw / 2.0), 0.0, 0.0, math.sin(yaw / 2.0)])
        self.reset(np.zeros(3), quat, joint_angles)
        Rw, pw = self._poses()
        lowest = np.inf
        for k in range(model.cp_body.shape[0]):
            b = model.cp_body[k]
            z = pw[b, 2] + Rw[b, 2] @ model.cp_pos[k] - model.cp_radius[k]
            lowest = min(lowest, float(z))
        self._base_pos[2] = -lowest + self.config.spawn_clearance

    def joint_positions(self) -> np.ndarray:
        self._require_model()
        return self._theta.copy()

    def velocities(self) -> np.ndarray:
        return self._u.copy()

    @property
    def num_controllable_joints(self) -> int:
        return self._require_model().num_joints

    # -- internals ----------------------------------------------------------

    def _require_model(self) -> ArticulatedModel:
        if self.model is None:
            raise UrdfError("no robot loaded")
        return self.model

    def _poses(self) -> tuple[np.ndarray, np.ndarray]:
        model = self._require_model()
        nb = model.num_bodies
        Rw = np.empty((nb, 3, 3))
        pw = np.empty((nb, 3))
        kernel.forward_kinematics(
            model.parent, model.r_tree, model.R_tree, model.axis,
            self._base_pos, self._base_quat, self._theta, Rw, pw,
        )
        return Rw, pw
