"""URDF generation for configured robots.

Robot structure: an icosahedron base link plus four legs of three box links
each, all joints revolute. Leg k of a full code attaches at faces[k]; the
mount frame has z along the outward face normal and x along world-up
projected into the face plane. Each link-to-link connection is assembled at
a discrete rotation joints[3k+i] * 30 degrees counterclockwise about the
connection axis (folded into the joint origin rpy), and the actuated motor
rotates about the connection frame's y axis. Links extend along local +z.

Base collision is expressed as 13 spheres: one per icosahedron vertex (the
resting contact set of the polyhedron) plus a central sphere just inside the
inscribed sphere, so any rigid-body engine reproduces face-stable resting
behavior without mesh assets.

Output is deterministic: identical code + geometry yields byte-identical
documents.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import numpy as np

from . import icosa
from .codec import FullConfigCode

# fraction of the inscribed-sphere radius used for the central body sphere
_CORE_SPHERE_SCALE = 0.93


@dataclass(frozen=True)
class RobotGeometry:
    """Physical parameters of the robot family."""

    body_edge_length: float = 0.08  # m
    body_mass: float = 0.30  # kg
    link_lengths: tuple[float, float, float] = (0.06, 0.08, 0.10)  # inner/middle/outer, m
    link_masses: tuple[float, float, float] = (0.05, 0.05, 0.05)  # kg
    link_cross_section: float = 0.024  # box side, m
    joint_limit: float = math.pi / 2  # symmetric bound, rad
    joint_effort: float = 1.5  # N*m
    joint_velocity: float = 6.0  # rad/s
    joint_damping: float = 0.01  # N*m*s/rad, passive
    attachment_rotation_step: float = math.pi / 6
    vertex_contact_radius: float = 0.006  # m

    def __post_init__(self) -> None:
        positives = (
            self.body_edge_length,
            self.body_mass,
            *self.link_lengths,
            *self.link_masses,
            self.link_cross_section,
            self.joint_limit,
            self.joint_effort,
            self.joint_velocity,
            self.vertex_contact_radius,
        )
        if any(v <= 0 for v in positives):
            raise ValueError("geometry lengths, masses and limits must be positive")
        if abs(self.attachment_rotation_step * 12 - 2 * math.pi) > 1e-12:
            raise ValueError("attachment rotation step must be 2*pi/12")

    @property
    def circumradius(self) -> float:
        return icosa.circumradius_for_edge(self.body_edge_length)

    @property
    def inradius(self) -> float:
        return icosa.inradius_for_edge(self.body_edge_length)


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def _vec(v) -> str:
    return " ".join(_fmt(float(x)) for x in v)


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rpy_from_matrix(rot: np.ndarray) -> tuple[float, float, float]:
    """URDF rpy (r, p, y) with rot = Rz(y) @ Ry(p) @ Rx(r)."""
    sp = -float(rot[2, 0])
    sp = max(-1.0, min(1.0, sp))
    pitch = math.asin(sp)
    if abs(math.cos(pitch)) < 1e-10:
        # gimbal lock: fold yaw into roll
        roll = 0.0
        yaw = math.atan2(-rot[0, 1], rot[1, 1])
    else:
        roll = math.atan2(float(rot[2, 1]), float(rot[2, 2]))
        yaw = math.atan2(float(rot[1, 0]), float(rot[0, 0]))
    return roll, pitch, yaw


def matrix_from_rpy(roll: float, pitch: float, yaw: float) -> np.ndarray:
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    )


def _inertia_attrs(ixx, iyy, izz, ixy=0.0, ixz=0.0, iyz=0.0) -> dict:
    return {
        "ixx": _fmt(ixx),
        "ixy": _fmt(ixy),
        "ixz": _fmt(ixz),
        "iyy": _fmt(iyy),
        "iyz": _fmt(iyz),
        "izz": _fmt(izz),
    }


def _add_origin(parent: ET.Element, xyz=(0.0, 0.0, 0.0), rpy=(0.0, 0.0, 0.0)) -> None:
    ET.SubElement(parent, "origin", xyz=_vec(xyz), rpy=_vec(rpy))


def _add_base_link(robot: ET.Element, geom: RobotGeometry) -> None:
    link = ET.SubElement(robot, "link", name="base")
    inertial = ET.SubElement(link, "inertial")
    _add_origin(inertial)
    ET.SubElement(inertial, "mass", value=_fmt(geom.body_mass))
    i_body = icosa.solid_inertia_coefficient() * geom.body_mass * geom.circumradius**2
    ET.SubElement(inertial, "inertia", **_inertia_attrs(i_body, i_body, i_body))

    visual = ET.SubElement(link, "visual")
    _add_origin(visual)
    vis_geom = ET.SubElement(visual, "geometry")
    ET.SubElement(vis_geom, "sphere", radius=_fmt(geom.inradius))
    material = ET.SubElement(visual, "material", name="body_gray")
    ET.SubElement(material, "color", rgba="0.7 0.7 0.72 1.0")

    for vertex in icosa.icosahedron_vertices():
        collision = ET.SubElement(link, "collision")
        _add_origin(collision, xyz=vertex * geom.circumradius)
        col_geom = ET.SubElement(collision, "geometry")
        ET.SubElement(col_geom, "sphere", radius=_fmt(geom.vertex_contact_radius))
    core = ET.SubElement(link, "collision")
    _add_origin(core)
    core_geom = ET.SubElement(core, "geometry")
    ET.SubElement(core_geom, "sphere", radius=_fmt(_CORE_SPHERE_SCALE * geom.inradius))


def _add_link_box(
    robot: ET.Element, name: str, length: float, mass: float, cross: float
) -> None:
    link = ET.SubElement(robot, "link", name=name)
    inertial = ET.SubElement(link, "inertial")
    _add_origin(inertial, xyz=(0.0, 0.0, length / 2.0))
    ET.SubElement(inertial, "mass", value=_fmt(mass))
    ixx = mass / 12.0 * (cross**2 + length**2)
    izz = mass / 12.0 * (cross**2 + cross**2)
    ET.SubElement(inertial, "inertia", **_inertia_attrs(ixx, ixx, izz))

    for tag, extra in (("visual", True), ("collision", False)):
        elem = ET.SubElement(link, tag)
        _add_origin(elem, xyz=(0.0, 0.0, length / 2.0))
        geo = ET.SubElement(elem, "geometry")
        ET.SubElement(geo, "box", size=_vec((cross, cross, length)))
        if extra:
            material = ET.SubElement(elem, "material", name="link_dark")
            ET.SubElement(material, "color", rgba="0.25 0.25 0.3 1.0")


def _add_revolute_joint(
    robot: ET.Element,
    name: str,
    parent: str,
    child: str,
    xyz,
    rot: np.ndarray,
    geom: RobotGeometry,
) -> None:
    joint = ET.SubElement(robot, "joint", name=name, type="revolute")
    _add_origin(joint, xyz=xyz, rpy=rpy_from_matrix(rot))
    ET.SubElement(joint, "parent", link=parent)
    ET.SubElement(joint, "child", link=child)
    ET.SubElement(joint, "axis", xyz="0 1 0")
    ET.SubElement(
        joint,
        "limit",
        lower=_fmt(-geom.joint_limit),
        upper=_fmt(geom.joint_limit),
        effort=_fmt(geom.joint_effort),
        velocity=_fmt(geom.joint_velocity),
    )
    ET.SubElement(joint, "dynamics", damping=_fmt(geom.joint_damping), friction="0")


def build_urdf(code: FullConfigCode, geometry: RobotGeometry | None = None) -> str:
    """URDF document text for a full configuration code. Deterministic."""
    geom = geometry if geometry is not None else RobotGeometry()
    robot = ET.Element("robot", name="reconfig_" + "_".join(str(f) for f in code.faces))
    _add_base_link(robot, geom)

    step = geom.attachment_rotation_step
    for leg in range(4):
        face = code.faces[leg]
        rotations = code.joints[3 * leg : 3 * leg + 3]
        mount_rot, mount_org = icosa.mount_frame(face, scale=geom.circumradius)
        parent_name = "base"
        origin_xyz = mount_org
        parent_rot = mount_rot
        for seg in range(3):
            link_name = f"leg{leg}_link{seg}"
            joint_name = f"leg{leg}_j{seg}"
            rot = parent_rot @ _rot_z(rotations[seg] * step)
            _add_revolute_joint(
                robot, joint_name, parent_name, link_name, origin_xyz, rot, geom
            )
            _add_link_box(
                robot,
                link_name,
                geom.link_lengths[seg],
                geom.link_masses[seg],
                geom.link_cross_section,
            )
            parent_name = link_name
            origin_xyz = np.array([0.0, 0.0, geom.link_lengths[seg]])
            parent_rot = np.eye(3)

    _indent(robot)
    return ET.tostring(robot, encoding="unicode", xml_declaration=True) + "\n"


def _indent(elem: ET.Element, level: int = 0) -> None:
    pad = "\n" + level * "  "
    if len(elem):
        if not elem.text or not elem.text.strip():
            elem.text = pad + "  "
        for child in elem:
            _indent(child, level + 1)
        if not elem.tail or not elem.tail.strip():
            elem.tail = pad
    elif level and (not elem.tail or not elem.tail.strip()):
        elem.tail = pad
