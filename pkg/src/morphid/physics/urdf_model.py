"""URDF parsing into the array form consumed by the dynamics kernels.

Supported subset: a single kinematic tree of revolute joints under a
floating root link; box and sphere collision geometry. Collision geometry is
reduced to two primitive sets:

- contact points: spheres contact the ground plane at their surface; each
  box contributes one sphere at both ends of its longest axis (radius = half
  the smallest cross dimension), which makes box links behave like
  round-tipped feet;
- self-collision capsules: one capsule per box (segment along the longest
  axis) and one degenerate capsule per sphere. Pairs of shapes on the same
  body or on directly connected bodies are excluded.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import numpy as np

from ..urdf import matrix_from_rpy


class UrdfError(ValueError):
    """Document cannot be loaded by this backend."""


@dataclass
class ArticulatedModel:
    """Tree robot in topological order; body 0 is the floating base.
    Body i (i >= 1) is connected to parent[i] by revolute joint i - 1."""

    name: str
    parent: np.ndarray  # (nb,) int, -1 for base
    r_tree: np.ndarray  # (nb, 3) joint origin in parent frame
    R_tree: np.ndarray  # (nb, 3, 3) joint origin rotation
    axis: np.ndarray  # (nb, 3) joint axis in joint frame
    mass: np.ndarray  # (nb,)
    com: np.ndarray  # (nb, 3)
    inertia_com: np.ndarray  # (nb, 3, 3) about com, body frame
    joint_lower: np.ndarray  # (nj,)
    joint_upper: np.ndarray
    joint_effort: np.ndarray
    joint_damping: np.ndarray
    cp_body: np.ndarray  # (K,) contact point body index
    cp_pos: np.ndarray  # (K, 3)
    cp_radius: np.ndarray  # (K,)
    shape_body: np.ndarray  # (S,) capsule body index
    shape_p0: np.ndarray  # (S, 3)
    shape_p1: np.ndarray
    shape_radius: np.ndarray
    pair_i: np.ndarray  # (P,) self-collision shape pairs
    pair_j: np.ndarray
    body_names: list[str] = field(default_factory=list)
    joint_names: list[str] = field(default_factory=list)

    @property
    def num_bodies(self) -> int:
        return int(self.parent.shape[0])

    @property
    def num_joints(self) -> int:
        return self.num_bodies - 1


def _parse_origin(elem: ET.Element | None) -> tuple[np.ndarray, np.ndarray]:
    if elem is None:
        return np.zeros(3), np.eye(3)
    xyz = np.array([float(v) for v in elem.get("xyz", "0 0 0").split()])
    rpy = [float(v) for v in elem.get("rpy", "0 0 0").split()]
    return xyz, matrix_from_rpy(*rpy)


def _parse_inertial(link: ET.Element) -> tuple[float, np.ndarray, np.ndarray]:
    inertial = link.find("inertial")
    if inertial is None:
        return 0.0, np.zeros(3), np.zeros((3, 3))
    xyz, rot = _parse_origin(inertial.find("origin"))
    mass = float(inertial.find("mass").get("value"))
    ie = inertial.find("inertia")
    ixx, iyy, izz = (float(ie.get(k)) for k in ("ixx", "iyy", "izz"))
    ixy, ixz, iyz = (float(ie.get(k, "0")) for k in ("ixy", "ixz", "iyz"))
    tensor = np.array([[ixx, ixy, ixz], [ixy, iyy, iyz], [ixz, iyz, izz]])
    return mass, xyz, rot @ tensor @ rot.T


def _collision_primitives(link: ET.Element):
    """Yield ("sphere", center, radius) or ("box", center, rot, size)."""
    for col in link.findall("collision"):
        xyz, rot = _parse_origin(col.find("origin"))
        geo = col.find("geometry")
        if geo is None:
            continue
        sphere = geo.find("sphere")
        box = geo.find("box")
        if sphere is not None:
            yield ("sphere", xyz, float(sphere.get("radius")))
        elif box is not None:
            size = np.array([float(v) for v in box.get("size").split()])
            yield ("box", xyz, rot, size)
        else:
            raise UrdfError("only box and sphere collision geometry is supported")


def load_urdf(urdf_text: str) -> ArticulatedModel:
    try:
        root = ET.fromstring(urdf_text)
    except ET.ParseError as exc:
        raise UrdfError(f"not valid XML: {exc}") from exc
    if root.tag != "robot":
        raise UrdfError("root element must be <robot>")

    links = {ln.get("name"): ln for ln in root.findall("link")}
    joints = root.findall("joint")
    child_names = set()
    for j in joints:
        jtype = j.get("type")
        if jtype != "revolute":
            raise UrdfError(f"unsupported joint type {jtype!r} (revolute only)")
        child_names.add(j.find("child").get("link"))
    roots = [name for name in links if name not in child_names]
    if len(roots) != 1:
        raise UrdfError(f"expected one root link, found {roots}")

    # breadth-first topological body order, preserving document joint order
    body_names = [roots[0]]
    joint_of_body: list[ET.Element | None] = [None]
    frontier = [roots[0]]
    remaining = list(joints)
    while frontier:
        current = frontier.pop(0)
        for j in list(remaining):
            if j.find("parent").get("link") == current:
                child = j.find("child").get("link")
                body_names.append(child)
                joint_of_body.append(j)
                frontier.append(child)
                remaining.remove(j)
    if remaining:
        raise UrdfError("joints do not form a single tree from the root")

    nb = len(body_names)
    index = {name: i for i, name in enumerate(body_names)}
    model = ArticulatedModel(
        name=root.get("name", "robot"),
        parent=np.full(nb, -1, dtype=np.int64),
        r_tree=np.zeros((nb, 3)),
        R_tree=np.tile(np.eye(3), (nb, 1, 1)),
        axis=np.zeros((nb, 3)),
        mass=np.zeros(nb),
        com=np.zeros((nb, 3)),
        inertia_com=np.zeros((nb, 3, 3)),
        joint_lower=np.zeros(nb - 1),
        joint_upper=np.zeros(nb - 1),
        joint_effort=np.zeros(nb - 1),
        joint_damping=np.zeros(nb - 1),
        cp_body=np.zeros(0, dtype=np.int64),
        cp_pos=np.zeros((0, 3)),
        cp_radius=np.zeros(0),
        shape_body=np.zeros(0, dtype=np.int64),
        shape_p0=np.zeros((0, 3)),
        shape_p1=np.zeros((0, 3)),
        shape_radius=np.zeros(0),
        pair_i=np.zeros(0, dtype=np.int64),
        pair_j=np.zeros(0, dtype=np.int64),
        body_names=body_names,
        joint_names=[],
    )

    cp_body, cp_pos, cp_radius = [], [], []
    sh_body, sh_p0, sh_p1, sh_radius = [], [], [], []

    for i, name in enumerate(body_names):
        link = links.get(name)
        if link is None:
            raise UrdfError(f"joint references undefined link {name!r}")
        model.mass[i], model.com[i], model.inertia_com[i] = _parse_inertial(link)
        for prim in _collision_primitives(link):
            if prim[0] == "sphere":
                _, center, radius = prim
                cp_body.append(i)
                cp_pos.append(center)
                cp_radius.append(radius)
                sh_body.append(i)
                sh_p0.append(center)
                sh_p1.append(center)
                sh_radius.append(radius)
            else:
                _, center, rot, size = prim
                k = int(np.argmax(size))
                others = [size[m] for m in range(3) if m != k]
                radius = min(others) / 2.0
                half = max(size[k] / 2.0 - radius, 0.0)
                ends = [center + rot[:, k] * half, center - rot[:, k] * half]
                for end in ends:
                    cp_body.append(i)
                    cp_pos.append(end)
                    cp_radius.append(radius)
                sh_body.append(i)
                sh_p0.append(ends[1])
                sh_p1.append(ends[0])
                sh_radius.append(radius)

    for i in range(1, nb):
        j = joint_of_body[i]
        model.parent[i] = index[j.find("parent").get("link")]
        xyz, rot = _parse_origin(j.find("origin"))
        model.r_tree[i] = xyz
        model.R_tree[i] = rot
        axis_elem = j.find("axis")
        axis = np.array(
            [float(v) for v in (axis_elem.get("xyz") if axis_elem is not None else "1 0 0").split()]
        )
        norm = np.linalg.norm(axis)
        if norm < 1e-12:
            raise UrdfError(f"zero joint axis on {j.get('name')}")
        model.axis[i] = axis / norm
        limit = j.find("limit")
        if limit is None:
            raise UrdfError(f"revolute joint {j.get('name')} missing <limit>")
        model.joint_lower[i - 1] = float(limit.get("lower", "-1e9"))
        model.joint_upper[i - 1] = float(limit.get("upper", "1e9"))
        model.joint_effort[i - 1] = float(limit.get("effort"))
        dyn = j.find("dynamics")
        model.joint_damping[i - 1] = float(dyn.get("damping", "0")) if dyn is not None else 0.0
        model.joint_names.append(j.get("name"))

    model.cp_body = np.array(cp_body, dtype=np.int64)
    model.cp_pos = np.array(cp_pos).reshape(-1, 3)
    model.cp_radius = np.array(cp_radius, dtype=np.float64)
    model.shape_body = np.array(sh_body, dtype=np.int64)
    model.shape_p0 = np.array(sh_p0).reshape(-1, 3)
    model.shape_p1 = np.array(sh_p1).reshape(-1, 3)
    model.shape_radius = np.array(sh_radius, dtype=np.float64)

    # self-collision pairs: skip same body and directly connected bodies
    pi, pj = [], []
    ns = len(sh_body)
    for a in range(ns):
        for b in range(a + 1, ns):
            ba, bb = sh_body[a], sh_body[b]
            if ba == bb:
                continue
            if model.parent[ba] == bb or model.parent[bb] == ba:
                continue
            pi.append(a)
            pj.append(b)
    model.pair_i = np.array(pi, dtype=np.int64)
    model.pair_j = np.array(pj, dtype=np.int64)
    return model
