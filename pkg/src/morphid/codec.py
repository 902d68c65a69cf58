"""Configuration naming scheme for the reconfigurable legged robot family.

A robot is named by an integer vector. One body side is described by a
*half code*: an ordered pair of attachment faces (from the 6-element
same-side candidate set, see `morphid.icosa`) plus 6 link-rotation indices,
each in [0, 12) in steps of 30 degrees. The opposite side is fully
determined by a mirror map, so the *full code* (4 faces + 12 rotations) is
derived, never stored.

Serialized half-code layout (one code per line, comma separated):

    face_a, j1, j2, j3, face_b, j4, j5, j6

where (j1, j2, j3) are the inner/middle/outer rotation indices of the leg
on face_a and (j4, j5, j6) those of the leg on face_b.

Rotation indices live on a circle: distance between index 0 and 11 is 1,
the largest possible distance is 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

import numpy as np

from . import icosa

JOINT_OPTIONS = 12
JOINTS_PER_SIDE = 6
LEG_PATTERNS = 30


class CodecError(ValueError):
    """Invalid configuration code or mirror table."""


@dataclass(frozen=True)
class MirrorTable:
    """Involutive maps taking faces and rotation indices to their mirror."""

    face_map: tuple[int, ...]
    joint_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.face_map) != 20:
            raise CodecError("face_map must cover all 20 faces")
        if len(self.joint_map) != JOINT_OPTIONS:
            raise CodecError("joint_map must cover all 12 rotation indices")
        for name, m in (("face_map", self.face_map), ("joint_map", self.joint_map)):
            for i, j in enumerate(m):
                if not 0 <= j < len(m) or m[j] != i:
                    raise CodecError(f"{name} is not an involution at index {i}")


def default_mirror_table() -> MirrorTable:
    """Face map from sagittal-plane reflection of the canonical icosahedron;
    joint map j -> (12 - j) mod 12 (reflection reverses rotation sense)."""
    joint_map = tuple((JOINT_OPTIONS - j) % JOINT_OPTIONS for j in range(JOINT_OPTIONS))
    return MirrorTable(face_map=icosa.face_mirror_map(), joint_map=joint_map)


DEFAULT_MIRROR_TABLE = default_mirror_table()
SAME_SIDE_FACES = icosa.same_side_faces()
CANDIDATE_FACES = icosa.candidate_faces()


@dataclass(frozen=True)
class HalfConfigCode:
    """One body side: ordered face pair + 6 link-rotation indices."""

    faces: tuple[int, int]
    joints: tuple[int, int, int, int, int, int]

    def __post_init__(self) -> None:
        if len(self.faces) != 2 or len(self.joints) != JOINTS_PER_SIDE:
            raise CodecError("half code needs 2 faces and 6 joint indices")

    def as_ints(self) -> tuple[int, ...]:
        """Serialized layout [face_a, j1, j2, j3, face_b, j4, j5, j6]."""
        fa, fb = self.faces
        j = self.joints
        return (fa, j[0], j[1], j[2], fb, j[3], j[4], j[5])

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "HalfConfigCode":
        vals = [int(v) for v in values]
        if len(vals) != 8:
            raise CodecError(f"half code needs 8 integers, got {len(vals)}")
        return cls(
            faces=(vals[0], vals[4]),
            joints=(vals[1], vals[2], vals[3], vals[5], vals[6], vals[7]),
        )


@dataclass(frozen=True)
class FullConfigCode:
    """Both sides: faces [a, b, m(a), m(b)], joints [side .. mirrored side]."""

    faces: tuple[int, int, int, int]
    joints: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.faces) != 4 or len(self.joints) != 2 * JOINTS_PER_SIDE:
            raise CodecError("full code needs 4 faces and 12 joint indices")
        if len(set(self.faces)) != 4:
            raise CodecError("full-code faces must be distinct")


def validate_half(
    code: HalfConfigCode, same_side: tuple[int, ...] = SAME_SIDE_FACES
) -> bool:
    """True iff faces are distinct members of the same-side candidate set and
    every rotation index is in [0, 12)."""
    fa, fb = code.faces
    if fa == fb or fa not in same_side or fb not in same_side:
        return False
    return all(0 <= j < JOINT_OPTIONS for j in code.joints)


def _require_valid(code: HalfConfigCode, same_side: tuple[int, ...]) -> None:
    if not validate_half(code, same_side):
        raise CodecError(f"invalid half code {code.as_ints()}")


def mirror_half(
    code: HalfConfigCode,
    table: MirrorTable = DEFAULT_MIRROR_TABLE,
    same_side: tuple[int, ...] = SAME_SIDE_FACES,
) -> HalfConfigCode:
    """The other body side's half code. Involution: mirroring twice is
    identity, so codes from either side are accepted."""
    other_side = tuple(sorted(table.face_map[f] for f in same_side))
    if not (validate_half(code, same_side) or validate_half(code, other_side)):
        raise CodecError(f"invalid half code {code.as_ints()}")
    out = HalfConfigCode(
        faces=(table.face_map[code.faces[0]], table.face_map[code.faces[1]]),
        joints=tuple(table.joint_map[j] for j in code.joints),
    )
    if not (validate_half(out, same_side) or validate_half(out, other_side)):
        raise CodecError("mirror table does not map the candidate set onto itself")
    return out


def expand_full(
    code: HalfConfigCode,
    table: MirrorTable = DEFAULT_MIRROR_TABLE,
    same_side: tuple[int, ...] = SAME_SIDE_FACES,
) -> FullConfigCode:
    """[faces; mirrored faces; joints; mirrored joints]."""
    _require_valid(code, same_side)
    fm = table.face_map
    jm = table.joint_map
    return FullConfigCode(
        faces=(code.faces[0], code.faces[1], fm[code.faces[0]], fm[code.faces[1]]),
        joints=code.joints + tuple(jm[j] for j in code.joints),
    )


def contract_half(
    full: FullConfigCode,
    table: MirrorTable = DEFAULT_MIRROR_TABLE,
    same_side: tuple[int, ...] = SAME_SIDE_FACES,
) -> HalfConfigCode:
    """Recover the half code; raises if the symmetry constraint is violated."""
    fm = table.face_map
    jm = table.joint_map
    if full.faces[2] != fm[full.faces[0]] or full.faces[3] != fm[full.faces[1]]:
        raise CodecError("full code violates the face mirror constraint")
    for k in range(JOINTS_PER_SIDE):
        if full.joints[JOINTS_PER_SIDE + k] != jm[full.joints[k]]:
            raise CodecError("full code violates the joint mirror constraint")
    half = HalfConfigCode(faces=(full.faces[0], full.faces[1]), joints=full.joints[:6])
    _require_valid(half, same_side)
    return half


def circular_joint_distance(a: int, b: int) -> int:
    """min(|a-b|, 12-|a-b|): L1 distance on the 12-index rotation circle."""
    if not (0 <= a < JOINT_OPTIONS and 0 <= b < JOINT_OPTIONS):
        raise CodecError(f"rotation indices must be in [0, 12), got ({a}, {b})")
    d = abs(a - b)
    return min(d, JOINT_OPTIONS - d)


def leg_pattern_index(
    faces: tuple[int, int], same_side: tuple[int, ...] = SAME_SIDE_FACES
) -> int:
    """Rank of an ordered distinct same-side face pair, in [0, 30).

    index = 5*rank(a) + (rank(b) if rank(b) < rank(a) else rank(b) - 1),
    with rank = position in the sorted candidate set.
    """
    fa, fb = faces
    if fa == fb:
        raise CodecError("leg pattern faces must be distinct")
    order = sorted(same_side)
    try:
        ra, rb = order.index(fa), order.index(fb)
    except ValueError as exc:
        raise CodecError(f"face pair {faces} outside candidate set {order}") from exc
    return 5 * ra + (rb if rb < ra else rb - 1)


def leg_pattern_from_index(
    index: int, same_side: tuple[int, ...] = SAME_SIDE_FACES
) -> tuple[int, int]:
    """Inverse of leg_pattern_index."""
    if not 0 <= index < LEG_PATTERNS:
        raise CodecError(f"leg pattern index must be in [0, 30), got {index}")
    order = sorted(same_side)
    ra, rem = divmod(index, 5)
    rb = rem if rem < ra else rem + 1
    return (order[ra], order[rb])


def count_config_space(joint_options: int = JOINT_OPTIONS) -> int:
    """Size of the symmetric (half-code) robot family: 30 * joint_options^6."""
    return LEG_PATTERNS * joint_options**JOINTS_PER_SIDE


def count_config_space_full() -> int:
    """Unconstrained family size (no symmetry): C(20,4) * 12^12. Documentation
    figure only; the pipeline always works in the symmetric family."""
    return comb(20, 4) * JOINT_OPTIONS ** (2 * JOINTS_PER_SIDE)


def random_half_code(
    rng: np.random.Generator, same_side: tuple[int, ...] = SAME_SIDE_FACES
) -> HalfConfigCode:
    """Uniformly random valid half code (uniform over the 30 ordered face
    pairs and over rotation indices). Deterministic for a fixed generator."""
    pattern = int(rng.integers(0, LEG_PATTERNS))
    joints = tuple(int(v) for v in rng.integers(0, JOINT_OPTIONS, size=JOINTS_PER_SIDE))
    return HalfConfigCode(faces=leg_pattern_from_index(pattern, same_side), joints=joints)


def format_half_code(code: HalfConfigCode) -> str:
    return ",".join(str(v) for v in code.as_ints())


def parse_half_code(line: str) -> HalfConfigCode:
    try:
        values = [int(tok) for tok in line.strip().split(",")]
    except ValueError as exc:
        raise CodecError(f"unparseable code line: {line!r}") from exc
    return HalfConfigCode.from_ints(values)
