"""Canonical icosahedron geometry for the reconfigurable robot body.

Orientation and numbering are frozen as follows (unit circumradius, z up):

- poles: one vertex at +z ("top"), one at -z ("bottom")
- upper vertex ring at z = 1/sqrt(5), azimuths 18 + 72k degrees
- lower vertex ring at z = -1/sqrt(5), azimuths 54 + 72k degrees

With this azimuthal offset the sagittal plane x = 0 is an exact reflection
symmetry of the solid. Faces fall into three bands: 5 top-cap faces touching
the top vertex, 10 mid-band faces, 5 bottom-cap faces. Faces are numbered
band-major, counterclockwise (ascending azimuth viewed from +z) within each
band:

    0..4   top cap      (centroid azimuths  54, 126, 198, 270, 342 deg)
    5..14  mid band     (centroid azimuths  18,  54, ...,      342 deg)
    15..19 bottom cap   (centroid azimuths  18,  90, 162, 234, 306 deg)

Exactly three middle/bottom-band faces have centroids on the sagittal plane
(mid faces 7 and 12, bottom face 16); they mirror onto themselves and are
excluded from the default leg-candidate set. The remaining 12 middle/bottom
faces form the default candidate set, of which the 6 with centroid x > 0 are
the "same side" set used by the half configuration code.

The table is shipped as data/icosahedron_faces_v1.json; a regression test
pins the computed geometry to that file.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

FACE_TABLE_VERSION = 1

# band ids
BAND_TOP = 0
BAND_MID = 1
BAND_BOTTOM = 2

_PLANE_TOL = 1e-9


def icosahedron_vertices() -> np.ndarray:
    """12 vertices of the canonical unit-circumradius icosahedron, (12, 3)."""
    verts = [(0.0, 0.0, 1.0)]
    zu = 1.0 / np.sqrt(5.0)
    ru = 2.0 / np.sqrt(5.0)
    for k in range(5):
        az = np.deg2rad(18.0 + 72.0 * k)
        verts.append((ru * np.cos(az), ru * np.sin(az), zu))
    for k in range(5):
        az = np.deg2rad(54.0 + 72.0 * k)
        verts.append((ru * np.cos(az), ru * np.sin(az), -zu))
    verts.append((0.0, 0.0, -1.0))
    return np.asarray(verts, dtype=np.float64)


def _azimuth_deg(p: np.ndarray) -> float:
    az = np.rad2deg(np.arctan2(p[1], p[0]))
    return float(az % 360.0)


@lru_cache(maxsize=1)
def icosahedron_faces() -> np.ndarray:
    """(20, 3) vertex indices, canonical numbering, CCW seen from outside."""
    v = icosahedron_vertices()
    top, bottom = 0, 11
    upper = list(range(1, 6))
    lower = list(range(6, 11))

    raw: list[tuple[int, int, int]] = []
    for k in range(5):
        raw.append((top, upper[k], upper[(k + 1) % 5]))
    for k in range(5):
        raw.append((upper[k], upper[(k + 1) % 5], lower[k]))
        raw.append((lower[(k - 1) % 5], lower[k], upper[k]))
    for k in range(5):
        raw.append((bottom, lower[k], lower[(k + 1) % 5]))

    # orient every face outward (CCW from outside)
    oriented = []
    for f in raw:
        a, b, c = (v[i] for i in f)
        n = np.cross(b - a, c - a)
        if np.dot(n, (a + b + c) / 3.0) < 0:
            f = (f[0], f[2], f[1])
        oriented.append(f)

    # band of a face: top cap contains vertex 0, bottom cap vertex 11
    def band(f: tuple[int, int, int]) -> int:
        if top in f:
            return BAND_TOP
        if bottom in f:
            return BAND_BOTTOM
        return BAND_MID

    def sort_key(f: tuple[int, int, int]) -> tuple[int, float]:
        centroid = v[list(f)].mean(axis=0)
        return (band(f), _azimuth_deg(centroid))

    oriented.sort(key=sort_key)
    return np.asarray(oriented, dtype=np.int64)


@lru_cache(maxsize=1)
def face_centroids() -> np.ndarray:
    v = icosahedron_vertices()
    return v[icosahedron_faces()].mean(axis=1)


@lru_cache(maxsize=1)
def face_normals() -> np.ndarray:
    """Outward unit normals, (20, 3)."""
    c = face_centroids()
    return c / np.linalg.norm(c, axis=1, keepdims=True)


@lru_cache(maxsize=1)
def face_bands() -> np.ndarray:
    faces = icosahedron_faces()
    bands = np.full(20, BAND_MID, dtype=np.int64)
    bands[np.any(faces == 0, axis=1)] = BAND_TOP
    bands[np.any(faces == 11, axis=1)] = BAND_BOTTOM
    return bands


@lru_cache(maxsize=1)
def face_mirror_map() -> tuple[int, ...]:
    """Face index -> mirrored face index, built by reflecting centroids
    across the sagittal plane (x -> -x) and matching the nearest centroid.
    """
    c = face_centroids()
    reflected = c * np.array([-1.0, 1.0, 1.0])
    mapping = []
    for i in range(20):
        d = np.linalg.norm(c - reflected[i], axis=1)
        j = int(np.argmin(d))
        if d[j] > 1e-6:
            raise RuntimeError(f"no mirror partner for face {i} (min dist {d[j]:.3g})")
        mapping.append(j)
    for i, j in enumerate(mapping):
        if mapping[j] != i:
            raise RuntimeError("face mirror map is not an involution")
    return tuple(mapping)


@lru_cache(maxsize=1)
def candidate_faces() -> tuple[int, ...]:
    """Default 12 leg-attachment candidates: every middle/bottom-band face
    whose centroid lies strictly off the sagittal plane."""
    c = face_centroids()
    bands = face_bands()
    out = [
        i
        for i in range(20)
        if bands[i] in (BAND_MID, BAND_BOTTOM) and abs(c[i, 0]) > _PLANE_TOL
    ]
    return tuple(out)


@lru_cache(maxsize=1)
def same_side_faces() -> tuple[int, ...]:
    """The 6 candidate faces with centroid x > 0, ascending face index."""
    c = face_centroids()
    return tuple(i for i in candidate_faces() if c[i, 0] > 0)


def mount_frame(face: int, scale: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Leg attachment frame on a face: origin at the face centroid (scaled),
    z axis = outward normal, x axis = world +z projected into the face plane,
    y = z cross x. Returns (rotation matrix with frame axes as columns, origin).
    """
    n = face_normals()[face]
    up = np.array([0.0, 0.0, 1.0])
    t = up - np.dot(up, n) * n
    tn = np.linalg.norm(t)
    if tn < 1e-12:
        raise ValueError(f"face {face} normal is vertical; tangent undefined")
    x = t / tn
    y = np.cross(n, x)
    rot = np.column_stack([x, y, n])
    return rot, face_centroids()[face] * scale


@lru_cache(maxsize=1)
def solid_inertia_coefficient() -> float:
    """I / (m * R^2) for a uniform solid icosahedron of circumradius R.

    Icosahedral symmetry makes the inertia tensor isotropic, so one scalar
    suffices. Computed by decomposing the solid into 20 center-face
    tetrahedra and summing their second moments.
    """
    v = icosahedron_vertices()
    total_volume = 0.0
    second_moment = np.zeros((3, 3))
    for face in icosahedron_faces():
        v1, v2, v3 = v[face]
        vol = abs(np.dot(v1, np.cross(v2, v3))) / 6.0
        s = v1 + v2 + v3
        cov = (
            np.outer(v1, v1)
            + np.outer(v2, v2)
            + np.outer(v3, v3)
            + np.outer(s, s)
        ) * (vol / 20.0)
        total_volume += vol
        second_moment += cov
    inertia = np.trace(second_moment) * np.eye(3) - second_moment
    coeff = np.diag(inertia) / total_volume  # per unit mass, R = 1
    if not np.allclose(coeff, coeff[0], atol=1e-12):
        raise RuntimeError("icosahedron inertia should be isotropic")
    return float(coeff[0])


def circumradius_for_edge(edge_length: float) -> float:
    """Circumradius of an icosahedron with the given edge length."""
    return edge_length / 4.0 * np.sqrt(10.0 + 2.0 * np.sqrt(5.0))


def inradius_for_edge(edge_length: float) -> float:
    """Inscribed-sphere radius (center to face plane)."""
    return edge_length * np.sqrt(3.0) / 12.0 * (3.0 + np.sqrt(5.0))


def build_face_table() -> dict:
    """The published face/vertex table (unit circumradius)."""
    return {
        "version": FACE_TABLE_VERSION,
        "convention": (
            "unit circumradius, z up, sagittal plane x=0; faces numbered "
            "band-major (top cap, mid band, bottom cap), counterclockwise "
            "by centroid azimuth within each band"
        ),
        "vertices": [[round(x, 12) for x in p] for p in icosahedron_vertices()],
        "faces": icosahedron_faces().tolist(),
        "bands": face_bands().tolist(),
        "centroids": [[round(x, 12) for x in p] for p in face_centroids()],
        "face_mirror": list(face_mirror_map()),
        "candidate_faces": list(candidate_faces()),
        "same_side_faces": list(same_side_faces()),
    }


def load_shipped_face_table() -> dict:
    """The versioned face table shipped with the package."""
    path = resources.files("morphid.data").joinpath(
        f"icosahedron_faces_v{FACE_TABLE_VERSION}.json"
    )
    return json.loads(path.read_text())


def emit_face_table(path: str) -> None:
    with open(path, "w") as fh:
        json.dump(build_face_table(), fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    import sys

    emit_face_table(sys.argv[1] if len(sys.argv) > 1 else "icosahedron_faces.json")
