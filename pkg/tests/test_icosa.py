"""Tests for the canonical icosahedron geometry."""
import itertools

import numpy as np

from morphid import icosa


def test_vertex_and_face_counts():
    assert icosa.icosahedron_vertices().shape == (12, 3)
    assert icosa.icosahedron_faces().shape == (20, 3)


def test_unit_circumradius():
    r = np.linalg.norm(icosa.icosahedron_vertices(), axis=1)
    np.testing.assert_allclose(r, 1.0, atol=1e-12)


def test_all_faces_equilateral():
    v = icosa.icosahedron_vertices()
    edge = icosa.circumradius_for_edge(1.0) ** -1  # edge for unit circumradius
    for face in icosa.icosahedron_faces():
        pts = v[face]
        for i, j in itertools.combinations(range(3), 2):
            np.testing.assert_allclose(np.linalg.norm(pts[i] - pts[j]), edge, atol=1e-12)


def test_faces_wind_outward():
    v = icosa.icosahedron_vertices()
    for face in icosa.icosahedron_faces():
        a, b, c = v[face]
        n = np.cross(b - a, c - a)
        assert np.dot(n, (a + b + c) / 3.0) > 0


def test_band_structure():
    bands = icosa.face_bands()
    assert (bands[:5] == icosa.BAND_TOP).all()
    assert (bands[5:15] == icosa.BAND_MID).all()
    assert (bands[15:] == icosa.BAND_BOTTOM).all()


def test_numbering_counterclockwise_within_bands():
    c = icosa.face_centroids()
    az = np.rad2deg(np.arctan2(c[:, 1], c[:, 0])) % 360.0
    for lo, hi in ((0, 5), (5, 15), (15, 20)):
        assert (np.diff(az[lo:hi]) > 0).all()


def test_candidate_faces_off_plane_middle_bottom():
    c = icosa.face_centroids()
    bands = icosa.face_bands()
    cand = icosa.candidate_faces()
    assert len(cand) == 12
    for f in cand:
        assert bands[f] in (icosa.BAND_MID, icosa.BAND_BOTTOM)
        assert abs(c[f, 0]) > 1e-9
    assert len(icosa.same_side_faces()) == 6
    assert all(c[f, 0] > 0 for f in icosa.same_side_faces())


def test_mirror_map_fixed_points_are_on_plane_only():
    c = icosa.face_centroids()
    for i, j in enumerate(icosa.face_mirror_map()):
        if i == j:
            assert abs(c[i, 0]) < 1e-9
            assert i not in icosa.candidate_faces()
        else:
            np.testing.assert_allclose(c[j], c[i] * [-1, 1, 1], atol=1e-12)


def test_mount_frames_are_orthonormal_and_outward():
    for f in range(20):
        rot, origin = icosa.mount_frame(f)
        np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.linalg.det(rot), 1.0, atol=1e-12)
        # z column is the outward normal
        assert np.dot(rot[:, 2], origin) > 0


def test_mount_frames_mirror_consistently():
    """Mirrored face frame = sagittal reflection of the original with the
    y axis flipped (proper rotation)."""
    M = np.diag([-1.0, 1.0, 1.0])
    F = np.diag([1.0, -1.0, 1.0])
    for f in icosa.candidate_faces():
        g = icosa.face_mirror_map()[f]
        rot_f, org_f = icosa.mount_frame(f)
        rot_g, org_g = icosa.mount_frame(g)
        np.testing.assert_allclose(org_g, M @ org_f, atol=1e-12)
        np.testing.assert_allclose(rot_g, M @ rot_f @ F, atol=1e-12)


def test_radii_helpers():
    # icosahedron with edge 2/phi^2... just pin against closed forms
    a = 0.08
    np.testing.assert_allclose(icosa.circumradius_for_edge(a), 0.9510565163 * a, rtol=1e-9)
    np.testing.assert_allclose(icosa.inradius_for_edge(a), 0.7557613141 * a, rtol=1e-8)
    assert icosa.inradius_for_edge(a) < icosa.circumradius_for_edge(a)


def test_shipped_face_table_matches_computed():
    shipped = icosa.load_shipped_face_table()
    computed = icosa.build_face_table()
    assert shipped == computed
