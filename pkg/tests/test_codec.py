"""Tests for the configuration coding scheme."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphid.codec import (
    DEFAULT_MIRROR_TABLE,
    SAME_SIDE_FACES,
    CodecError,
    FullConfigCode,
    HalfConfigCode,
    MirrorTable,
    circular_joint_distance,
    contract_half,
    count_config_space,
    count_config_space_full,
    expand_full,
    format_half_code,
    leg_pattern_from_index,
    leg_pattern_index,
    mirror_half,
    parse_half_code,
    random_half_code,
    validate_half,
)


def make_half(faces=(5, 6), joints=(0, 0, 0, 0, 0, 0)):
    return HalfConfigCode(faces=faces, joints=joints)


half_codes = st.builds(
    make_half,
    faces=st.permutations(list(SAME_SIDE_FACES)).map(lambda p: (p[0], p[1])),
    joints=st.tuples(*[st.integers(0, 11)] * 6),
)


def test_validate_half():
    assert validate_half(make_half((5, 6), (0, 0, 0, 0, 0, 0)))
    assert not validate_half(make_half((5, 5), (0, 0, 0, 0, 0, 0)))
    assert not validate_half(make_half((5, 6), (0, 0, 12, 0, 0, 0)))
    assert not validate_half(make_half((5, 6), (0, 0, -1, 0, 0, 0)))
    # face outside the candidate set (0 is a top-cap face)
    assert not validate_half(make_half((0, 6), (0, 0, 0, 0, 0, 0)))
    # face from the opposite side
    assert not validate_half(make_half((9, 6), (0, 0, 0, 0, 0, 0)))


def test_mirror_table_is_involution():
    for i, j in enumerate(DEFAULT_MIRROR_TABLE.face_map):
        assert DEFAULT_MIRROR_TABLE.face_map[j] == i
    for i, j in enumerate(DEFAULT_MIRROR_TABLE.joint_map):
        assert DEFAULT_MIRROR_TABLE.joint_map[j] == i


def test_mirror_table_rejects_non_involution():
    bad_face = list(DEFAULT_MIRROR_TABLE.face_map)
    bad_face[5], bad_face[6] = 6, 5  # 5->6 but 6->5 breaks partners 8/9
    bad_face[8] = 9
    with pytest.raises(CodecError):
        MirrorTable(face_map=tuple(bad_face), joint_map=DEFAULT_MIRROR_TABLE.joint_map)


def test_face_map_matches_geometric_reflection():
    """Independent oracle: reflect face centroids across x=0 and match the
    nearest centroid, without going through the shipped table."""
    from morphid import icosa

    c = icosa.face_centroids()
    for i in range(20):
        mirrored = c[i] * np.array([-1.0, 1.0, 1.0])
        expect = int(np.argmin(np.linalg.norm(c - mirrored, axis=1)))
        assert DEFAULT_MIRROR_TABLE.face_map[i] == expect


@given(half_codes)
@settings(max_examples=200, deadline=None)
def test_mirror_involution(code):
    assert mirror_half(mirror_half(code)) == code


def test_mirror_constant_joint_vector_maps_pointwise():
    code = make_half((5, 6), (0,) * 6)
    mirrored = mirror_half(code)
    expected = DEFAULT_MIRROR_TABLE.joint_map[0]
    assert mirrored.joints == (expected,) * 6


def test_mirror_rejects_invalid():
    with pytest.raises(CodecError):
        mirror_half(make_half((5, 5), (0,) * 6))


def test_expand_full_layout():
    code = make_half((5, 6), (1, 2, 3, 4, 5, 6))
    full = expand_full(code)
    jm = DEFAULT_MIRROR_TABLE.joint_map
    assert full.joints == (1, 2, 3, 4, 5, 6) + tuple(jm[j] for j in (1, 2, 3, 4, 5, 6))
    fm = DEFAULT_MIRROR_TABLE.face_map
    assert full.faces == (5, 6, fm[5], fm[6])


@given(half_codes)
@settings(max_examples=300, deadline=None)
def test_expand_contract_round_trip(code):
    assert contract_half(expand_full(code)) == code


def test_round_trip_many_random_codes():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        code = random_half_code(rng)
        assert contract_half(expand_full(code)) == code


def test_contract_rejects_mutated_full_code():
    full = expand_full(make_half((5, 6), (1, 2, 3, 4, 5, 6)))
    joints = list(full.joints)
    joints[7] = (joints[7] + 1) % 12
    broken = FullConfigCode(faces=full.faces, joints=tuple(joints))
    with pytest.raises(CodecError):
        contract_half(broken)
    faces = list(full.faces)
    faces[2], faces[3] = faces[3], faces[2]
    with pytest.raises(CodecError):
        contract_half(FullConfigCode(faces=tuple(faces), joints=full.joints))


def test_circular_distance_values():
    assert circular_joint_distance(0, 11) == 1
    assert circular_joint_distance(0, 6) == 6
    assert circular_joint_distance(5, 5) == 0


def test_circular_distance_rejects_out_of_range():
    with pytest.raises(CodecError):
        circular_joint_distance(0, 12)
    with pytest.raises(CodecError):
        circular_joint_distance(-1, 3)


def test_circular_distance_exhaustive_properties():
    for a in range(12):
        for b in range(12):
            d = circular_joint_distance(a, b)
            assert 0 <= d <= 6
            assert d == circular_joint_distance(b, a)
            assert (d == 0) == (a == b)
    for a, b, c in itertools.product(range(12), repeat=3):
        assert circular_joint_distance(a, c) <= (
            circular_joint_distance(a, b) + circular_joint_distance(b, c)
        )


def test_leg_pattern_first_pair_is_zero():
    order = sorted(SAME_SIDE_FACES)
    assert leg_pattern_index((order[0], order[1])) == 0


def test_leg_pattern_bijection():
    seen = set()
    for fa, fb in itertools.permutations(SAME_SIDE_FACES, 2):
        idx = leg_pattern_index((fa, fb))
        assert 0 <= idx < 30
        seen.add(idx)
        assert leg_pattern_from_index(idx) == (fa, fb)
    assert len(seen) == 30


def test_leg_pattern_rejects_bad_faces():
    with pytest.raises(CodecError):
        leg_pattern_index((5, 5))
    with pytest.raises(CodecError):
        leg_pattern_index((0, 5))
    with pytest.raises(CodecError):
        leg_pattern_from_index(30)


def test_config_space_counts():
    assert count_config_space() == 89_579_520
    assert count_config_space() == 30 * 12**6
    assert count_config_space_full() == 4845 * 12**12
    assert abs(count_config_space_full() - 4.32e16) / 4.32e16 < 5e-3
    assert count_config_space(joint_options=1) == 30


def test_random_half_code_deterministic():
    a = random_half_code(np.random.default_rng(123))
    b = random_half_code(np.random.default_rng(123))
    assert a == b


def test_random_half_code_coverage():
    rng = np.random.default_rng(0)
    joint_counts = np.zeros(12, dtype=int)
    pattern_counts = np.zeros(30, dtype=int)
    n = 10_000
    for _ in range(n):
        code = random_half_code(rng)
        assert validate_half(code)
        for j in code.joints:
            joint_counts[j] += 1
        pattern_counts[leg_pattern_index(code.faces)] += 1
    assert (joint_counts > 0).all()
    assert (pattern_counts > 0).all()
    # chi-square sanity for the joint marginal: 6n draws over 12 bins
    expected = 6 * n / 12
    chi2 = float(((joint_counts - expected) ** 2 / expected).sum())
    assert chi2 < 40.0  # df=11, far beyond the 0.999 quantile only on failure


def test_code_text_round_trip():
    code = make_half((13, 5), (11, 0, 3, 7, 2, 9))
    line = format_half_code(code)
    assert line == "13,11,0,3,5,7,2,9"
    assert parse_half_code(line) == code
    with pytest.raises(CodecError):
        parse_half_code("1,2,3")
    with pytest.raises(CodecError):
        parse_half_code("a,b,c,d,e,f,g,h")
