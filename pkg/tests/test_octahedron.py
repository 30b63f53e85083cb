from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octaglue.octahedron import (
    OCTAHEDRON,
    SYMMETRIES,
    FaceGluingMap,
    GluingPattern,
    build_octahedron,
    canonical_pattern,
    enumerate_patterns,
    face_gluing_maps,
    is_cyclic_rotation,
    pattern_orbit,
    symmetry_group,
)

# vertex positions: poles 0 and 5, equator 1..4 counter-clockwise
POSITIONS = np.array([(0, 0, 1), (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0), (0, 0, -1)])


def face_of(*vertices):
    return OCTAHEDRON.face_index[frozenset(vertices)]


def test_face_set():
    o = build_octahedron()
    expected = {frozenset((i, j, j % 4 + 1)) for i in (0, 5) for j in range(1, 5)}
    assert {frozenset(f) for f in o.faces} == expected
    assert (0, 1, 2) in o.faces
    assert len(o.edges) == 12
    assert o.euler_characteristic() == 2


def test_every_edge_in_two_faces_with_opposite_directions():
    directed = Counter((f[i], f[(i + 1) % 3]) for f in OCTAHEDRON.faces for i in range(3))
    assert all(n == 1 for n in directed.values())
    for a, b in OCTAHEDRON.edges:
        assert directed[(a, b)] == directed[(b, a)] == 1
        assert len(OCTAHEDRON.faces_of_edge((a, b))) == 2


def test_face_orientations_point_outward():
    for f in OCTAHEDRON.faces:
        a, b, c = POSITIONS[list(f)]
        normal = np.cross(b - a, c - a)
        assert normal @ (a + b + c) > 0


def test_symmetry_group():
    group = symmetry_group(OCTAHEDRON)
    assert len(group) == 48
    perms = {g.perm for g in group}
    assert len(perms) == 48
    identity = next(g for g in group if g.perm == tuple(range(6)))
    assert identity.sign == 1 and identity.face_map == tuple(range(8))
    for g in group:
        for h in group:
            assert g.compose(h).perm in perms


def test_orientation_sign_matches_determinant():
    # the linear map carrying v1, v2, v0 to their images is a signed permutation matrix
    signs = Counter()
    for g in SYMMETRIES:
        basis = POSITIONS[[1, 2, 0]].T
        image = POSITIONS[[g(1), g(2), g(0)]].T
        m = image @ np.linalg.inv(basis)
        for v in range(6):
            assert np.allclose(m @ POSITIONS[v], POSITIONS[g(v)])
        det = round(np.linalg.det(m))
        assert det == g.sign
        signs[det] += 1
    assert signs == {1: 24, -1: 24}


def test_three_orientation_reversing_maps_per_pair():
    for a in range(8):
        for b in range(8):
            if a == b:
                continue
            maps = face_gluing_maps(a, b)
            assert len(maps) == 3
            images = {tuple(m.vertex_map[v] for v in OCTAHEDRON.faces[a]) for m in maps}
            assert len(images) == 3
            reversed_target = OCTAHEDRON.faces[b][::-1]
            assert all(is_cyclic_rotation(img, reversed_target) for img in images)


def test_paper_gluing_examples():
    top = face_of(0, 1, 2)
    accepted = [{0: 0, 1: 3, 2: 2}, {0: 5, 1: 1, 2: 2}]
    rejected = [{0: 0, 1: 2, 2: 3}, {0: 5, 1: 2, 2: 1}]
    for mapping in accepted:
        target = face_of(*mapping.values())
        m = FaceGluingMap.from_vertex_map(top, target, mapping)
        assert m in face_gluing_maps(top, target)
        assert m.vertex_map == mapping
    for mapping in rejected:
        with pytest.raises(ValueError):
            FaceGluingMap.from_vertex_map(top, face_of(*mapping.values()), mapping)


def test_self_gluing_rejected():
    with pytest.raises(ValueError):
        face_gluing_maps(3, 3)


def test_two_maps_differ_by_a_rotation():
    for a, b in [(0, 1), (0, 4), (2, 7), (5, 6)]:
        maps = face_gluing_maps(a, b)
        for m in maps:
            for n in maps:
                inv = n.inverse()
                composite = {v: inv.vertex_map[m.vertex_map[v]] for v in OCTAHEDRON.faces[a]}
                image = tuple(composite[v] for v in OCTAHEDRON.faces[a])
                assert is_cyclic_rotation(image, OCTAHEDRON.faces[a])
                assert (image == OCTAHEDRON.faces[a]) == (m == n)


def test_inverse_roundtrip():
    for r in range(3):
        m = FaceGluingMap(1, 6, r)
        assert m.inverse().inverse() == m
        assert {w: v for v, w in m.vertex_map.items()} == m.inverse().vertex_map


def test_enumeration(patterns):
    assert len(patterns) == 8505
    assert len(set(patterns)) == 8505
    assert len({p.matching for p in patterns}) == 105
    assert patterns == sorted(patterns)
    for p in patterns[::97]:
        assert sorted(f for pair in p.matching for f in pair) == list(range(8))


def test_ident_roundtrip(patterns):
    for p in patterns[::53]:
        assert GluingPattern.parse(p.ident()) == p
    assert str(GluingPattern.from_encoding([(6, 7, 2), (0, 1, 2), (2, 3, 0), (4, 5, 1)])) == "01r2|23r0|45r1|67r2"


def test_invalid_patterns_rejected():
    with pytest.raises(ValueError):
        GluingPattern.from_encoding([(0, 1, 0), (1, 2, 0), (4, 5, 0), (6, 7, 0)])
    with pytest.raises(ValueError):
        FaceGluingMap(0, 1, 3)


def test_canonical_class_count(patterns):
    assert len({canonical_pattern(p) for p in patterns}) == 298


def test_burnside_count(patterns):
    fixed = sum(p.act(g) == p for g in SYMMETRIES for p in patterns)
    assert fixed % 48 == 0
    assert fixed // 48 == 298


def test_orbit_partition(classes):
    assert len(classes) == 298
    assert sum(classes.values()) == 8505
    assert all(48 % size == 0 for size in classes.values())
    assert min(classes.values()) < 48
    assert list(classes) == sorted(classes)


def test_orbit_sizes_match_stabilizers(classes):
    for phi, size in list(classes.items())[::17]:
        stabilizer = sum(phi.act(g) == phi for g in SYMMETRIES)
        assert stabilizer * size == 48
        assert len(pattern_orbit(phi)) == size


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_action_is_well_defined_and_canonical_is_invariant(patterns, data):
    phi = data.draw(st.sampled_from(patterns))
    g = data.draw(st.sampled_from(SYMMETRIES))
    image = phi.act(g)
    assert isinstance(image, GluingPattern)
    c = canonical_pattern(phi)
    assert canonical_pattern(image) == c
    assert canonical_pattern(c) == c


def test_action_is_a_group_action(patterns):
    phi = patterns[4321]
    for g in SYMMETRIES[::5]:
        for h in SYMMETRIES[::7]:
            assert phi.act(h).act(g) == phi.act(g.compose(h))
