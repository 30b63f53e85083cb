"""Cell structure of the truncated octahedron glued along a pattern.

Truncating the octahedron at its vertices leaves 8 hexagons (the old
faces) and 6 squares (one per old vertex).  Besides the 12 long edges
inherited from the octahedron there are 24 short edges, one for every
incidence of a vertex ``v`` with a face ``F`` (a *side* ``(v, F)``), and
24 corners, one for every incidence of a vertex ``v`` with an edge ``e``
(a *corner* ``(v, e)``).  A gluing pattern pairs the hexagons, which
identifies long edges among themselves, sides in pairs and corners in
orbits; the squares around each vertex class then close up into one
boundary surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from scipy.cluster.hierarchy import DisjointSet

from octaglue import InvariantViolation
from octaglue.octahedron import OCTAHEDRON, Edge, GluingPattern, face_edges, rotate_to
from octaglue.surfaces import SurfaceSignature, genus_from_euler

Side = tuple[int, int]                 # (vertex, face)
Corner = tuple[int, tuple[int, int]]   # (vertex, sorted edge)


def _key(a, b) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def side_direction(v: int, face: int) -> tuple[Corner, Corner]:
    """Start and end corners of side ``(v, face)``, oriented as part of the square at ``v``.

    The square's orientation is the one it inherits as a boundary face of
    the oriented truncated octahedron, which runs opposite to the hexagon.
    """
    _, x, y = rotate_to(OCTAHEDRON.faces[face], v)
    return (v, _key(v, x)), (v, _key(v, y))


def corners_of(v: int) -> list[Corner]:
    return [(v, e) for e in OCTAHEDRON.edges if v in e]


def sides_of(v: int) -> list[Side]:
    return [(v, f) for f, tri in enumerate(OCTAHEDRON.faces) if v in tri]


@dataclass(frozen=True)
class EdgeOrbit:
    """Cycle of octahedron edges identified by successive gluings.

    ``edges[i]`` is oriented by the face it is entered through, so every
    gluing in the cycle carries ``edges[i]`` onto ``edges[i+1]`` preserving
    direction.  ``return_map`` records where the composite sends the two
    endpoints of ``edges[0]``.
    """

    edges: tuple[Edge, ...]
    faces: tuple[int, ...]
    return_map: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.return_map)


def edge_orbits(phi: GluingPattern) -> list[EdgeOrbit]:
    """Walk each edge cycle and verify that its return map is trivial."""
    visited: set[Edge] = set()
    orbits = []
    for start in OCTAHEDRON.edges:
        if start in visited:
            continue
        f0 = OCTAHEDRON.faces_of_edge(start)[0]
        cur = next(e for e in face_edges(OCTAHEDRON.faces[f0]) if _key(*e) == start)
        face = f0
        edges, faces = [cur], [face]
        track = {cur[0]: cur[0], cur[1]: cur[1]}
        while True:
            other = next(f for f in OCTAHEDRON.faces_of_edge(_key(*cur)) if f != face)
            m = phi.gluing_from(other)
            vm = m.vertex_map
            nxt = (vm[cur[0]], vm[cur[1]])
            if nxt not in face_edges(OCTAHEDRON.faces[m.target]):
                raise InvariantViolation(
                    f"{phi}: gluing {m.describe()} does not match edge orientations")
            track = {v: vm[w] for v, w in track.items()}
            cur, face = nxt, m.target
            if _key(*cur) == start:
                break
            if _key(*cur) in {_key(*e) for e in edges}:
                raise InvariantViolation(f"{phi}: edge walk from {start} closes up away from its start")
            edges.append(cur)
            faces.append(face)
        orbit = EdgeOrbit(tuple(edges), tuple(faces), tuple(sorted(track.items())))
        if face != f0 or not orbit.is_identity:
            raise InvariantViolation(f"{phi}: edge {start} returns to itself by {orbit.return_map}")
        visited.update(_key(*e) for e in edges)
        orbits.append(orbit)
    return orbits


@dataclass(frozen=True)
class VertexLink:
    """Boundary surface made of the squares over one vertex class."""

    vertices: frozenset[int]
    squares: tuple[int, ...]
    side_pairs: tuple[tuple[Side, Side], ...]
    corner_orbits: int
    orientation: tuple[tuple[int, int], ...]

    @property
    def euler_characteristic(self) -> int:
        n = len(self.squares)
        return self.corner_orbits - len(self.side_pairs) + n

    @property
    def orientable(self) -> bool:
        return True

    @property
    def genus(self) -> int:
        return genus_from_euler(self.euler_characteristic)


@dataclass
class QuotientComplex:
    """Identifications induced on the truncated octahedron by one pattern."""

    pattern: GluingPattern
    edge_orbits: list[EdgeOrbit]
    vertex_classes: list[frozenset[int]]
    corner_classes: list[frozenset[Corner]]
    side_pairs: list[tuple[Side, Side]]
    side_signs: dict[tuple[Side, Side], int] = field(repr=False)

    @cached_property
    def corner_index(self) -> dict[Corner, int]:
        return {c: i for i, cls in enumerate(self.corner_classes) for c in cls}

    @cached_property
    def links(self) -> list[VertexLink]:
        return [_build_link(self, vc) for vc in self.vertex_classes]

    def boundary(self) -> SurfaceSignature:
        return SurfaceSignature.orientable(link.genus for link in self.links)


def _sorted_classes(ds: DisjointSet) -> list[frozenset]:
    return sorted((frozenset(s) for s in ds.subsets()), key=min)


def build_quotient(phi: GluingPattern) -> QuotientComplex:
    orbits = edge_orbits(phi)

    vertices = DisjointSet(OCTAHEDRON.vertices)
    corners = DisjointSet([c for v in OCTAHEDRON.vertices for c in corners_of(v)])
    pairs, signs = [], {}
    for m in phi.maps:
        vm = m.vertex_map
        tri = OCTAHEDRON.faces[m.source]
        for v in tri:
            vertices.merge(v, vm[v])
            for a, b in face_edges(tri):
                if v in (a, b):
                    corners.merge((v, _key(a, b)), (vm[v], _key(vm[a], vm[b])))
            src, dst = (v, m.source), (vm[v], m.target)
            s0, _ = side_direction(*src)
            t0, _ = side_direction(*dst)
            image_start = (vm[s0[0]], _key(vm[s0[1][0]], vm[s0[1][1]]))
            # +1 when the gluing carries the natural direction of src onto that of dst
            signs[(src, dst)] = 1 if image_start == t0 else -1
            pairs.append((src, dst))

    return QuotientComplex(
        pattern=phi,
        edge_orbits=orbits,
        vertex_classes=_sorted_classes(vertices),
        corner_classes=_sorted_classes(corners),
        side_pairs=sorted(pairs),
        side_signs=signs,
    )


def _build_link(q: QuotientComplex, vclass: frozenset[int]) -> VertexLink:
    squares = tuple(sorted(vclass))
    pairs = tuple(p for p in q.side_pairs if p[0][0] in vclass)
    if any(p[1][0] not in vclass for p in pairs):
        raise InvariantViolation(f"{q.pattern}: side pairing leaves vertex class {set(vclass)}")
    glued = [s for p in pairs for s in p]
    expected = [s for v in squares for s in sides_of(v)]
    if sorted(glued) != sorted(expected):
        raise InvariantViolation(f"{q.pattern}: link of {set(vclass)} is not closed")

    # Squares glued along sides (src, dst) with direction sign d must carry
    # orientations e_src, e_dst satisfying e_src * e_dst * d == -1.
    adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in squares}
    for p in pairs:
        (u, _), (w, _) = p
        d = q.side_signs[p]
        adjacency[u].append((w, d))
        adjacency[w].append((u, d))
    eps = {squares[0]: 1}
    stack = [squares[0]]
    while stack:
        u = stack.pop()
        for w, d in adjacency[u]:
            want = -eps[u] * d
            if w not in eps:
                eps[w] = want
                stack.append(w)
            elif eps[w] != want:
                raise InvariantViolation(f"{q.pattern}: link of {set(vclass)} is non-orientable")
    if len(eps) != len(squares):
        raise InvariantViolation(f"{q.pattern}: link of {set(vclass)} is disconnected")

    corner_ids = {q.corner_index[c] for v in squares for c in corners_of(v)}
    return VertexLink(
        vertices=vclass,
        squares=squares,
        side_pairs=pairs,
        corner_orbits=len(corner_ids),
        orientation=tuple(sorted(eps.items())),
    )


def vertex_links(phi: GluingPattern) -> list[VertexLink]:
    return build_quotient(phi).links


@dataclass(frozen=True)
class BoundarySignature:
    genera: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(sorted(self.genera, reverse=True)))

    @property
    def capped(self) -> tuple[int, ...]:
        return tuple(g for g in self.genera if g > 0)

    def label(self) -> str:
        return SurfaceSignature.orientable(self.genera).label()


def boundary_signature(phi: GluingPattern) -> BoundarySignature:
    return BoundarySignature(build_quotient(phi).boundary().genera)


def cap_spheres(s: BoundarySignature) -> BoundarySignature:
    """Drop the sphere components: the boundary after filling them with balls."""
    return BoundarySignature(s.capped)
