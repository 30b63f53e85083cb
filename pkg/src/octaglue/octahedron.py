"""The oriented octahedron, its symmetries, and its face-pairing patterns.

Vertices are ``0..5`` with ``0`` and ``5`` the poles and ``1..4`` the
equator in cyclic order.  Faces ``0..3`` are ``(0, j, j+1)`` and faces
``4..7`` are ``(5, j+1, j)`` for ``j = 1..4``; each triple is written in
the cyclic order induced by one fixed orientation of the solid.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterator

Triple = tuple[int, int, int]
Edge = tuple[int, int]


@dataclass(frozen=True)
class Polyhedron3:
    vertices: tuple[int, ...]
    faces: tuple[Triple, ...]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({tuple(sorted(e)) for f in self.faces for e in face_edges(f)}))

    @cached_property
    def face_index(self) -> dict[frozenset, int]:
        return {frozenset(f): i for i, f in enumerate(self.faces)}

    def faces_of_edge(self, edge) -> tuple[int, int]:
        a, b = edge
        found = tuple(i for i, f in enumerate(self.faces) if a in f and b in f)
        if len(found) != 2:
            raise ValueError(f"edge {edge} lies in {len(found)} faces")
        return found

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)


def face_edges(face: Triple) -> list[Edge]:
    """The three edges of a face, each oriented by the face."""
    return [(face[i], face[(i + 1) % 3]) for i in range(3)]


def rotate_to(face: Triple, v: int) -> Triple:
    """Cyclic rotation of ``face`` starting at vertex ``v``."""
    i = face.index(v)
    return face[i:] + face[:i]


def is_cyclic_rotation(t: Triple, s: Triple) -> bool:
    return t[0] in s and rotate_to(s, t[0]) == tuple(t)


def build_octahedron() -> Polyhedron3:
    top = [(0, j, j % 4 + 1) for j in range(1, 5)]
    bottom = [(5, j % 4 + 1, j) for j in range(1, 5)]
    return Polyhedron3(tuple(range(6)), tuple(top + bottom))


OCTAHEDRON = build_octahedron()


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]
    face_map: tuple[int, ...]
    sign: int

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def compose(self, other: Automorphism) -> Automorphism:
        """``self`` after ``other``."""
        return Automorphism(
            tuple(self.perm[other.perm[v]] for v in range(len(self.perm))),
            tuple(self.face_map[other.face_map[f]] for f in range(len(self.face_map))),
            self.sign * other.sign,
        )


def symmetry_group(p: Polyhedron3 = OCTAHEDRON) -> list[Automorphism]:
    """All vertex permutations carrying the face set onto itself."""
    group = []
    for perm in permutations(p.vertices):
        face_map, signs = [], set()
        for f in p.faces:
            image = tuple(perm[v] for v in f)
            j = p.face_index.get(frozenset(image))
            if j is None:
                break
            face_map.append(j)
            signs.add(1 if is_cyclic_rotation(image, p.faces[j]) else -1)
        else:
            if len(signs) != 1:
                raise ValueError(f"permutation {perm} does not act coherently on orientations")
            group.append(Automorphism(tuple(perm), tuple(face_map), signs.pop()))
    return group


@dataclass(frozen=True, order=True)
class FaceGluingMap:
    """Orientation-reversing simplicial map from face ``source`` onto ``target``.

    ``rotation`` is the index ``r`` such that slot ``i`` of the source
    triple goes to slot ``i + r`` of the reversed target triple.
    """

    source: int
    target: int
    rotation: int

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"cannot glue face {self.source} to itself")
        if self.rotation not in (0, 1, 2):
            raise ValueError(f"rotation must be 0, 1 or 2, got {self.rotation}")

    @cached_property
    def vertex_map(self) -> dict[int, int]:
        src = OCTAHEDRON.faces[self.source]
        rev = reversed_triple(OCTAHEDRON.faces[self.target])
        return {src[i]: rev[(i + self.rotation) % 3] for i in range(3)}

    def inverse(self) -> FaceGluingMap:
        return FaceGluingMap.from_vertex_map(
            self.target, self.source, {w: v for v, w in self.vertex_map.items()})

    @classmethod
    def from_vertex_map(cls, source: int, target: int, mapping: dict[int, int]) -> FaceGluingMap:
        """Encode an explicit vertex bijection; rejects orientation-preserving maps."""
        src = OCTAHEDRON.faces[source]
        rev = reversed_triple(OCTAHEDRON.faces[target])
        image = tuple(mapping[v] for v in src)
        if not is_cyclic_rotation(image, rev):
            raise ValueError(f"map {src} -> {image} is not orientation-reversing onto {OCTAHEDRON.faces[target]}")
        return cls(source, target, rev.index(image[0]))

    def describe(self) -> str:
        src = OCTAHEDRON.faces[self.source]
        return f"{src} -> {tuple(self.vertex_map[v] for v in src)}"


def _by_source(m: FaceGluingMap) -> int:
    return m.source


def _encoding(phi: GluingPattern):
    return phi.encoding


def reversed_triple(t: Triple) -> Triple:
    return (t[0], t[2], t[1])


def face_gluing_maps(a: int, b: int) -> list[FaceGluingMap]:
    """The three orientation-reversing simplicial maps from face ``a`` onto ``b``."""
    if a == b:
        raise ValueError(f"cannot glue face {a} to itself")
    return [FaceGluingMap(a, b, r) for r in range(3)]


@dataclass(frozen=True, order=True)
class GluingPattern:
    """Four face gluings covering all 8 faces, each stored as ``min -> max``."""

    maps: tuple[FaceGluingMap, ...]

    def __post_init__(self):
        faces = sorted(f for m in self.maps for f in (m.source, m.target))
        if faces != list(range(8)):
            raise ValueError(f"gluings do not pair the 8 faces: {self.maps}")
        sources = [m.source for m in self.maps]
        if any(m.source > m.target for m in self.maps) or sources != sorted(sources):
            raise ValueError("maps must be sorted and stored from the smaller face")

    @classmethod
    def from_maps(cls, maps) -> GluingPattern:
        normal = [m if m.source < m.target else m.inverse() for m in maps]
        return cls(tuple(sorted(normal, key=_by_source)))

    @classmethod
    def from_encoding(cls, code) -> GluingPattern:
        return cls.from_maps(FaceGluingMap(a, b, r) for a, b, r in code)

    @classmethod
    def parse(cls, ident: str) -> GluingPattern:
        """Inverse of :meth:`ident`, e.g. ``"01r2|23r0|45r1|67r2"``."""
        code = []
        for chunk in ident.split("|"):
            faces, r = chunk.split("r")
            code.append((int(faces[0]), int(faces[1]), int(r)))
        return cls.from_encoding(code)

    @property
    def encoding(self) -> tuple[Triple, ...]:
        return tuple((m.source, m.target, m.rotation) for m in self.maps)

    @property
    def matching(self) -> tuple[tuple[int, int], ...]:
        return tuple((m.source, m.target) for m in self.maps)

    def ident(self) -> str:
        return "|".join(f"{a}{b}r{r}" for a, b, r in self.encoding)

    def gluing_from(self, face: int) -> FaceGluingMap:
        """The gluing leaving ``face``, oriented with ``face`` as source."""
        for m in self.maps:
            if m.source == face:
                return m
            if m.target == face:
                return m.inverse()
        raise KeyError(face)

    def act(self, g: Automorphism) -> GluingPattern:
        """Conjugate every gluing by ``g``: ``x -> g(m(g^-1(x)))``."""
        maps = []
        perm = g.perm
        for m in self.maps:
            a, b = g.face_map[m.source], g.face_map[m.target]
            if a < b:
                conj = {perm[v]: perm[w] for v, w in m.vertex_map.items()}
            else:
                a, b = b, a
                conj = {perm[w]: perm[v] for v, w in m.vertex_map.items()}
            maps.append(FaceGluingMap.from_vertex_map(a, b, conj))
        maps.sort(key=_by_source)
        return GluingPattern(tuple(maps))

    def __str__(self):
        return self.ident()


def _face_matchings(faces: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not faces:
        yield []
        return
    first, rest = faces[0], faces[1:]
    for i, partner in enumerate(rest):
        for tail in _face_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + tail


def iter_patterns() -> Iterator[GluingPattern]:
    for matching in _face_matchings(list(range(8))):
        for rotations in _product3(len(matching)):
            yield GluingPattern(tuple(FaceGluingMap(a, b, r) for (a, b), r in zip(matching, rotations)))


def _product3(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for r in range(3):
        for tail in _product3(n - 1):
            yield (r,) + tail


def enumerate_patterns() -> list[GluingPattern]:
    """All 105 * 3**4 patterns, in lexicographic order of encodings."""
    return sorted(iter_patterns(), key=_encoding)


def canonical_pattern(phi: GluingPattern, group: list[Automorphism] | None = None) -> GluingPattern:
    """Least encoding in the orbit of ``phi`` under the full symmetry group."""
    if group is None:
        group = SYMMETRIES
    return min((phi.act(g) for g in group), key=_encoding)


def pattern_orbit(phi: GluingPattern, group: list[Automorphism] | None = None) -> set[GluingPattern]:
    if group is None:
        group = SYMMETRIES
    return {phi.act(g) for g in group}


def octahedron_classes() -> dict[GluingPattern, int]:
    """Map each canonical pattern to its orbit size, sorted by encoding."""
    seen: set[GluingPattern] = set()
    classes: dict[GluingPattern, int] = {}
    for phi in iter_patterns():
        if phi in seen:
            continue
        orbit = pattern_orbit(phi)
        seen |= orbit
        classes[min(orbit, key=_encoding)] = len(orbit)
    return dict(sorted(classes.items(), key=lambda item: item[0].encoding))


SYMMETRIES = symmetry_group(OCTAHEDRON)
