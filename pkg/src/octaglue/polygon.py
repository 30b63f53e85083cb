"""Edge pairings of the 2k-gon and the surfaces they produce.

Edges of the polygon carry labels ``1..2k`` in cyclic order; edge ``i``
runs from polygon vertex ``i-1`` to vertex ``i`` (vertices taken mod
``2k``), oriented by the polygon.  Every pairing glues its two edges by
the orientation-reversing map, so a pairing is just a perfect matching
of the labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator

from scipy.cluster.hierarchy import DisjointSet

from octaglue.surfaces import SurfaceSignature, genus_from_euler

Pairs = tuple[tuple[int, int], ...]


@dataclass(frozen=True, order=True)
class EdgePairing:
    """A fixed-point-free involution on the edge labels ``1..2k``.

    ``pairs`` is the sorted tuple of sorted label pairs, which doubles as
    the encoding whose lexicographic order defines canonical forms.
    """

    k: int
    pairs: Pairs

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if len(self.pairs) != self.k:
            raise ValueError(f"expected {self.k} pairs, got {len(self.pairs)}")
        seen = sorted(x for pair in self.pairs for x in pair)
        if seen != list(range(1, 2 * self.k + 1)):
            raise ValueError(f"pairs {self.pairs} do not match labels 1..{2 * self.k}")
        if any(a >= b for a, b in self.pairs) or list(self.pairs) != sorted(self.pairs):
            raise ValueError("pairs must be sorted, each as (smaller, larger)")

    @classmethod
    def from_pairs(cls, k: int, pairs) -> EdgePairing:
        return cls(k, _normalize(pairs))

    def mate(self, label: int) -> int:
        for a, b in self.pairs:
            if a == label:
                return b
            if b == label:
                return a
        raise KeyError(label)

    def __str__(self):
        return "|".join(f"{a}-{b}" for a, b in self.pairs)


@dataclass(frozen=True)
class DihedralElement:
    """A symmetry of the 2k-gon, recorded by its action on edges and vertices.

    ``images[i]`` is the image of edge label ``i + 1``; ``vertex_images[v]``
    the image of polygon vertex ``v``.  The vertex action is kept because
    for ``k = 1`` the four symmetries of the bigon only induce two edge
    permutations.
    """

    images: tuple[int, ...]
    vertex_images: tuple[int, ...]
    kind: str

    def __call__(self, label: int) -> int:
        return self.images[label - 1]

    def compose(self, other: DihedralElement) -> DihedralElement:
        """``self`` after ``other``."""
        images = tuple(self(other(i)) for i in range(1, len(self.images) + 1))
        vertices = tuple(self.vertex_images[w] for w in other.vertex_images)
        kind = "rotation" if self.kind == other.kind else "reflection"
        return DihedralElement(images, vertices, kind)

    def act(self, p: EdgePairing) -> EdgePairing:
        return EdgePairing(p.k, _normalize((self(a), self(b)) for a, b in p.pairs))


def _normalize(pairs) -> Pairs:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"the polygon needs at least 2 edges (k >= 1), got k={k}")


def polygon_pairing_count(k: int) -> int:
    """Return ``(2k-1)!!``, the number of edge pairings of the 2k-gon."""
    _check_k(k)
    return reduce(lambda acc, m: acc * m, range(1, 2 * k, 2), 1)


def _matchings(labels: list[int]) -> Iterator[list[tuple[int, int]]]:
    # Smallest free label is matched first, partners in increasing order,
    # so output is in lexicographic order of encodings.
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for i, partner in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + tail


def iter_polygon_pairings(k: int) -> Iterator[EdgePairing]:
    _check_k(k)
    for m in _matchings(list(range(1, 2 * k + 1))):
        yield EdgePairing(k, tuple(m))


def enumerate_polygon_pairings(k: int) -> list[EdgePairing]:
    """All edge pairings of the 2k-gon, in lexicographic order."""
    return list(iter_polygon_pairings(k))


def dihedral_group(k: int) -> list[DihedralElement]:
    """The 4k symmetries of the 2k-gon acting on edge labels.

    Rotations come first (by increasing shift, identity at index 0),
    then the reflections ``i -> s - i``.
    """
    _check_k(k)
    n = 2 * k
    # 0-based edge index e spans polygon vertices e, e+1.  Rotating vertices
    # by s shifts e to e+s; reflecting v -> s-v sends edge e to s-1-e.
    group = [DihedralElement(tuple((e + s) % n + 1 for e in range(n)),
                             tuple((v + s) % n for v in range(n)), "rotation")
             for s in range(n)]
    group += [DihedralElement(tuple((s - 1 - e) % n + 1 for e in range(n)),
                              tuple((s - v) % n for v in range(n)), "reflection")
              for s in range(n)]
    return group


def canonical_pairing(p: EdgePairing, group: list[DihedralElement] | None = None) -> EdgePairing:
    """Least encoding in the dihedral orbit of ``p``."""
    if group is None:
        group = dihedral_group(p.k)
    return min(g.act(p) for g in group)


def vertex_classes(p: EdgePairing) -> list[set[int]]:
    """Classes of polygon vertices ``0..2k-1`` identified by the gluing."""
    n = 2 * p.k
    ds = DisjointSet(range(n))
    for a, b in p.pairs:
        # edge a runs (a-1 -> a); reversing glue matches start of one with end of the other
        ds.merge((a - 1) % n, b % n)
        ds.merge(a % n, (b - 1) % n)
    return [set(s) for s in ds.subsets()]


def polygon_surface(p: EdgePairing) -> SurfaceSignature:
    v = len(vertex_classes(p))
    genus = genus_from_euler(v - p.k + 1)
    if not 0 <= genus <= p.k // 2:
        raise ArithmeticError(f"genus {genus} out of range for k={p.k}")
    return SurfaceSignature(((genus, True),))


def polygon_classes(k: int) -> dict[EdgePairing, int]:
    """Map each canonical pairing to the size of its orbit.

    Orbits are swept once each instead of canonicalizing every pairing.
    """
    group = dihedral_group(k)
    seen: set[Pairs] = set()
    classes: dict[EdgePairing, int] = {}
    for p in iter_polygon_pairings(k):
        if p.pairs in seen:
            continue
        orbit = {g.act(p) for g in group}
        seen.update(q.pairs for q in orbit)
        classes[min(orbit)] = len(orbit)
    return dict(sorted(classes.items()))


def polygon_census(k: int) -> tuple[int, int, int]:
    """``(total pairings, inequivalent pairings, distinct surfaces)``."""
    classes = polygon_classes(k)
    genera = {polygon_surface(p).components[0][0] for p in classes}
    return polygon_pairing_count(k), len(classes), len(genera)
