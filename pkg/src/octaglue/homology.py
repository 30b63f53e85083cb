"""Integral cellular homology of the glued truncated octahedron.

Cells of the quotient:

* dim 3 -- the truncated octahedron itself;
* dim 2 -- one cell per glued hexagon pair (oriented by its smaller face)
  and the six squares (oriented as boundary faces of the solid);
* dim 1 -- one long cell per edge orbit and one short cell per side pair;
* dim 0 -- the corner orbits.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from octaglue import InvariantViolation
from octaglue.octahedron import OCTAHEDRON, GluingPattern, face_edges
from octaglue.topology import QuotientComplex, _key, build_quotient, side_direction

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return zeros(len(a), len(b[0]) if b else 0)
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


@dataclass
class ChainComplex:
    """Cells in dimensions 0..3 and the boundary matrices between them.

    ``boundaries[d]`` has one row per ``(d-1)``-cell and one column per
    ``d``-cell, for ``d = 1, 2, 3``.
    """

    cells: list[list[str]]
    boundaries: dict[int, Matrix]
    components: list[tuple[frozenset[int], int]] = field(default_factory=list)
    capped: tuple[frozenset[int], ...] = ()

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts()))

    def check(self) -> None:
        for d in (1, 2):
            if not is_zero(matmul(self.boundaries[d], self.boundaries[d + 1])):
                raise InvariantViolation(f"boundary of boundary is nonzero in degree {d + 1}")


def build_chain_complex(phi: GluingPattern | QuotientComplex) -> ChainComplex:
    q = phi if isinstance(phi, QuotientComplex) else build_quotient(phi)
    pattern = q.pattern

    # Long 1-cells: every edge of an orbit, oriented as listed, has sign +1.
    long_sign: dict[tuple[int, int], tuple[int, int]] = {}
    for i, orbit in enumerate(q.edge_orbits):
        for a, b in orbit.edges:
            long_sign[(a, b)] = (i, 1)
            long_sign[(b, a)] = (i, -1)
    n_long = len(q.edge_orbits)

    short_sign: dict[tuple[int, int], tuple[int, int]] = {}
    for j, pair in enumerate(q.side_pairs):
        src, dst = pair
        short_sign[src] = (n_long + j, 1)
        short_sign[dst] = (n_long + j, q.side_signs[pair])
    n1 = n_long + len(q.side_pairs)

    hexagons = [m.source for m in pattern.maps]
    squares = list(OCTAHEDRON.vertices)
    n2 = len(hexagons) + len(squares)
    n0 = len(q.corner_classes)
    corner = q.corner_index

    d1 = zeros(n0, n1)
    for i, orbit in enumerate(q.edge_orbits):
        a, b = orbit.edges[0]
        d1[corner[(b, _key(a, b))]][i] += 1
        d1[corner[(a, _key(a, b))]][i] -= 1
    for j, (src, _) in enumerate(q.side_pairs):
        start, end = side_direction(*src)
        d1[corner[end]][n_long + j] += 1
        d1[corner[start]][n_long + j] -= 1

    d2 = zeros(n1, n2)
    for col, f in enumerate(hexagons):
        for a, b in face_edges(OCTAHEDRON.faces[f]):
            row, s = long_sign[(a, b)]
            d2[row][col] += s
            # the hexagon crosses the side at b against the square's direction
            row, s = short_sign[(b, f)]
            d2[row][col] -= s
    for k, v in enumerate(squares):
        for f, tri in enumerate(OCTAHEDRON.faces):
            if v in tri:
                row, s = short_sign[(v, f)]
                d2[row][len(hexagons) + k] += s

    # Each hexagon pair meets the solid once from each side and cancels.
    d3 = zeros(n2, 1)
    for k in range(len(squares)):
        d3[len(hexagons) + k][0] = 1

    cells = [
        [f"c{i}" for i in range(n0)],
        [f"e{i}" for i in range(n_long)] + [f"s{v}.{f}" for (v, f), _ in q.side_pairs],
        [f"h{f}" for f in hexagons] + [f"q{v}" for v in squares],
        ["B"],
    ]
    complex_ = ChainComplex(
        cells=cells,
        boundaries={1: d1, 2: d2, 3: d3},
        components=[(link.vertices, link.genus) for link in q.links],
    )
    complex_.check()
    return complex_


def cap_complex(c: ChainComplex, spheres) -> ChainComplex:
    """Attach one 3-cell to each named sphere boundary component.

    ``spheres`` is an iterable of vertex classes (sets of octahedron
    vertices); each must be a genus-0 component of ``c``.
    """
    genus = dict(c.components)
    spheres = [frozenset(s) for s in spheres]
    for s in spheres:
        if s not in genus:
            raise ValueError(f"{set(s)} is not a boundary component")
        if genus[s] != 0:
            raise ValueError(f"component {set(s)} has genus {genus[s]}, not a sphere")
        if s in c.capped:
            raise ValueError(f"component {set(s)} is already capped")
    if not spheres:
        return c

    square_row = {cell: i for i, cell in enumerate(c.cells[2]) if cell.startswith("q")}
    d3 = [list(row) for row in c.boundaries[3]]
    new_cells = []
    for s in spheres:
        for row in d3:
            row.append(0)
        for v in s:
            # the ball sits on the far side of the boundary sphere
            d3[square_row[f"q{v}"]][-1] = -1
        new_cells.append("D" + "".join(str(v) for v in sorted(s)))
    cells = c.cells[:3] + [c.cells[3] + new_cells]
    capped = replace(c, cells=cells, boundaries={**c.boundaries, 3: d3}, capped=c.capped + tuple(spheres))
    capped.check()
    return capped


def smith_normal_form(m: Matrix) -> tuple[tuple[int, ...], int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix, and its rank.

    Exact integer elimination, always pivoting on an entry of least
    absolute value in the remaining block.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a smaller remainder appeared; move it to the pivot slot
            best = min(((i, t) for i in range(t + 1, rows) if a[i][t]),
                       default=None, key=lambda ij: abs(a[ij[0]][ij[1]]))
            best_col = min(((t, j) for j in range(t + 1, cols) if a[t][j]),
                           default=None, key=lambda ij: abs(a[ij[0]][ij[1]]))
            cands = [c for c in (best, best_col) if c is not None]
            i, j = min(cands, key=lambda ij: abs(a[ij[0]][ij[1]]))
            if j == t:
                a[t], a[i] = a[i], a[t]
            else:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return tuple(factors), len(factors)


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """``Z^free_rank`` plus cyclic torsion with invariant factors ``d1 | d2 | ...``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion factors must be >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion factors must form a divisibility chain: {self.torsion}")

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return "+".join(parts) if parts else "0"


def homology(c: ChainComplex, degree: int) -> AbelianGroup:
    n = c.counts()[degree]
    out, rank_out = (smith_normal_form(c.boundaries[degree])
                     if degree in c.boundaries else ((), 0))
    inc, rank_in = (smith_normal_form(c.boundaries[degree + 1])
                    if degree + 1 in c.boundaries else ((), 0))
    return AbelianGroup(n - rank_out - rank_in, tuple(d for d in inc if d > 1))


def first_homology(phi: GluingPattern | ChainComplex) -> AbelianGroup:
    c = phi if isinstance(phi, ChainComplex) else build_chain_complex(phi)
    return homology(c, 1)
