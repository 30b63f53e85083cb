"""Enumeration and classification of orientation-reversing gluings.

Two families are covered: edge pairings of the 2k-gon, and face
pairings of the octahedron together with the topology (boundary
surfaces, first homology) of the glued truncated octahedron.
"""

__version__ = "0.1.0"


class InvariantViolation(RuntimeError):
    """A combinatorial invariant that must always hold was found broken."""
