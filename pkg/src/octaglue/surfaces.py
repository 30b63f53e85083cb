"""Closed surfaces and disjoint unions of them, up to homeomorphism."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SurfaceSignature:
    """Multiset of ``(genus, orientable)`` components, sorted descending.

    Genus of a non-orientable component counts cross-caps.
    """

    components: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.components, reverse=True))
        object.__setattr__(self, "components", ordered)

    @classmethod
    def orientable(cls, genera) -> SurfaceSignature:
        return cls(tuple((g, True) for g in genera))

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.components)

    @property
    def euler_characteristic(self) -> int:
        return sum(2 - 2 * g if o else 2 - g for g, o in self.components)

    def label(self) -> str:
        return surface_label(self.genera)


def surface_label(genera) -> str:
    """``S``, ``T``, ``Sigma2`` ... joined with ``+``; ``empty`` for no components."""
    names = ["S" if g == 0 else "T" if g == 1 else f"Sigma{g}" for g in genera]
    return "+".join(names) if names else "empty"


def genus_from_euler(chi: int) -> int:
    if chi > 2 or chi % 2:
        raise ValueError(f"{chi} is not the Euler characteristic of a closed orientable surface")
    return (2 - chi) // 2
