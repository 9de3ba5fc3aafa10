"""``El x`` as a finite groupoid descriptor.

Each orbit of each membership is one component; its automorphism group is
the orbit's point stabilizer inside ``Aut(child)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .permgroup import SubgroupHandle
from .universe import MSet, el_orbits, is_discrete_el

__all__ = ["ElComponent", "ElDescriptor", "el", "pi0", "is_discrete_el",
           "groupoid_cardinality"]


@dataclass(frozen=True)
class ElComponent:
    child_code: str
    stabilizer_order: int
    stabilizer: SubgroupHandle
    orbit_size: int

    def key(self):
        return (self.child_code, self.stabilizer_order, self.orbit_size)


@dataclass(frozen=True)
class ElDescriptor:
    components: tuple[ElComponent, ...]
    pi0: int
    cardinality: Fraction

    def same_as(self, other: "ElDescriptor") -> bool:
        """Equality up to reordering of components (stabilizers compared by order)."""
        return sorted(c.key() for c in self.components) == sorted(c.key() for c in other.components)

    def to_json(self) -> dict:
        return {
            "pi0": self.pi0,
            "cardinality": f"{self.cardinality.numerator}/{self.cardinality.denominator}",
            "components": [{"child": c.child_code, "stab_order": c.stabilizer_order}
                           for c in self.components],
        }


def el(x: MSet) -> ElDescriptor:
    comps = tuple(ElComponent(o.child.code, o.stabilizer.order, o.stabilizer, len(o.points))
                  for o in el_orbits(x))
    card = sum((Fraction(1, c.stabilizer_order) for c in comps), Fraction(0))
    return ElDescriptor(comps, len(comps), card)


def pi0(x: MSet) -> int:
    return len(el_orbits(x))


def groupoid_cardinality(x: MSet) -> Fraction:
    return el(x).cardinality
