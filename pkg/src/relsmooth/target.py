"""Rational stacky target curves.

A target is the projective line with a generic stabilizer of order
``generic_order`` and finitely many special points whose stabilizer order is
a multiple of it.  Relative points are named points with generic stabilizer
at which tangency conditions are imposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

RELATIVE = "relative"
STACKY = "stacky"
GENERIC = "generic"


@dataclass(frozen=True)
class TargetPoint:
    label: str
    kind: str  # one of RELATIVE, STACKY, GENERIC


@dataclass(frozen=True)
class StackyTarget:
    generic_order: int = 1
    special_points: tuple[tuple[str, int], ...] = ()
    relative_points: tuple[str, ...] = ("inf",)
    name: str = "P(1,1)"

    def __post_init__(self):
        if self.generic_order < 1:
            raise ValueError("generic_order must be positive")
        labels = [label for label, _ in self.special_points]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate special point label")
        for label, order in self.special_points:
            if order < 1 or order % self.generic_order:
                raise ValueError(
                    f"special point {label!r}: order {order} is not a multiple "
                    f"of the generic order {self.generic_order}"
                )
        if len(set(self.relative_points)) != len(self.relative_points):
            raise ValueError("duplicate relative point label")
        clash = set(labels) & set(self.relative_points)
        if clash:
            raise ValueError(f"relative points must have generic stabilizer: {sorted(clash)}")

    def kind(self, label: str) -> str:
        if label in self.relative_points:
            return RELATIVE
        if label in dict(self.special_points):
            return STACKY
        return GENERIC

    def point(self, label: str) -> TargetPoint:
        return TargetPoint(label, self.kind(label))

    def order(self, label: str) -> int:
        """Stabilizer order of the point ``label``."""
        return dict(self.special_points).get(label, self.generic_order)

    def with_relative(self, labels) -> StackyTarget:
        return StackyTarget(self.generic_order, self.special_points, tuple(labels), self.name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "generic_order": self.generic_order,
            "special_points": [{"label": l, "order": o} for l, o in self.special_points],
            "relative_points": list(self.relative_points),
        }

    @classmethod
    def from_dict(cls, data: dict) -> StackyTarget:
        return cls(
            generic_order=data.get("generic_order", 1),
            special_points=tuple((p["label"], p["order"]) for p in data.get("special_points", ())),
            relative_points=tuple(data.get("relative_points", ("inf",))),
            name=data.get("name", "custom"),
        )


def weighted_projective(a: int, b: int, relative=("inf",)) -> StackyTarget:
    """The weighted projective line P(a, b).

    The points [1:0] and [0:1] carry stabilizers of orders ``a`` and ``b``;
    they are listed as special only when their order exceeds gcd(a, b).
    """
    if a < 1 or b < 1:
        raise ValueError("weights must be positive")
    k = gcd(a, b)
    special = tuple((label, o) for label, o in (("[1:0]", a), ("[0:1]", b)) if o != k)
    return StackyTarget(k, special, tuple(relative), f"P({a},{b})")


PROJECTIVE_LINE = weighted_projective(1, 1)
