"""Membership in the smoothable locus via the three relative conditions.

For each relative point ``x`` with tangency tuple ``Γ_x`` a map is a
*relative map* when

1. every mark of ``Γ_x`` maps to ``x``;
2. every point of the fiber over ``x`` is a mark of ``Γ_x`` or lies on a
   component contracted to ``x``;
3. every maximal connected subtree ``T`` contracted to ``x`` is balanced:
   the tangencies of its marks sum to the ramification indices of the nodes
   where it meets the rest of the curve.  A mark on an active component over
   ``x`` is the degenerate case ``T = {q}``: its ramification must equal its
   tangency.

The conditions see only the coarse map, so stabilizer data is ignored here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import CapacityError, GammaMismatchError, InputError, InvalidGraphError
from .graph import DualMapGraph, MarkedPoint, validate
from .hurwitz import D_MAX, vertex_realizable


@dataclass(frozen=True)
class RelativeCondition:
    point: str
    tangencies: tuple[int, ...]
    marks: tuple[int, ...] | None = None
    gerbe_orders: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tangencies", tuple(self.tangencies))
        if any(d < 1 for d in self.tangencies):
            raise InputError(f"{self.point}: tangencies must be positive")
        for name in ("marks", "gerbe_orders"):
            val = getattr(self, name)
            if val is not None:
                val = tuple(val)
                object.__setattr__(self, name, val)
                if len(val) != len(self.tangencies):
                    raise InputError(f"{self.point}: {name} has {len(val)} entries for {len(self.tangencies)} tangencies")


@dataclass(frozen=True)
class TangencyData:
    """Free marks plus one tangency tuple per relative point.

    Without explicit mark ids, marks are matched to a graph by increasing id:
    the ``n_free`` smallest ids are the free marks, then the marks of each
    relative point in order.
    """

    n_free: int = 0
    relative: tuple[RelativeCondition, ...] = ()
    free_marks: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "relative", tuple(self.relative))
        points = [c.point for c in self.relative]
        if len(set(points)) != len(points):
            raise InputError("relative point listed twice")
        if self.free_marks is not None:
            object.__setattr__(self, "free_marks", tuple(self.free_marks))
            if len(self.free_marks) != self.n_free:
                raise InputError("free_marks length differs from n_free")

    @property
    def points(self) -> tuple[str, ...]:
        return tuple(c.point for c in self.relative)

    @property
    def n_marks(self) -> int:
        return self.n_free + sum(len(c.tangencies) for c in self.relative)

    def tangencies(self, point: str) -> tuple[int, ...]:
        for c in self.relative:
            if c.point == point:
                return c.tangencies
        return ()

    def assignment(self, g: DualMapGraph) -> dict[int, tuple[str | None, int]]:
        """Map each mark id of ``g`` to ``(relative point or None, tangency)``."""
        ids = sorted(m.id for m in g.marks)
        if len(ids) != self.n_marks:
            raise GammaMismatchError(f"graph has {len(ids)} marks, tangency data describes {self.n_marks}")
        out: dict[int, tuple[str | None, int]] = {}
        explicit = self.free_marks is not None or any(c.marks is not None for c in self.relative)
        if explicit:
            if self.free_marks is None and self.n_free:
                raise GammaMismatchError("explicit mark ids given for relative points but not for free marks")
            for mid in self.free_marks or ():
                out[mid] = (None, 0)
            for c in self.relative:
                if c.marks is None:
                    raise GammaMismatchError(f"{c.point}: explicit mark ids missing")
                for mid, d in zip(c.marks, c.tangencies):
                    if mid in out:
                        raise GammaMismatchError(f"mark {mid} assigned twice")
                    out[mid] = (c.point, d)
            if sorted(out) != ids:
                raise GammaMismatchError(f"mark ids {sorted(out)} do not match graph marks {ids}")
        else:
            it = iter(ids)
            for _ in range(self.n_free):
                out[next(it)] = (None, 0)
            for c in self.relative:
                for d in c.tangencies:
                    out[next(it)] = (c.point, d)
        for m in g.marks:
            _, d = out[m.id]
            if m.tangency != d:
                raise GammaMismatchError(f"mark {m.id}: graph tangency {m.tangency}, tangency data says {d}")
        return out

    def to_dict(self) -> dict:
        data: dict = {"free": self.n_free, "relative": []}
        if self.free_marks is not None:
            data["free_marks"] = list(self.free_marks)
        for c in self.relative:
            item = {"point": c.point, "tangency": list(c.tangencies)}
            if c.marks is not None:
                item["marks"] = list(c.marks)
            if c.gerbe_orders is not None:
                item["gerbe_orders"] = list(c.gerbe_orders)
            data["relative"].append(item)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> TangencyData:
        from .graph import check_schema

        check_schema(data, "gamma")
        rel = tuple(
            RelativeCondition(
                r["point"],
                tuple(r["tangency"]),
                tuple(r["marks"]) if "marks" in r else None,
                tuple(r["gerbe_orders"]) if "gerbe_orders" in r else None,
            )
            for r in data.get("relative", [])
        )
        free_marks = data.get("free_marks")
        n_free = data.get("free", len(free_marks) if free_marks is not None else 0)
        return cls(n_free, rel, tuple(free_marks) if free_marks is not None else None)

    @classmethod
    def parse(cls, text: str) -> TangencyData:
        """Parse ``"(1,1)@inf"``, ``"2;(3)@inf;(1,2)@0"`` or ``"n0=2;(2)@inf"``."""
        n_free = 0
        rel = []
        for chunk in filter(None, (c.strip() for c in text.split(";"))):
            m = re.fullmatch(r"\(\s*([\d,\s]*)\)\s*@\s*(\S+)", chunk)
            if m:
                parts = tuple(int(x) for x in m.group(1).replace(" ", "").split(",") if x)
                rel.append(RelativeCondition(m.group(2), parts))
                continue
            m = re.fullmatch(r"(?:n0\s*=\s*)?(\d+)", chunk)
            if m:
                n_free += int(m.group(1))
                continue
            raise InputError(f"cannot parse tangency data {chunk!r}")
        return cls(n_free, tuple(rel))

    @classmethod
    def from_graph(cls, g: DualMapGraph) -> TangencyData:
        """Read tangency data off the marks of ``g`` (each mark over its own image)."""
        free = []
        by_point: dict[str, list[MarkedPoint]] = {}
        for m in sorted(g.marks, key=lambda m: m.id):
            if m.tangency == 0:
                free.append(m.id)
            else:
                by_point.setdefault(g.mark_image(m), []).append(m)
        rel = tuple(
            RelativeCondition(p, tuple(m.tangency for m in ms), tuple(m.id for m in ms))
            for p, ms in by_point.items()
        )
        return cls(len(free), rel, tuple(free))


@dataclass(frozen=True)
class Witness:
    condition: int
    kind: str
    ids: tuple[int, ...]
    lhs: int | None = None
    rhs: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(self).items()}


@dataclass(frozen=True)
class PointReport:
    point: str
    condition1: bool
    condition2: bool
    condition3: bool
    witnesses: tuple[Witness, ...] = ()

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3

    def statuses(self) -> tuple[bool, bool, bool]:
        return (self.condition1, self.condition2, self.condition3)


@dataclass(frozen=True)
class ConditionReport:
    points: tuple[PointReport, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.points)

    def at(self, point: str) -> PointReport:
        for p in self.points:
            if p.point == point:
                return p
        raise KeyError(point)

    def statuses(self) -> dict[str, tuple[bool, bool, bool]]:
        return {p.point: p.statuses() for p in self.points}

    def to_dict(self) -> dict:
        return {
            "member": self.ok,
            "points": [
                {
                    "point": p.point,
                    "condition1": p.condition1,
                    "condition2": p.condition2,
                    "condition3": p.condition3,
                    "witnesses": [w.to_dict() for w in p.witnesses],
                }
                for p in self.points
            ],
            "warnings": list(self.warnings),
        }


def _require_valid(g: DualMapGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(report)


def _check_point(g: DualMapGraph, point: str, tangency: dict[int, int], total: int) -> PointReport:
    """``tangency`` maps the ids of this point's marks to their prescribed order."""
    witnesses: list[Witness] = []

    # (1) evaluation
    for mid in sorted(tangency):
        image = g.mark_image(g.mark(mid))
        if image != point:
            witnesses.append(Witness(1, "wrong-target", (mid,), detail=f"maps to {image!r}, not {point!r}"))

    # (2) fiber containment
    if tangency and g.is_full_fiber(point) and total != g.degree:
        witnesses.append(
            Witness(2, "fiber-total", (), total, g.degree, "tangencies over the point do not add up to the degree")
        )
    for v in g.active_vertices:
        parts = g.fiber_parts(v.id, point)
        recorded = sum(idx for _, _, idx in parts)
        if recorded < v.degree:
            witnesses.append(
                Witness(2, "fiber-deficit", (v.id,), recorded, v.degree, "unrecorded fiber points on an active component")
            )
        for kind, eid, _ in parts:
            if kind == "active-node":
                witnesses.append(Witness(2, "unmarked-node", (eid,), detail="node in fiber neither marked nor contracted"))

    # (3) balance
    for comp in g.contracted_components(point):
        d_sum = sum(tangency.get(m.id, 0) for v in sorted(comp) for m in g.marks_on(v))
        e_sum = 0
        for v in comp:
            for e in g.edges_at(v):
                other = e.other(v)
                if other not in comp:
                    e_sum += e.index_at(other)
        if d_sum != e_sum:
            witnesses.append(Witness(3, "subtree", tuple(sorted(comp)), d_sum, e_sum))
    for v in g.active_vertices:
        for m in g.marks_on(v.id):
            if m.target == point:
                d = tangency.get(m.id, 0)
                if d != m.local_ramification:
                    witnesses.append(Witness(3, "mark", (m.id,), d, m.local_ramification))

    status = {c: not any(w.condition == c for w in witnesses) for c in (1, 2, 3)}
    return PointReport(point, status[1], status[2], status[3], tuple(witnesses))


def _tangency_by_point(g: DualMapGraph, gamma: TangencyData) -> dict[str, dict[int, int]]:
    for p in gamma.points:
        if p not in g.target.relative_points:
            raise InputError(f"relative point {p!r} absent from the target")
    assignment = gamma.assignment(g)
    by_point: dict[str, dict[int, int]] = {p: {} for p in gamma.points}
    for mid, (p, d) in assignment.items():
        if p is not None:
            by_point[p][mid] = d
    return by_point


def check_relative(g: DualMapGraph, gamma: TangencyData, realizability: bool = True) -> ConditionReport:
    """Status of the three conditions at every relative point of ``gamma``, with witnesses."""
    _require_valid(g)
    by_point = _tangency_by_point(g, gamma)
    reports = tuple(
        _check_point(g, p, by_point[p], sum(gamma.tangencies(p))) for p in gamma.points
    )
    warnings = []
    if realizability:
        for v in g.active_vertices:
            if v.degree > D_MAX:
                warnings.append(f"vertex {v.id}: degree {v.degree} above {D_MAX}, realizability not checked")
                continue
            try:
                if not vertex_realizable(g, v.id):
                    warnings.append(f"vertex {v.id}: no genus-zero cover has this branching")
            except CapacityError as exc:  # pragma: no cover - guarded above
                warnings.append(str(exc))
    return ConditionReport(reports, tuple(warnings))


def is_K_Gamma(g: DualMapGraph, gamma: TangencyData) -> bool:
    """The coarse map is a relative map at every relative point.

    With no relative points this is always true: genus-zero twisted maps to a
    weighted projective line are unconditionally smoothable.
    """
    return check_relative(g, gamma, realizability=False).ok


def is_N_Gamma(g: DualMapGraph, gamma: TangencyData) -> bool:
    """Relative conditions hold and the source is smooth near every fiber over a relative point."""
    if not is_K_Gamma(g, gamma):
        return False
    points = set(gamma.points)
    if any(v.target in points for v in g.contracted_vertices):
        return False
    return not any(g.edge_image(e) in points for e in g.edges)


def is_M_Gamma(g: DualMapGraph, gamma: TangencyData) -> bool:
    """Smooth source carrying the prescribed tangencies."""
    return is_N_Gamma(g, gamma) and len(g.vertices) == 1 and g.vertices[0].is_active


def reduce_contracted(g: DualMapGraph) -> DualMapGraph:
    """Merge every maximal connected contracted subtree into one contracted vertex.

    The merged vertex keeps the smallest id of its subtree, all its marks and
    all the edges leaving it.
    """
    _require_valid(g)
    rep: dict[int, int] = {}
    for comp in g.contracted_components():
        r = min(comp)
        for v in comp:
            rep[v] = r
    if all(rep[v] == v for v in rep):
        return g
    vertices = tuple(v for v in g.vertices if rep.get(v.id, v.id) == v.id)
    edges = []
    for e in g.edges:
        u, w = (rep.get(x, x) for x in e.endpoints)
        if u == w:
            continue
        edges.append(replace(e, endpoints=(u, w)))
    marks = tuple(replace(m, vertex=rep.get(m.vertex, m.vertex)) for m in g.marks)
    return replace(g, vertices=vertices, edges=tuple(edges), marks=marks)


def is_reduced(g: DualMapGraph, point: str | None = None) -> bool:
    return all(len(c) == 1 for c in g.contracted_components(point))


__all__ = [
    "ConditionReport",
    "PointReport",
    "RelativeCondition",
    "TangencyData",
    "Witness",
    "check_relative",
    "is_K_Gamma",
    "is_M_Gamma",
    "is_N_Gamma",
    "is_reduced",
    "reduce_contracted",
]
