"""Stabilizer bookkeeping for twisted maps to weighted projective lines.

The canonical map P(a, b) -> P(a/k, b/k) with k = gcd(a, b) is étale, so
smoothability questions reduce to the coprime case.  All divisibility rules
below are therefore stated for the reduced stabilizer orders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm

from .conditions import RelativeCondition, TangencyData, is_K_Gamma
from .errors import InputError
from .graph import DualMapGraph, Edge, Issue, MarkedPoint, ValidationReport, Vertex
from .target import PROJECTIVE_LINE, STACKY, StackyTarget, weighted_projective

__all__ = [
    "EllipticComponent",
    "EllipticConfig",
    "EllipticNode",
    "PROJECTIVE_LINE",
    "StackyTarget",
    "check_stabilizers",
    "coprime_reduce",
    "elliptic_smoothable",
    "elliptic_to_gamma",
    "minimal_stabilizer",
    "minimal_stabilizers",
    "weighted_projective",
]


def coprime_reduce(a: int, b: int) -> tuple[int, int, int]:
    """``(a', b', k)`` with ``k = gcd(a, b)`` and ``a = k a'``, ``b = k b'``."""
    if a < 1 or b < 1:
        raise InputError(f"weights must be positive, got ({a}, {b})")
    k = gcd(a, b)
    return a // k, b // k, k


def check_stabilizers(g: DualMapGraph, target: StackyTarget | None = None) -> ValidationReport:
    """Representability of the stabilizer data.

    A mark over a point with stabilizer order ``o`` must have stabilizer
    order dividing ``o``; over a relative point this is the generic order.
    Node stabilizers only need to be positive.
    """
    target = target or g.target
    issues = []
    for m in g.marks:
        image = g.mark_image(m)
        if image is None:
            continue
        order = target.order(image)
        if order % m.stabilizer_order:
            kind = "generic" if target.kind(image) != STACKY else "special"
            issues.append(
                Issue("stabilizer", f"order {m.stabilizer_order} does not divide the {kind} order {order} of {image!r}",
                      f"mark {m.id}")
            )
    for e in g.edges:
        if e.stabilizer_order < 1:
            issues.append(Issue("stabilizer", f"node stabilizer {e.stabilizer_order} < 1", f"edge {e.id}"))
    return ValidationReport(tuple(issues))


def minimal_stabilizer(b: int, c: int) -> int:
    """Least ``s >= 1`` with ``b | s c``."""
    if b < 1 or c < 1:
        raise InputError(f"need positive order and contact exponent, got b={b}, c={c}")
    return b // gcd(b, c)


def minimal_stabilizers(g: DualMapGraph, target: StackyTarget | None = None) -> dict[tuple[str, int], int]:
    """Minimal stabilizer orders at special points over stacky target points.

    ``b`` is the order of the target point divided by the generic order.  A
    mark uses its local ramification as contact exponent; a node uses the
    index on each active side.  The result composes with node multipliers of
    a smoothing recipe by lcm (see ``SimpleExtension``).
    """
    target = target or g.target
    out: dict[tuple[str, int], int] = {}
    for m in g.marks:
        image = g.mark_image(m)
        if image is None or target.kind(image) != STACKY:
            continue
        if not g.vertex(m.vertex).is_active:
            raise InputError(f"mark {m.id} lies on a contracted component: no contact exponent")
        b = target.order(image) // target.generic_order
        out[("mark", m.id)] = minimal_stabilizer(b, m.local_ramification)
    for e in g.edges:
        image = g.edge_image(e)
        if image is None or target.kind(image) != STACKY:
            continue
        b = target.order(image) // target.generic_order
        sides = [vid for vid in e.endpoints if g.vertex(vid).is_active]
        if not sides:
            raise InputError(f"edge {e.id} has no active side: no contact exponent")
        out[("edge", e.id)] = lcm(*(minimal_stabilizer(b, e.index_at(v)) for v in sides))
    return out


# -- elliptic surfaces -------------------------------------------------------

J_INFINITY = "inf"
_FIBER = re.compile(r"I(\d+)")


def _fiber_order(label: str) -> int:
    m = _FIBER.fullmatch(label.strip())
    if not m or int(m.group(1)) < 1:
        raise InputError(f"fiber {label!r}: only multiplicative fibers I_n with n >= 1 are modeled")
    return int(m.group(1))


@dataclass(frozen=True)
class EllipticComponent:
    """A component of the base curve.

    ``j_degree`` is the degree of its j-map, or 0 when j is constantly
    infinite.  ``fibers`` are the marked singular fibers as ``"I<n>"``.
    """

    id: int
    j_degree: int
    fibers: tuple[str, ...] = ()
    stabilizers: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if self.j_degree < 0:
            raise InputError(f"component {self.id}: negative j-degree")
        self.orders  # rejects unmodeled fiber types early
        if self.stabilizers is not None:
            object.__setattr__(self, "stabilizers", tuple(self.stabilizers))
            if len(self.stabilizers) != len(self.fibers):
                raise InputError(f"component {self.id}: one stabilizer per marked fiber")

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(_fiber_order(f) for f in self.fibers)


@dataclass(frozen=True)
class EllipticNode:
    between: tuple[int, int]
    ramification: int = 1


@dataclass(frozen=True)
class EllipticConfig:
    components: tuple[EllipticComponent, ...]
    nodes: tuple[EllipticNode, ...] = ()

    @classmethod
    def from_dict(cls, data: dict) -> EllipticConfig:
        try:
            comps = tuple(
                EllipticComponent(c["id"], c.get("j_degree", 0), tuple(c.get("fibers", ())),
                                  tuple(c["stabilizers"]) if "stabilizers" in c else None)
                for c in data["components"]
            )
            nodes = tuple(EllipticNode(tuple(n["between"]), n.get("ramification", 1)) for n in data.get("nodes", ()))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed elliptic configuration: {exc}") from None
        return cls(comps, nodes)


def elliptic_to_gamma(cfg: EllipticConfig) -> tuple[DualMapGraph, TangencyData]:
    """Translate marked I_n fibers into a relative map to P(4,6) over j = infinity.

    The j-map has a pole of order ``n`` at an ``I_n`` fiber, so such a fiber
    becomes a mark of tangency ``n`` over infinity.  Components of constant
    infinite j are contracted to infinity.  The full fiber over infinity is
    claimed only when every nonconstant component has its poles accounted
    for by marks and nodes to constant components.
    """
    ids = [c.id for c in cfg.components]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate component id")
    by_id = {c.id: c for c in cfg.components}
    for n in cfg.nodes:
        if any(x not in by_id for x in n.between):
            raise InputError(f"node {n.between} refers to an unknown component")
        if n.ramification < 1:
            raise InputError(f"node {n.between}: ramification must be positive")

    vertices, marks = [], []
    tangencies = []
    for c in cfg.components:
        vertices.append(Vertex.active(c.id, c.j_degree) if c.j_degree else Vertex.contracted(c.id, J_INFINITY))
        stabs = c.stabilizers or (1,) * len(c.fibers)
        for order, stab in zip(c.orders, stabs):
            mid = len(marks) + 1
            if c.j_degree:
                marks.append(MarkedPoint(mid, c.id, order, J_INFINITY, order, stab))
            else:
                marks.append(MarkedPoint(mid, c.id, order, J_INFINITY, None, stab))
            tangencies.append(order)

    edges = []
    accounted = {c.id: sum(c.orders) for c in cfg.components if c.j_degree}
    for k, n in enumerate(cfg.nodes):
        u, w = n.between
        cu, cw = by_id[u], by_id[w]
        if cu.j_degree and cw.j_degree:
            edges.append(Edge(k, (u, w), (1, 1)))
            continue
        for side in (cu, cw):
            if side.j_degree:
                if n.ramification > side.j_degree:
                    raise InputError(f"node {n.between}: ramification {n.ramification} exceeds j-degree {side.j_degree}")
                accounted[side.id] += n.ramification
        edges.append(Edge(k, (u, w), n.ramification))

    for cid, total in accounted.items():
        if total > by_id[cid].j_degree:
            raise InputError(
                f"component {cid}: marked pole orders {total} exceed the j-degree {by_id[cid].j_degree}"
            )
    degree = sum(c.j_degree for c in cfg.components)
    if degree < 1:
        raise InputError("the j-map is constant on every component")
    full = all(total == by_id[cid].j_degree for cid, total in accounted.items())
    relative = (J_INFINITY,) if tangencies else ()
    target = weighted_projective(4, 6, relative)
    flags = () if full or not relative else ((J_INFINITY, False),)
    g = DualMapGraph(tuple(vertices), tuple(edges), tuple(marks), target, degree, flags)
    rel = (RelativeCondition(J_INFINITY, tuple(tangencies)),) if tangencies else ()
    return g, TangencyData(0, rel)


def elliptic_smoothable(cfg: EllipticConfig) -> bool:
    g, gamma = elliptic_to_gamma(cfg)
    return is_K_Gamma(g, gamma)

