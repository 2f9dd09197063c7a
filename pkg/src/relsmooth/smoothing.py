"""Numerical certificate of a smoothing near one relative point.

For a reduced graph, let ``E`` be a component contracted to the relative point,
meeting active components ``C_j`` at nodes with ramification ``e_j``.  The
smoothing is built on a total space with an ``A_{m_j - 1}`` singularity at
each node, where

    a = R * Π_j e_j,   m_j = a / e_j,

and ``R >= 1`` is an optional common multiplier (``R = 1`` is the basic
recipe).  Then ``E·C_j = 1/m_j``, ``E² = -Σ_j 1/m_j`` and, writing ``D`` for
the divisor of marks weighted by tangency, the pullback ``D + Σ a E`` of the
relative point meets ``C_j`` in ``e_j`` and ``E`` in zero exactly when ``E``
is balanced.

Multipliers are given per edge (``r_j``).  They enter ``a`` as a product, so
``a = Π r_j e_j``, but every ``m_j`` stays ``a / e_j``: a node's order cannot
absorb its own multiplier without breaking ``a·E·C_j = e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .errors import ConditionsFailedError, InputError, NotReducedError
from .graph import DualMapGraph


@dataclass(frozen=True)
class NodeRecipe:
    edge: int
    active_vertex: int
    ramification: int
    multiplier: int
    order: int

    @property
    def singularity(self) -> str:
        return f"A_{self.order - 1}"

    @property
    def stabilizer_order(self) -> int:
        return self.order

    @property
    def exponent(self) -> int:
        """Local equation ``xy = t^m`` of the smoothed node."""
        return self.order

    def to_dict(self) -> dict:
        return {
            "edge": self.edge,
            "active_vertex": self.active_vertex,
            "ramification": self.ramification,
            "multiplier": self.multiplier,
            "order": self.order,
            "singularity": self.singularity,
            "stabilizer": self.stabilizer_order,
            "exponent": self.exponent,
        }


@dataclass(frozen=True)
class ContractedRecipe:
    vertex: int
    coefficient: int
    nodes: tuple[NodeRecipe, ...]
    mark_tangency: int

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "coefficient": self.coefficient,
            "mark_tangency": self.mark_tangency,
            "nodes": [n.to_dict() for n in self.nodes],
        }


@dataclass(frozen=True)
class SmoothingRecipe:
    point: str
    contracted: tuple[ContractedRecipe, ...]

    def at(self, vid: int) -> ContractedRecipe:
        for c in self.contracted:
            if c.vertex == vid:
                return c
        raise KeyError(vid)

    @property
    def nodes(self) -> tuple[NodeRecipe, ...]:
        return tuple(n for c in self.contracted for n in c.nodes)

    def to_dict(self) -> dict:
        return {"point": self.point, "contracted": [c.to_dict() for c in self.contracted]}


# -- per-vertex arithmetic ---------------------------------------------------


def coefficient(ramifications, multipliers=None) -> int:
    multipliers = multipliers or [1] * len(ramifications)
    return prod(r * e for r, e in zip(multipliers, ramifications))


def node_orders(ramifications, multipliers=None) -> list[int]:
    a = coefficient(ramifications, multipliers)
    return [a // e for e in ramifications]


def minimal_common_multiplier(ramifications, targets) -> int:
    """Least ``R`` with every ``R * Π e / e_j`` divisible by ``targets[j]`` (``None`` = no target)."""
    p = prod(ramifications)
    need = 1
    for e, t in zip(ramifications, targets):
        if t:
            base = p // e
            need = lcm(need, t // gcd(t, base))
    return need


# -- recipe ------------------------------------------------------------------


def _contracted_over(g: DualMapGraph, point: str):
    return [v for v in g.contracted_vertices if v.target == point]


def recipe(g: DualMapGraph, point: str, multipliers: dict[int, int] | None = None,
           divisibility: dict[int, int] | None = None, check: bool = True) -> SmoothingRecipe:
    """Coefficients and node orders for every component contracted to ``point``.

    ``multipliers`` maps edge ids to ``r >= 1``.  ``divisibility`` maps edge
    ids to integers the node order must be divisible by; the minimal common
    multiplier achieving this is put on the lowest-id edge of each component.
    With ``check`` the relative conditions must hold at ``point``.
    """
    from .conditions import _require_valid, check_relative, is_reduced, TangencyData

    _require_valid(g)
    if point not in g.target.relative_points:
        raise InputError(f"{point!r} is not a relative point of the target")
    if multipliers and divisibility:
        raise InputError("give multipliers or divisibility targets, not both")
    if not is_reduced(g, point):
        raise NotReducedError(f"contracted components over {point!r} are not irreducible; reduce first")
    for d in (multipliers or {}), (divisibility or {}):
        for eid, r in d.items():
            if not isinstance(r, int) or r < 1:
                raise InputError(f"edge {eid}: multiplier {r!r} must be a positive integer")
    known = {e.id for e in g.edges}
    unknown = sorted((set(multipliers or {}) | set(divisibility or {})) - known)
    if unknown:
        raise InputError(f"unknown edge ids {unknown}")

    if check:
        report = check_relative(g, TangencyData.from_graph(g), realizability=False)
        bad = [p for p in report.points if p.point == point and not p.ok]
        if bad:
            raise ConditionsFailedError(f"relative conditions fail at {point!r}", report)

    out = []
    for v in _contracted_over(g, point):
        edges = sorted(g.edges_at(v.id), key=lambda e: e.id)
        es = [e.index_at(e.other(v.id)) for e in edges]
        if divisibility:
            R = minimal_common_multiplier(es, [divisibility.get(e.id) for e in edges])
            rs = [R] + [1] * (len(edges) - 1)
        else:
            rs = [(multipliers or {}).get(e.id, 1) for e in edges]
        a = coefficient(es, rs)
        nodes = tuple(
            NodeRecipe(e.id, e.other(v.id), ei, r, a // ei) for e, ei, r in zip(edges, es, rs)
        )
        d_sum = sum(m.tangency for m in g.marks_on(v.id))
        out.append(ContractedRecipe(v.id, a, nodes, d_sum))
    return SmoothingRecipe(point, tuple(out))


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionReport:
    point: str
    self_intersection: dict[int, Fraction]
    node_intersection: dict[tuple[int, int], Fraction]
    contracted_pairs: dict[tuple[int, int], Fraction]
    mark_degree: dict[int, Fraction]
    pullback_on_contracted: dict[int, Fraction]
    pullback_on_active: dict[tuple[int, int], Fraction]
    tangency_identity: dict[int, bool]
    balance_identity: dict[int, bool]
    component_degrees: dict[int, Fraction]

    @property
    def ok(self) -> bool:
        return (
            all(self.tangency_identity.values())
            and all(self.balance_identity.values())
            and all(v == 0 for v in self.component_degrees.values())
        )

    @property
    def unbalanced(self) -> list[int]:
        return sorted(v for v, ok in self.balance_identity.items() if not ok)

    def fractions(self):
        yield from self.self_intersection.values()
        yield from self.node_intersection.values()
        yield from self.contracted_pairs.values()
        yield from self.mark_degree.values()
        yield from self.pullback_on_contracted.values()
        yield from self.pullback_on_active.values()
        yield from self.component_degrees.values()

    def to_dict(self) -> dict:
        def s(x):
            return str(x)

        return {
            "point": self.point,
            "ok": self.ok,
            "E.E": {str(k): s(v) for k, v in self.self_intersection.items()},
            "E.C": [{"contracted": i, "edge": e, "value": s(v)} for (i, e), v in self.node_intersection.items()],
            "E_i.E_k": [{"pair": list(k), "value": s(v)} for k, v in self.contracted_pairs.items()],
            "D.E": {str(k): s(v) for k, v in self.mark_degree.items()},
            "(D+aE).E": {str(k): s(v) for k, v in self.pullback_on_contracted.items()},
            "aE.C": [{"contracted": i, "edge": e, "value": s(v)} for (i, e), v in self.pullback_on_active.items()],
            "tangency_identity": {str(k): v for k, v in self.tangency_identity.items()},
            "balance_identity": {str(k): v for k, v in self.balance_identity.items()},
            "component_degrees": {str(k): s(v) for k, v in self.component_degrees.items()},
        }


def verify_intersections(g: DualMapGraph, point: str, rec: SmoothingRecipe) -> IntersectionReport:
    """Exact intersection numbers on the total space of the smoothing and the two identities."""
    self_int: dict[int, Fraction] = {}
    node_int: dict[tuple[int, int], Fraction] = {}
    pairs: dict[tuple[int, int], Fraction] = {}
    dE: dict[int, Fraction] = {}
    pull_E: dict[int, Fraction] = {}
    pull_C: dict[tuple[int, int], Fraction] = {}
    tan_ok: dict[int, bool] = {}
    bal_ok: dict[int, bool] = {}
    for c in rec.contracted:
        self_int[c.vertex] = -sum((Fraction(1, n.order) for n in c.nodes), Fraction(0))
        dE[c.vertex] = Fraction(c.mark_tangency)
        ok = True
        for n in c.nodes:
            node_int[(c.vertex, n.edge)] = Fraction(1, n.order)
            pull_C[(c.vertex, n.edge)] = c.coefficient * Fraction(1, n.order)
            ok = ok and pull_C[(c.vertex, n.edge)] == n.ramification
        tan_ok[c.vertex] = ok
    ids = [c.vertex for c in rec.contracted]
    for i in ids:
        for k in ids:
            if i < k:
                # distinct components over one point are disjoint in a reduced graph
                pairs[(i, k)] = Fraction(0)
    for c in rec.contracted:
        others = sum((rec.at(k).coefficient * pairs[tuple(sorted((c.vertex, k)))] for k in ids if k != c.vertex),
                     Fraction(0))
        pull_E[c.vertex] = dE[c.vertex] + c.coefficient * self_int[c.vertex] + others
        bal_ok[c.vertex] = pull_E[c.vertex] == 0
    degrees = verify_degree_zero(g, point, rec)
    return IntersectionReport(point, self_int, node_int, pairs, dE, pull_E, pull_C, tan_ok, bal_ok, degrees)


def verify_degree_zero(g: DualMapGraph, point: str, rec: SmoothingRecipe) -> dict[int, Fraction]:
    """Degree of ``D + Σ a E - B`` on each component, with ``B`` a general fiber.

    All zero means the line bundle is trivial componentwise, so the pulled
    back relative divisor is linearly equivalent to a general fiber and the
    reconstructed map restricts to the original one.
    """
    by_vertex = {c.vertex: c for c in rec.contracted}
    out: dict[int, Fraction] = {}
    for v in g.vertices:
        if v.is_active:
            total = Fraction(sum(m.tangency for m in g.marks_on(v.id) if m.target == point))
            for e in g.edges_at(v.id):
                c = by_vertex.get(e.other(v.id))
                if c is None:
                    continue
                node = next(n for n in c.nodes if n.edge == e.id)
                total += Fraction(c.coefficient, node.order)
            out[v.id] = total - v.degree
        elif v.id in by_vertex:
            c = by_vertex[v.id]
            out[v.id] = Fraction(c.mark_tangency) - sum((Fraction(c.coefficient, n.order) for n in c.nodes), Fraction(0))
        else:
            out[v.id] = Fraction(0)
    return out


# -- simple extensions -------------------------------------------------------


@dataclass(frozen=True)
class SimpleExtension:
    """Multipliers ``φ`` of a simple extension of log structures.

    Keys are ``("edge", id)`` or ``("mark", id)``.  A node smoothed with an
    ``A_{m-1}`` singularity on the total space carries multiplier ``m``,
    equivalently a ``μ_m`` stabilizer on the twisted curve.
    """

    multipliers: tuple[tuple[tuple[str, int], int], ...] = ()

    def __post_init__(self):
        items = self.multipliers.items() if isinstance(self.multipliers, dict) else self.multipliers
        object.__setattr__(self, "multipliers", tuple(sorted(items)))
        if any(m < 1 for _, m in self.multipliers):
            raise ValueError("multipliers must be positive")

    def __getitem__(self, key: tuple[str, int]) -> int:
        return dict(self.multipliers).get(key, 1)

    def compose(self, other: SimpleExtension) -> SimpleExtension:
        """Smallest extension refining both (multiplier-wise lcm)."""
        a, b = dict(self.multipliers), dict(other.multipliers)
        return SimpleExtension({k: lcm(a.get(k, 1), b.get(k, 1)) for k in a.keys() | b.keys()})

    def phi(self, keys) -> tuple[int, ...]:
        return tuple(self[k] for k in keys)

    def to_dict(self) -> dict:
        return {f"{kind}:{i}": m for (kind, i), m in self.multipliers}


def simple_extension(rec: SmoothingRecipe, g: DualMapGraph | None = None) -> SimpleExtension:
    """Node multipliers of the recipe; with ``g`` every other edge is listed with multiplier 1."""
    mult = {("edge", e.id): 1 for e in g.edges} if g is not None else {}
    for n in rec.nodes:
        mult[("edge", n.edge)] = n.order
    return SimpleExtension(mult)
