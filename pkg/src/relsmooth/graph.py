"""Decorated dual trees of genus-zero prestable maps.

A :class:`DualMapGraph` records the combinatorial type of a map from a nodal
genus-zero curve to a rational target: one vertex per irreducible component
(either *active*, mapping with positive degree, or *contracted* to a target
point), one edge per node and the marked points.  Continuous moduli (positions
of points, cross-ratios) are deliberately forgotten.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict, deque
from dataclasses import dataclass, replace
from functools import cached_property
from importlib import resources

from .errors import ParseError, SchemaError
from .target import RELATIVE, StackyTarget

ACTIVE = "active"
CONTRACTED = "contracted"

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MarkedPoint:
    """A marked point.

    ``tangency`` is the prescribed contact order with its relative point
    (0 for free marks).  ``ramification`` is the actual local ramification
    index of the map at the point when it lies on an active component;
    ``None`` means "equal to the tangency" (or 1 for a free mark).
    """

    id: int
    vertex: int
    tangency: int = 0
    target: str | None = None
    ramification: int | None = None
    stabilizer_order: int = 1

    @property
    def local_ramification(self) -> int:
        if self.ramification is not None:
            return self.ramification
        return self.tangency if self.tangency > 0 else 1


@dataclass(frozen=True)
class Vertex:
    id: int
    role: str = ACTIVE
    degree: int = 0
    target: str | None = None

    @classmethod
    def active(cls, id: int, degree: int) -> Vertex:
        return cls(id, ACTIVE, degree, None)

    @classmethod
    def contracted(cls, id: int, target: str) -> Vertex:
        return cls(id, CONTRACTED, 0, target)

    @property
    def is_active(self) -> bool:
        return self.role == ACTIVE


@dataclass(frozen=True)
class Edge:
    """A node joining two components.

    ``ramification`` is a single integer (the index of the active side when
    the other side is contracted) or, for a node between two active
    components, an ordered pair aligned with ``endpoints``.  ``target`` records
    the common image of an active-active node when it is known.
    """

    id: int
    endpoints: tuple[int, int]
    ramification: int | tuple[int, int] = 1
    stabilizer_order: int = 1
    target: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "endpoints", tuple(self.endpoints))
        if isinstance(self.ramification, list):
            object.__setattr__(self, "ramification", tuple(self.ramification))

    def other(self, vid: int) -> int:
        u, v = self.endpoints
        return v if vid == u else u

    def index_at(self, vid: int) -> int:
        r = self.ramification
        if isinstance(r, tuple):
            return r[0] if vid == self.endpoints[0] else r[1]
        return r


@dataclass(frozen=True)
class DualMapGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    marks: tuple[MarkedPoint, ...]
    target: StackyTarget
    degree: int
    fiber_flags: tuple[tuple[str, bool], ...] = ()
    labeled_marks: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "marks", tuple(self.marks))
        flags = self.fiber_flags.items() if isinstance(self.fiber_flags, dict) else self.fiber_flags
        object.__setattr__(self, "fiber_flags", tuple(sorted((str(k), bool(v)) for k, v in flags)))

    # -- lookups -------------------------------------------------------

    @cached_property
    def _vertex_map(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _marks_at(self) -> dict[int, list[MarkedPoint]]:
        out = defaultdict(list)
        for m in self.marks:
            out[m.vertex].append(m)
        return out

    @cached_property
    def _edges_at(self) -> dict[int, list[Edge]]:
        out = defaultdict(list)
        for e in self.edges:
            for vid in set(e.endpoints):
                out[vid].append(e)
        return out

    def vertex(self, vid: int) -> Vertex:
        return self._vertex_map[vid]

    def mark(self, mid: int) -> MarkedPoint:
        for m in self.marks:
            if m.id == mid:
                return m
        raise KeyError(mid)

    def marks_on(self, vid: int) -> list[MarkedPoint]:
        return self._marks_at.get(vid, [])

    def edges_at(self, vid: int) -> list[Edge]:
        return self._edges_at.get(vid, [])

    def neighbors(self, vid: int) -> list[int]:
        return [e.other(vid) for e in self.edges_at(vid)]

    def special_points(self, vid: int) -> int:
        return len(self.marks_on(vid)) + len(self.edges_at(vid))

    @property
    def active_vertices(self) -> list[Vertex]:
        return [v for v in self.vertices if v.is_active]

    @property
    def contracted_vertices(self) -> list[Vertex]:
        return [v for v in self.vertices if not v.is_active]

    def is_full_fiber(self, point: str) -> bool:
        return dict(self.fiber_flags).get(point, True)

    def mark_image(self, m: MarkedPoint) -> str | None:
        v = self._vertex_map.get(m.vertex)
        if v is not None and not v.is_active:
            return v.target
        return m.target

    def edge_image(self, e: Edge) -> str | None:
        for vid in e.endpoints:
            v = self._vertex_map.get(vid)
            if v is not None and not v.is_active:
                return v.target
        return e.target

    def fiber_parts(self, vid: int, point: str) -> list[tuple[str, int, int]]:
        """Recorded points of an active vertex over ``point``.

        Returns ``(kind, id, local index)`` triples with kind ``"mark"``,
        ``"contracted-node"`` or ``"active-node"``.
        """
        parts = []
        for m in self.marks_on(vid):
            if m.target == point:
                parts.append(("mark", m.id, m.local_ramification))
        for e in self.edges_at(vid):
            other = self._vertex_map.get(e.other(vid))
            if other is None:
                continue
            if not other.is_active:
                if other.target == point:
                    parts.append(("contracted-node", e.id, e.index_at(vid)))
            elif e.target == point:
                parts.append(("active-node", e.id, e.index_at(vid)))
        return parts

    def contracted_components(self, point: str | None = None) -> list[frozenset[int]]:
        """Maximal connected sets of contracted vertices (optionally over one point)."""
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v.is_active or v.id in seen or (point is not None and v.target != point):
                continue
            comp = {v.id}
            queue = deque([v.id])
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    w = self._vertex_map.get(y)
                    if w is not None and not w.is_active and w.target == v.target and y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    ref: str = ""

    def __str__(self):
        return f"[{self.code}] {self.ref + ': ' if self.ref else ''}{self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def to_dict(self) -> dict:
        return {"ok": self.ok, "issues": [vars(i) for i in self.issues]}


def _is_tree(g: DualMapGraph, issues: list[Issue]) -> None:
    ids = [v.id for v in g.vertices]
    if not ids:
        issues.append(Issue("empty", "graph has no vertices"))
        return
    adj = defaultdict(list)
    for e in g.edges:
        u, v = e.endpoints
        if u in g._vertex_map and v in g._vertex_map and u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = {ids[0]}
    queue = deque([ids[0]])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != len(ids):
        missing = sorted(set(ids) - seen)
        issues.append(Issue("not-connected", f"vertices {missing} unreachable", "graph"))
    if len(g.edges) >= len(ids):
        issues.append(
            Issue("not-a-tree", f"{len(g.edges)} edges on {len(ids)} vertices: the dual graph has a cycle", "graph")
        )


def validate(g: DualMapGraph) -> ValidationReport:
    """Report every violated invariant of ``g``; an empty report means well-formed."""
    issues: list[Issue] = []
    target = g.target

    for kind, items in (("vertex", g.vertices), ("edge", g.edges), ("mark", g.marks)):
        ids = [x.id for x in items]
        dup = sorted({i for i in ids if ids.count(i) > 1})
        if dup:
            issues.append(Issue("duplicate-id", f"duplicate {kind} ids {dup}"))

    if g.degree < 1:
        issues.append(Issue("total-degree", f"total degree {g.degree} < 1", "graph"))

    for label, _ in g.fiber_flags:
        if target.kind(label) != RELATIVE:
            issues.append(Issue("unknown-relative", f"fiber flag for non-relative point {label!r}", "flags"))

    for v in g.vertices:
        ref = f"vertex {v.id}"
        if v.role not in (ACTIVE, CONTRACTED):
            issues.append(Issue("bad-role", f"unknown role {v.role!r}", ref))
        elif v.is_active and v.degree < 1:
            issues.append(Issue("nonpositive-degree", f"active vertex has degree {v.degree}", ref))
        elif not v.is_active:
            if v.target is None:
                issues.append(Issue("contracted-target", "contracted vertex without target point", ref))
            k = g.special_points(v.id)
            if k < 3:
                issues.append(
                    Issue("unstable-contracted-vertex", f"contracted vertex has {k} < 3 special points", ref)
                )

    active_sum = sum(v.degree for v in g.active_vertices)
    if active_sum != g.degree:
        issues.append(Issue("degree-sum", f"active degrees sum to {active_sum}, expected {g.degree}", "graph"))

    for e in g.edges:
        ref = f"edge {e.id}"
        u, w = e.endpoints
        if u not in g._vertex_map or w not in g._vertex_map:
            issues.append(Issue("dangling-reference", f"endpoint not a vertex: {e.endpoints}", ref))
            continue
        if u == w:
            issues.append(Issue("self-loop", "edge joins a vertex to itself", ref))
        r = e.ramification
        values = r if isinstance(r, tuple) else (r,)
        if isinstance(r, tuple) and len(r) != 2:
            issues.append(Issue("bad-edge", "ramification pair must have two entries", ref))
        if any((not isinstance(x, int)) or x < 1 for x in values):
            issues.append(Issue("bad-edge", f"ramification {r} must be >= 1", ref))
        if e.stabilizer_order < 1:
            issues.append(Issue("bad-edge", f"stabilizer order {e.stabilizer_order} < 1", ref))
        a, b = g.vertex(u), g.vertex(w)
        if not a.is_active and not b.is_active and a.target != b.target:
            issues.append(
                Issue("contracted-targets-differ", f"joins components contracted to {a.target!r} and {b.target!r}", ref)
            )
        if e.target is not None and (not a.is_active or not b.is_active):
            image = a.target if not a.is_active else b.target
            if e.target != image:
                issues.append(Issue("edge-target", f"node target {e.target!r} differs from {image!r}", ref))
        for x in (a, b):
            if x.is_active and e.index_at(x.id) > x.degree:
                issues.append(
                    Issue("ramification-exceeds-degree", f"index {e.index_at(x.id)} exceeds degree {x.degree}", ref)
                )

    for m in g.marks:
        ref = f"mark {m.id}"
        if m.vertex not in g._vertex_map:
            issues.append(Issue("dangling-reference", f"mark on unknown vertex {m.vertex}", ref))
            continue
        v = g.vertex(m.vertex)
        if m.tangency < 0:
            issues.append(Issue("bad-mark", f"negative tangency {m.tangency}", ref))
        if m.stabilizer_order < 1:
            issues.append(Issue("bad-mark", f"stabilizer order {m.stabilizer_order} < 1", ref))
        if m.ramification is not None and m.ramification < 1:
            issues.append(Issue("bad-mark", f"ramification {m.ramification} < 1", ref))
        if not v.is_active and m.target is not None and m.target != v.target:
            issues.append(Issue("mark-target", f"target {m.target!r} differs from its component's {v.target!r}", ref))
        image = g.mark_image(m)
        if m.tangency > 0 and (image is None or target.kind(image) != RELATIVE):
            issues.append(Issue("mark-target", f"tangency {m.tangency} requires a relative target, got {image!r}", ref))
        if v.is_active and m.local_ramification > v.degree:
            issues.append(
                Issue("ramification-exceeds-degree", f"ramification {m.local_ramification} > degree {v.degree}", ref)
            )

    if not any(i.code == "dangling-reference" for i in issues):
        _is_tree(g, issues)
        for v in g.active_vertices:
            points = {p for m in g.marks_on(v.id) if (p := m.target) is not None}
            points |= {p for e in g.edges_at(v.id) if (p := g.edge_image(e)) is not None}
            for p in sorted(points):
                total = sum(idx for _, _, idx in g.fiber_parts(v.id, p))
                ref = f"vertex {v.id}"
                if total > v.degree:
                    issues.append(Issue("fiber-overflow", f"recorded fiber over {p!r} has degree {total} > {v.degree}", ref))
                elif total < v.degree and target.kind(p) == RELATIVE and g.is_full_fiber(p):
                    issues.append(
                        Issue("fiber-deficit", f"full fiber over {p!r} claimed but only {total} of {v.degree} recorded", ref)
                    )
            for p in target.relative_points:
                if p not in points and g.is_full_fiber(p):
                    issues.append(
                        Issue("fiber-deficit", f"full fiber over {p!r} claimed but none of {v.degree} recorded", f"vertex {v.id}")
                    )
    return ValidationReport(tuple(issues))


# -- canonical forms ---------------------------------------------------------


def _s(x) -> str:
    return "" if x is None else str(x)


def _mark_label(g: DualMapGraph, m: MarkedPoint, labeled: bool):
    on_active = g.vertex(m.vertex).is_active
    return (
        m.tangency,
        _s(g.mark_image(m)),
        m.local_ramification if on_active else 0,
        m.stabilizer_order,
        m.id if labeled else -1,
    )


def _vertex_label(g: DualMapGraph, v: Vertex, labeled: bool):
    head = ("A", v.degree, "") if v.is_active else ("E", 0, _s(v.target))
    return head + (tuple(sorted(_mark_label(g, m, labeled) for m in g.marks_on(v.id))),)


def _edge_label(g: DualMapGraph, e: Edge, parent: int, child: int):
    def idx(vid):
        return e.index_at(vid) if g.vertex(vid).is_active else 0

    return (idx(parent), idx(child), e.stabilizer_order, _s(e.target))


def _centers(g: DualMapGraph) -> list[int]:
    degree = {v.id: len(g.edges_at(v.id)) for v in g.vertices}
    remaining = set(degree)
    leaves = [v for v, k in degree.items() if k <= 1]
    while len(remaining) > 2:
        nxt = []
        for leaf in leaves:
            remaining.discard(leaf)
            for y in g.neighbors(leaf):
                if y in remaining:
                    degree[y] -= 1
                    if degree[y] == 1:
                        nxt.append(y)
        leaves = nxt
    return sorted(remaining)


def _rooted(g: DualMapGraph, root: int, labeled: bool):
    """Canonical nested key of ``g`` rooted at ``root`` plus child orderings."""
    order: dict[int, list[tuple[Edge, int]]] = {}

    def key(v: int, parent_edge: int | None):
        children = []
        for e in g.edges_at(v):
            if e.id == parent_edge:
                continue
            c = e.other(v)
            children.append((_edge_label(g, e, v, c), key(c, e.id), e, c))
        children.sort(key=lambda t: (t[0], t[1]))
        order[v] = [(t[2], t[3]) for t in children]
        return (_vertex_label(g, g.vertex(v), labeled), tuple((t[0], t[1]) for t in children))

    return key(root, None), order


def _global_label(g: DualMapGraph):
    t = g.target
    flags = tuple((p, g.is_full_fiber(p)) for p in t.relative_points)
    return (g.degree, t.generic_order, t.special_points, t.relative_points, flags)


def canonical_form(g: DualMapGraph, labeled_marks: bool | None = None) -> str:
    """Key equal for two graphs iff they are isomorphic as decorated trees.

    Marks with identical decorations are interchangeable unless
    ``labeled_marks`` is set (it defaults to the graph's own flag).
    """
    report = validate(g)
    if not report.ok:
        from .errors import InvalidGraphError

        raise InvalidGraphError(report)
    labeled = g.labeled_marks if labeled_marks is None else labeled_marks
    best = min(_rooted(g, c, labeled)[0] for c in _centers(g))
    return repr((_global_label(g), labeled, best))


def key_digest(key: str, length: int = 12) -> str:
    return hashlib.sha256(key.encode()).hexdigest()[:length]


def canonical_relabel(g: DualMapGraph) -> DualMapGraph:
    """Renumber vertices and edges along the canonical traversal.

    Isomorphic graphs map to identical vertex/edge tables; mark ids are kept.
    """
    labeled = g.labeled_marks
    rooted = [(_rooted(g, c, labeled), c) for c in _centers(g)]
    (_, order), root = min(rooted, key=lambda t: t[0][0])
    vmap: dict[int, int] = {}
    new_edges: list[Edge] = []
    vmap[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e, c in order[v]:
            vmap[c] = len(vmap)
            r = e.ramification
            if isinstance(r, tuple) and e.endpoints[0] != v:
                r = (r[1], r[0])
            new_edges.append(replace(e, id=len(new_edges), endpoints=(vmap[v], vmap[c]), ramification=r))
            queue.append(c)
    verts = sorted((replace(v, id=vmap[v.id]) for v in g.vertices), key=lambda v: v.id)
    marks = sorted((replace(m, vertex=vmap[m.vertex]) for m in g.marks), key=lambda m: m.id)
    return replace(g, vertices=tuple(verts), edges=tuple(new_edges), marks=tuple(marks))


# -- serialization -----------------------------------------------------------


def to_dict(g: DualMapGraph) -> dict:
    def vdict(v: Vertex):
        if v.is_active:
            return {"id": v.id, "role": ACTIVE, "degree": v.degree}
        return {"id": v.id, "role": CONTRACTED, "target": v.target}

    def edict(e: Edge):
        d = {
            "id": e.id,
            "endpoints": list(e.endpoints),
            "ramification": list(e.ramification) if isinstance(e.ramification, tuple) else e.ramification,
            "stabilizer": e.stabilizer_order,
        }
        if e.target is not None:
            d["target"] = e.target
        return d

    def mdict(m: MarkedPoint):
        d = {"id": m.id, "vertex": m.vertex, "tangency": m.tangency, "stabilizer": m.stabilizer_order}
        if m.target is not None:
            d["target"] = m.target
        if m.ramification is not None:
            d["ramification"] = m.ramification
        return d

    return {
        "schema": SCHEMA_VERSION,
        "target": g.target.to_dict(),
        "degree": g.degree,
        "vertices": [vdict(v) for v in g.vertices],
        "edges": [edict(e) for e in g.edges],
        "marks": [mdict(m) for m in g.marks],
        "flags": {"full_fiber": dict(g.fiber_flags), "labeled_marks": g.labeled_marks},
    }


def to_json(g: DualMapGraph) -> bytes:
    return json.dumps(to_dict(g), indent=2, sort_keys=True).encode()


def load_schema(name: str) -> dict:
    text = resources.files("relsmooth").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _path(error) -> str:
    parts = ""
    for p in error.absolute_path:
        parts += f"[{p}]" if isinstance(p, int) else (f".{p}" if parts else str(p))
    if error.validator == "required":
        missing = [k for k in error.validator_value if k not in error.instance]
        if missing:
            parts += ("." if parts else "") + missing[0]
    return parts or "$"


def check_schema(data, schema_name: str) -> None:
    import jsonschema

    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(data), key=lambda e: (len(list(e.absolute_path)), str(e.message)))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(err.message, _path(err))


def check_output(data, command: str) -> None:
    """Validate a CLI JSON payload against its shipped output schema."""
    import jsonschema
    from referencing import Registry, Resource

    folder = resources.files("relsmooth").joinpath("schemas")
    registry = Registry()
    for item in folder.iterdir():
        if item.name.endswith(".json"):
            schema = json.loads(item.read_text())
            registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
    schema = json.loads(folder.joinpath(f"{command}.output.schema.json").read_text())
    errors = list(jsonschema.Draft202012Validator(schema, registry=registry).iter_errors(data))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(err.message, _path(err))


def parse_json(text: bytes | str):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, len(text[: exc.pos].encode("utf-8"))) from None


def from_dict(data: dict) -> DualMapGraph:
    check_schema(data, "graph")
    vertices = []
    for v in data["vertices"]:
        if v["role"] == ACTIVE:
            vertices.append(Vertex.active(v["id"], v["degree"]))
        else:
            vertices.append(Vertex.contracted(v["id"], v["target"]))
    edges = [
        Edge(
            e["id"],
            tuple(e["endpoints"]),
            tuple(e["ramification"]) if isinstance(e.get("ramification", 1), list) else e.get("ramification", 1),
            e.get("stabilizer", 1),
            e.get("target"),
        )
        for e in data.get("edges", [])
    ]
    marks = [
        MarkedPoint(
            m["id"], m["vertex"], m.get("tangency", 0), m.get("target"), m.get("ramification"), m.get("stabilizer", 1)
        )
        for m in data.get("marks", [])
    ]
    flags = data.get("flags", {})
    return DualMapGraph(
        tuple(vertices),
        tuple(edges),
        tuple(marks),
        StackyTarget.from_dict(data.get("target", {})),
        data["degree"],
        tuple(flags.get("full_fiber", {}).items()),
        flags.get("labeled_marks", False),
    )


def from_json(text: bytes | str) -> DualMapGraph:
    return from_dict(parse_json(text))


def to_dot(g: DualMapGraph) -> str:
    lines = ["graph G {", "  node [shape=box];"]
    for v in g.vertices:
        label = f"A:d={v.degree}" if v.is_active else f"E→{v.target}"
        marks = " ".join(
            f"p{m.id}({m.tangency}{'@' + g.mark_image(m) if g.mark_image(m) else ''})" for m in g.marks_on(v.id)
        )
        extra = f', xlabel="{marks}"' if marks else ""
        lines.append(f'  v{v.id} [label="{label}"{extra}];')
    for e in g.edges:
        r = e.ramification
        ram = ",".join(map(str, r)) if isinstance(r, tuple) else str(r)
        u, w = e.endpoints
        lines.append(f'  v{u} -- v{w} [label="e={ram},μ{e.stabilizer_order}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- small constructors used throughout tests and docs -----------------------


def single_vertex(degree: int, tangencies=(), point: str = "inf", target: StackyTarget | None = None,
                  ramifications=None, n_free: int = 0) -> DualMapGraph:
    """Smooth source: one active vertex with free marks first, then relative marks."""
    from .target import PROJECTIVE_LINE

    target = target or PROJECTIVE_LINE.with_relative((point,) if tangencies else ())
    marks = [MarkedPoint(i + 1, 0) for i in range(n_free)]
    for k, d in enumerate(tangencies):
        r = ramifications[k] if ramifications is not None else None
        marks.append(MarkedPoint(n_free + k + 1, 0, d, point, r))
    return DualMapGraph((Vertex.active(0, degree),), (), tuple(marks), target, degree)


def comb(degree: int, edge_ramification: int, tangencies, point: str = "inf",
         target: StackyTarget | None = None, full_fiber: bool = True) -> DualMapGraph:
    """Active vertex joined by one node to a component contracted to ``point`` carrying the marks."""
    from .target import PROJECTIVE_LINE

    target = target or PROJECTIVE_LINE.with_relative((point,))
    marks = tuple(MarkedPoint(k + 1, 1, d, point) for k, d in enumerate(tangencies))
    flags = () if full_fiber else ((point, False),)
    return DualMapGraph(
        (Vertex.active(0, degree), Vertex.contracted(1, point)),
        (Edge(0, (0, 1), edge_ramification),),
        marks,
        target,
        degree,
        flags,
    )
