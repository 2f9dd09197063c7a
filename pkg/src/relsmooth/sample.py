"""Seeded random graphs for property tests and the ``sample`` command."""

from __future__ import annotations

import random
from collections import defaultdict

from .graph import DualMapGraph, Edge, MarkedPoint, Vertex
from .target import PROJECTIVE_LINE, StackyTarget


def _random_partition(rng: random.Random, n: int, min_parts: int = 1) -> list[int]:
    """Random composition of ``n`` into at least ``min_parts`` positive parts (when possible)."""
    if n <= 0:
        return []
    cuts = sorted(rng.sample(range(1, n), min(n - 1, max(min_parts - 1, rng.randint(0, n - 1)))))
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_graph(rng: random.Random, points=("inf",), max_active: int = 3, max_degree: int = 4,
                 max_contracted: int = 4, p_balanced: float = 0.6, p_full: float = 0.85,
                 target: StackyTarget | None = None) -> DualMapGraph:
    """A valid graph whose contracted components sit over ``points``.

    Contracted components are balanced with probability ``p_balanced`` and
    active fibers are fully marked with probability ``p_full``, so the
    relative conditions hold for a good share of samples but not all.
    """
    points = tuple(points)
    target = target or PROJECTIVE_LINE.with_relative(points)
    while True:
        g = _attempt(rng, points, max_active, max_degree, max_contracted, p_balanced, p_full, target)
        if g is not None:
            return g


def _attempt(rng, points, max_active, max_degree, max_contracted, p_balanced, p_full, target):
    s = rng.randint(1, max_active)
    c = rng.randint(0, max_contracted) if points else 0
    degrees = [rng.randint(1, max_degree) for _ in range(s)]
    vertices = [Vertex.active(i, d) for i, d in enumerate(degrees)]
    vertices += [Vertex.contracted(s + i, rng.choice(points)) for i in range(c)]
    rng.shuffle(vertices)
    vertices = [v.__class__(i, v.role, v.degree, v.target) for i, v in enumerate(vertices)]
    used = defaultdict(int)  # (active vertex, point) -> recorded fiber degree
    edges = []
    for i in range(1, len(vertices)):
        v = vertices[i]
        options = []
        for u in vertices[:i]:
            if not u.is_active and not v.is_active and u.target != v.target:
                continue
            options.append(u)
        if not options:
            return None
        u = rng.choice(options)
        if u.is_active and v.is_active:
            edges.append(Edge(len(edges), (u.id, v.id), (rng.randint(1, u.degree), rng.randint(1, v.degree))))
        elif u.is_active or v.is_active:
            a, x = (u, v) if u.is_active else (v, u)
            room = a.degree - used[(a.id, x.target)]
            if room < 1:
                return None
            e = rng.randint(1, room)
            used[(a.id, x.target)] += e
            edges.append(Edge(len(edges), (u.id, v.id), e))
        else:
            edges.append(Edge(len(edges), (u.id, v.id), 1))

    marks: list[MarkedPoint] = []
    flags = {}

    def add(vid, tangency, point, ram=None):
        marks.append(MarkedPoint(len(marks) + 1, vid, tangency, point, ram))

    for v in vertices:
        if not v.is_active:
            continue
        for p in points:
            rest = v.degree - used[(v.id, p)]
            if rest and rng.random() > p_full:
                flags[p] = False
                rest = rng.randint(0, rest - 1)
            for part in _random_partition(rng, rest):
                if rng.random() < 0.1:
                    add(v.id, rng.randint(1, 3), p, part)
                else:
                    add(v.id, part, p)
        if rng.random() < 0.3:
            add(v.id, 0, None)

    byid = {v.id: v for v in vertices}
    adj = defaultdict(list)
    for e in edges:
        a, b = e.endpoints
        adj[a].append((e, b))
        adj[b].append((e, a))
    seen = set()
    for v in vertices:
        if v.is_active or v.id in seen:
            continue
        comp, stack = {v.id}, [v.id]
        while stack:
            x = stack.pop()
            for _, y in adj[x]:
                if y not in comp and not byid[y].is_active:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out = sum(e.index_at(y) for x in comp for e, y in adj[x] if byid[y].is_active)
        members = sorted(comp)
        total = out
        if rng.random() >= p_balanced:
            total = max(1, out + rng.choice([-2, -1, 1, 2]))
        for part in _random_partition(rng, total, min_parts=rng.randint(1, 3)):
            add(rng.choice(members), part, v.target)
        for x in members:
            while sum(1 for m in marks if m.vertex == x) + len(adj[x]) < 3:
                add(x, 0, None)
    return DualMapGraph(tuple(vertices), tuple(edges), tuple(marks), target, sum(degrees), tuple(flags.items()))


def random_star(rng: random.Random, max_e: int = 12, max_edges: int = 6, balanced: bool = True,
                point: str = "inf") -> DualMapGraph:
    """One component contracted to ``point`` joined to totally ramified active components."""
    k = rng.randint(1, max_edges)
    es = [rng.randint(1, max_e) for _ in range(k)]
    total = sum(es)
    if not balanced:
        total = max(1, total + rng.choice([d for d in range(-3, 4) if d and total + d >= 1]))
    parts = _random_partition(rng, total, min_parts=max(1, 3 - k))
    while len(parts) + k < 3:
        parts = _random_partition(rng, total, min_parts=3 - k)
        if total < 3 - k:
            parts += [0] * (3 - k - len(parts))
    vertices = [Vertex.contracted(0, point)] + [Vertex.active(j + 1, e) for j, e in enumerate(es)]
    edges = [Edge(j, (j + 1, 0), e) for j, e in enumerate(es)]
    marks = [MarkedPoint(i + 1, 0, t, point) for i, t in enumerate(parts)]
    return DualMapGraph(tuple(vertices), tuple(edges), tuple(marks), PROJECTIVE_LINE.with_relative((point,)),
                        sum(es))


def relabel(g: DualMapGraph, rng: random.Random) -> DualMapGraph:
    """Same graph with vertex, edge and mark ids permuted (and shifted) at random."""
    from dataclasses import replace

    vids = [v.id for v in g.vertices]
    new_v = dict(zip(vids, rng.sample(range(100, 100 + 3 * len(vids)), len(vids))))
    eids = [e.id for e in g.edges]
    new_e = dict(zip(eids, rng.sample(range(50, 50 + 3 * len(eids) + 1), len(eids))))
    vertices = [replace(v, id=new_v[v.id]) for v in g.vertices]
    rng.shuffle(vertices)
    edges = []
    for e in g.edges:
        u, w = e.endpoints
        r = e.ramification
        if rng.random() < 0.5:
            u, w = w, u
            if isinstance(r, tuple):
                r = (r[1], r[0])
        edges.append(replace(e, id=new_e[e.id], endpoints=(new_v[u], new_v[w]), ramification=r))
    rng.shuffle(edges)
    marks = [replace(m, vertex=new_v[m.vertex]) for m in g.marks]
    if not g.labeled_marks:
        mids = [m.id for m in marks]
        perm = dict(zip(mids, rng.sample(range(200, 200 + 2 * len(mids)), len(mids))))
        marks = [replace(m, id=perm[m.id]) for m in marks]
    rng.shuffle(marks)
    return replace(g, vertices=tuple(vertices), edges=tuple(edges), marks=tuple(marks))
