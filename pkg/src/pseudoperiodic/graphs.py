"""Partition graphs, their induced periodic action, and weighted quotients.

Graphs are undirected multigraphs with loops, stored with half-edges so that
loops and their subdivision are unambiguous.  Ids are prefixed strings:

* ``b:<body>`` vertex of a body, ``m:<curve>`` midpoint of an amphidrome curve;
* ``s:<slot>`` half-edge at the body owning the slot, ``t:<slot>`` the
  matching half-edge at a midpoint;
* ``c:<curve>`` edge of a curve, ``h:<slot>`` one half of a subdivided curve.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Mapping

from .canonical import canonical_bytes
from .model import PseudoPeriodicData


@dataclass(frozen=True)
class PartitionGraph:
    vertices: tuple[str, ...]
    half_edges: Mapping[str, str]        # half-edge -> incident vertex
    edges: Mapping[str, tuple[str, str]]  # edge -> its two half-edges

    @property
    def mate(self) -> dict[str, str]:
        out = {}
        for a, b in self.edges.values():
            out[a], out[b] = b, a
        return out

    @property
    def edge_of(self) -> dict[str, str]:
        return {h: e for e, pair in self.edges.items() for h in pair}

    @property
    def midpoints(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v.startswith("m:"))

    def endpoints(self, edge: str) -> tuple[str, str]:
        a, b = self.edges[edge]
        return self.half_edges[a], self.half_edges[b]

    def halves_at(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for h in sorted(self.half_edges):
            out[self.half_edges[h]].append(h)
        return out

    def degree(self, v: str) -> int:
        return sum(1 for x in self.half_edges.values() if x == v)


@dataclass(frozen=True)
class GraphAction:
    vertex_perm: Mapping[str, str]
    half_perm: Mapping[str, str]

    def edge_perm(self, graph: PartitionGraph) -> dict[str, str]:
        edge_of = graph.edge_of
        return {e: edge_of[self.half_perm[a]] for e, (a, _) in graph.edges.items()}

    def element_perm(self) -> dict[str, str]:
        return {**self.vertex_perm, **self.half_perm}


@dataclass(frozen=True)
class WeightedGraph:
    vertices: Mapping[str, int]                 # vertex orbit -> weight
    edges: Mapping[str, tuple[str, str, int]]   # edge orbit -> (end, end, weight)


def _orbits(perm: Mapping[str, str]) -> dict[str, list[str]]:
    seen: set[str] = set()
    out = {}
    for x in sorted(perm):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = perm[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = perm[y]
        out[min(cyc)] = sorted(cyc)
    return out


def orbit_sizes(perm: Mapping[str, str]) -> dict[str, int]:
    return {x: len(cyc) for cyc in _orbits(perm).values() for x in cyc}


# ---------------------------------------------------------------------------
# construction


def partition_graph(data: PseudoPeriodicData) -> PartitionGraph:
    vertices = tuple(sorted("b:" + b.id for b in data.bodies))
    halves = {"s:" + s: "b:" + b for s, b in data.body_of_slot.items()}
    edges = {"c:" + c.id: ("s:" + c.end1, "s:" + c.end2) for c in data.curves}
    return PartitionGraph(vertices, halves, edges)


def subdivide(graph: PartitionGraph, edges) -> PartitionGraph:
    """Split each listed ``c:`` edge at a new midpoint vertex."""
    vertices = list(graph.vertices)
    halves = dict(graph.half_edges)
    new_edges = dict(graph.edges)
    for e in sorted(edges):
        if e not in new_edges or not e.startswith("c:"):
            continue
        mid = "m:" + e[2:]
        vertices.append(mid)
        for h in new_edges.pop(e):
            twin = "t:" + h[2:]
            halves[twin] = mid
            new_edges["h:" + h[2:]] = (h, twin)
    return PartitionGraph(tuple(sorted(vertices)), halves, new_edges)


def amphidrome_edges(data: PseudoPeriodicData) -> list[str]:
    st = data.structure
    return sorted("c:" + c for c in data.curve_by_id if st.amphidrome[st.curve_orbit_of[c]])


def refined_partition_graph(data: PseudoPeriodicData) -> PartitionGraph:
    return subdivide(partition_graph(data), amphidrome_edges(data))


def induced_action(data: PseudoPeriodicData, graph: PartitionGraph | None = None) -> GraphAction:
    """The action of the map on ``graph`` (by default the refined partition graph)."""
    if graph is None:
        graph = refined_partition_graph(data)
    act = data.action
    vperm = {}
    for v in graph.vertices:
        kind, x = v[:2], v[2:]
        vperm[v] = "b:" + act.body_perm[x] if kind == "b:" else "m:" + act.curve_perm[x][0]
    hperm = {h: h[:2] + act.slot_perm[h[2:]] for h in graph.half_edges}
    return GraphAction(vperm, hperm)


def quotient_weighted_graph(graph: PartitionGraph, action: GraphAction) -> WeightedGraph:
    vorb = _orbits(action.vertex_perm)
    vkey = {x: k for k, cyc in vorb.items() for x in cyc}
    eorb = _orbits(action.edge_perm(graph))
    edges = {}
    for k, cyc in eorb.items():
        a, b = sorted(vkey[v] for v in graph.endpoints(k))
        edges[k] = (a, b, len(cyc))
    return WeightedGraph({k: len(cyc) for k, cyc in vorb.items()}, edges)


def action_order(action: GraphAction) -> int:
    import math

    return math.lcm(1, *orbit_sizes(action.element_perm()).values())


# ---------------------------------------------------------------------------
# equivariant isomorphism


def _key(label) -> str:
    return json.dumps(label, sort_keys=True, separators=(",", ":"), default=str)


def _element_labels(graph: PartitionGraph, action: GraphAction, dec: Mapping | None) -> dict[str, str]:
    dec = dec or {}
    sizes = orbit_sizes(action.element_perm())
    edge_of = graph.edge_of
    out = {}
    for v in graph.vertices:
        out[v] = _key(["v", dec.get(v), sizes[v], graph.degree(v)])
    for h in graph.half_edges:
        out[h] = _key(["h", dec.get(h), dec.get(edge_of[h]), sizes[h]])
    return out


def _joint_refinement(sides) -> list[dict[str, int]]:
    """Color refinement run on the disjoint union so colors are comparable across graphs."""
    cols = []
    for graph, action, labels in sides:
        cols.append(dict(labels))
    while True:
        sigs = []
        for (graph, action, _), col in zip(sides, cols):
            inv = {y: x for x, y in action.element_perm().items()}
            perm = action.element_perm()
            mate = graph.mate
            at = graph.halves_at()
            sig = {}
            for v in graph.vertices:
                sig[v] = (col[v], tuple(sorted(col[h] for h in at[v])), col[perm[v]], col[inv[v]])
            for h in graph.half_edges:
                sig[h] = (col[h], col[graph.half_edges[h]], col[mate[h]], col[perm[h]], col[inv[h]])
            sigs.append(sig)
        distinct = sorted({s for sig in sigs for s in sig.values()}, key=repr)
        rank = {s: i for i, s in enumerate(distinct)}
        new = [{x: rank[s] for x, s in sig.items()} for sig in sigs]
        before = len({c for col in cols for c in col.values()})
        cols = new
        if len(distinct) == before:
            return cols


def find_equivariant_isomorphism(first, second) -> dict[str, str] | None:
    """A decoration-preserving isomorphism ``phi`` with ``phi . psi1 == psi2 . phi``, or None.

    Each argument is ``(graph, action, decorations)``; decorations map
    vertices, half-edges or edges to hashable labels (edge labels apply to
    both halves).  ``phi`` maps vertices and half-edges.
    """
    (g1, a1, d1), (g2, a2, d2) = first, second
    if (len(g1.vertices), len(g1.half_edges)) != (len(g2.vertices), len(g2.half_edges)):
        return None
    l1, l2 = _element_labels(g1, a1, d1), _element_labels(g2, a2, d2)
    if Counter(l1.values()) != Counter(l2.values()):
        return None
    c1, c2 = _joint_refinement([(g1, a1, l1), (g2, a2, l2)])
    if Counter(c1.values()) != Counter(c2.values()):
        return None

    p1, p2 = a1.element_perm(), a2.element_perm()
    m1, m2 = g1.mate, g2.mate
    at2 = g2.halves_at()
    halves1 = sorted(g1.half_edges)
    total = len(c1)

    def assign(x, y, phi, inv) -> bool:
        todo = [(x, y)]
        while todo:
            x, y = todo.pop()
            if x in phi:
                if phi[x] != y:
                    return False
                continue
            if y in inv or c1[x] != c2[y]:
                return False
            phi[x], inv[y] = y, x
            todo.append((p1[x], p2[y]))
            if x in g1.half_edges:
                todo.append((g1.half_edges[x], g2.half_edges[y]))
                todo.append((m1[x], m2[y]))
        return True

    def search(phi, inv):
        if len(phi) == total:
            return phi
        pick = next((h for h in halves1 if h not in phi and g1.half_edges[h] in phi), None)
        if pick is not None:
            cands = [h for h in at2[phi[g1.half_edges[pick]]] if h not in inv and c2[h] == c1[pick]]
        else:
            pick = next(v for v in g1.vertices if v not in phi)
            cands = [v for v in g2.vertices if v not in inv and c2[v] == c1[pick]]
        for y in cands:
            phi2, inv2 = dict(phi), dict(inv)
            if assign(pick, y, phi2, inv2):
                found = search(phi2, inv2)
                if found is not None:
                    return found
        return None

    return search({}, {})


def equivariant_isomorphic(first, second) -> bool:
    return find_equivariant_isomorphism(first, second) is not None


def action_encoding(graph: PartitionGraph, action: GraphAction, dec: Mapping | None = None) -> bytes:
    """Canonical bytes of the decorated action; equal exactly for equivariantly isomorphic inputs."""
    dec = dec or {}
    edge_of = graph.edge_of
    ids = list(graph.vertices) + sorted(graph.half_edges)
    index = {x: i for i, x in enumerate(ids)}
    labels = [["v", _key(dec.get(v))] for v in graph.vertices]
    labels += [["h", _key(dec.get(h)), _key(dec.get(edge_of[h]))] for h in sorted(graph.half_edges)]
    arcs: Counter = Counter()
    perm = action.element_perm()
    mate = graph.mate
    for h, v in graph.half_edges.items():
        arcs[(index[h], index[v], 0)] += 1
        arcs[(index[h], index[mate[h]], 1)] += 1
    for x, y in perm.items():
        arcs[(index[x], index[y], 2)] += 1
    table: dict[tuple[int, int], list[int]] = {}
    for (i, j, t), k in arcs.items():
        table.setdefault((i, j), [0, 0, 0])[t] += k
    return canonical_bytes(labels, {k: tuple(v) for k, v in table.items()})


def weighted_encoding(y: WeightedGraph) -> bytes:
    vids = sorted(y.vertices)
    eids = sorted(y.edges)
    index = {x: i for i, x in enumerate(vids + eids)}
    labels = [["v", y.vertices[v]] for v in vids] + [["e", y.edges[e][2]] for e in eids]
    arcs: Counter = Counter()
    for e in eids:
        a, b, _ = y.edges[e]
        for v in (a, b):
            arcs[(index[e], index[v])] += 1
            arcs[(index[v], index[e])] += 1
    return canonical_bytes(labels, {k: (v,) for k, v in arcs.items()})


def weighted_isomorphic(a: WeightedGraph, b: WeightedGraph) -> bool:
    return weighted_encoding(a) == weighted_encoding(b)


# ---------------------------------------------------------------------------
# DOT

_PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def partition_dot(graph: PartitionGraph, action: GraphAction | None = None, name: str = "X") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    color: dict[Hashable, str] = {}
    if action is not None:
        for i, (key, cyc) in enumerate(_orbits(action.vertex_perm).items()):
            for v in cyc:
                color[v] = _PALETTE[i % len(_PALETTE)]
    for v in graph.vertices:
        attrs = [f"label={json.dumps(v)}"]
        if v in color:
            attrs.append(f"color={json.dumps(color[v])}")
        if v.startswith("m:"):
            attrs.append("shape=point")
        lines.append(f"  {json.dumps(v)} [{', '.join(attrs)}];")
    for e in sorted(graph.edges):
        a, b = graph.endpoints(e)
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)} [label={json.dumps(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def weighted_dot(y: WeightedGraph, name: str = "Y") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for v, w in sorted(y.vertices.items()):
        lines.append(f"  {json.dumps(v)} [label={json.dumps(f'{v} ({w})')}];")
    for e, (a, b, w) in sorted(y.edges.items()):
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)} [label=\"{w}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
