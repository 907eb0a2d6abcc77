"""Numerical chorizo spaces and the generalized quotient.

A numerical chorizo is recorded by its dual graph: components carry a
genus and a multiplicity, nodes are unordered pairs of components (a pair
``(a, a)`` is a self-node).  The generalized quotient is glued from one
fragment per body orbit (the quotient surface with a chain of spheres at
every cone point) and one fragment per curve orbit (a chain of spheres, or
for an amphidrome orbit a chain ending in a fork of two spheres).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import chains
from .canonical import canonical_bytes
from .chains import DEFAULT_BOUNDS, SearchBounds
from .model import PseudoPeriodicData

STUB = "@"  # node endpoints "@<slot-orbit>" are resolved to the body component offering that stub


class MultiplicityMismatch(ValueError):
    def __init__(self, component: str, message: str):
        super().__init__(f"{component}: {message}")
        self.component = component


@dataclass(frozen=True)
class Component:
    id: str
    genus: int
    multiplicity: int
    part_label: str = ""

    def __post_init__(self):
        if self.multiplicity < 1:
            raise MultiplicityMismatch(self.id, f"multiplicity {self.multiplicity} < 1")


def _node(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class NumericalChorizo:
    components: tuple[Component, ...]
    nodes: tuple[tuple[str, str], ...]
    # body fragments only: slot-orbit key -> component offering it
    stubs: dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, key=lambda c: c.id)))
        object.__setattr__(self, "nodes", tuple(sorted(_node(a, b) for a, b in self.nodes)))

    @property
    def by_id(self) -> dict[str, Component]:
        return {c.id: c for c in self.components}

    def degree(self, cid: str) -> int:
        """Node points on a component; a self-node contributes two."""
        return sum((a == cid) + (b == cid) for a, b in self.nodes)

    def is_connected(self) -> bool:
        if not self.components:
            return False
        adj = {c.id: set() for c in self.components}
        for a, b in self.nodes:
            adj[a].add(b)
            adj[b].add(a)
        start = self.components[0].id
        seen, stack = {start}, [start]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(adj)

    def multiplicity_multiset(self) -> list[int]:
        return sorted((c.multiplicity for c in self.components), reverse=True)


# ---------------------------------------------------------------------------
# fragments


def build_body_chorizo(data: PseudoPeriodicData, body_orbit: str) -> NumericalChorizo:
    """The quotient of one body orbit with a sphere chain replacing each cone point."""
    st = data.structure
    key = st.body_orbit_of[body_orbit]
    bo = st.body_orbit_data[key]
    total = st.body_multiplicity(key)
    label = "b:" + key
    body_id = label
    comps = [Component(body_id, bo.quotient_genus, total, label)]
    nodes = []
    for k, v in enumerate(sorted(bo.cone_points)):
        if total % v.lam:
            raise MultiplicityMismatch(body_id, f"cone order {v.lam} does not divide {total}")
        chain = chains.cone_chain(v, multiplier=total // v.lam)
        prev = body_id
        for i, mult in enumerate(chain.multiplicities[1:], start=1):
            cid = f"{body_id}/cone{k}/{i}"
            comps.append(Component(cid, 0, mult, label))
            nodes.append((prev, cid))
            prev = cid
    stubs = {s: body_id for s in st.slot_orbits_of_body_orbit[key]}
    return NumericalChorizo(tuple(comps), tuple(nodes), stubs)


def curve_chain(data: PseudoPeriodicData, curve_orbit: str,
                bounds: SearchBounds = DEFAULT_BOUNDS) -> chains.ChainSeq:
    """The chain of a curve orbit, oriented from its first side (see ``Structure.curve_sides``)."""
    st = data.structure
    key = st.curve_orbit_of[curve_orbit]
    s_abs = abs(st.curve_orbit_data[key].screw)
    alpha = st.alpha[key]
    s1, s2 = st.curve_sides(key)
    if st.amphidrome[key]:
        return chains.amph_chain(st.slot_valency[s1], s_abs, multiplier=alpha)
    return chains.nonamph_chain(st.slot_valency[s1], st.slot_valency[s2], s_abs,
                                multiplier=alpha, bounds=bounds)


def build_nonamph_part(data: PseudoPeriodicData, curve_orbit: str,
                       bounds: SearchBounds = DEFAULT_BOUNDS) -> NumericalChorizo:
    """The ``l - 1`` interior spheres of a non-amphidrome chain, with nodes to the two body stubs."""
    st = data.structure
    key = st.curve_orbit_of[curve_orbit]
    if st.amphidrome[key]:
        raise ValueError(f"curve orbit {key} is amphidrome")
    chain = curve_chain(data, key, bounds)
    s1, s2 = st.curve_sides(key)
    label = "c:" + key
    mults = chain.multiplicities
    comps = [Component(f"c:{key}/{i}", 0, mults[i], label) for i in range(1, chain.length)]
    ids = [STUB + s1] + [c.id for c in comps] + [STUB + s2]
    nodes = list(zip(ids, ids[1:]))
    return NumericalChorizo(tuple(comps), tuple(nodes))


def build_amph_part(data: PseudoPeriodicData, curve_orbit: str) -> NumericalChorizo:
    """A path of ``l`` spheres off the body stub, ending in a fork of two spheres."""
    st = data.structure
    key = st.curve_orbit_of[curve_orbit]
    if not st.amphidrome[key]:
        raise ValueError(f"curve orbit {key} is not amphidrome")
    chain = curve_chain(data, key)
    s1, _ = st.curve_sides(key)
    half = st.alpha[key] // 2
    label = "m:" + key
    mults = chain.multiplicities
    comps = [Component(f"c:{key}/{i}", 0, mults[i], label) for i in range(1, chain.length + 1)]
    comps += [Component(f"c:{key}/fork{j}", 0, half, label) for j in (1, 2)]
    path = [STUB + s1] + [c.id for c in comps[:chain.length]]
    nodes = list(zip(path, path[1:]))
    nodes += [(path[-1], f"c:{key}/fork{j}") for j in (1, 2)]
    return NumericalChorizo(tuple(comps), tuple(nodes))


def build_generalized_quotient(data: PseudoPeriodicData,
                               bounds: SearchBounds = DEFAULT_BOUNDS) -> NumericalChorizo:
    st = data.structure
    fragments = [build_body_chorizo(data, key) for key in sorted(st.body_orbits)]
    stubs: dict[str, str] = {}
    for frag in fragments:
        stubs.update(frag.stubs)
    for key in sorted(st.curve_orbits):
        if st.amphidrome[key]:
            fragments.append(build_amph_part(data, key))
        else:
            fragments.append(build_nonamph_part(data, key, bounds))
    comps = [c for f in fragments for c in f.components]
    by_id = {c.id: c for c in comps}
    nodes = []
    for frag in fragments:
        for a, b in frag.nodes:
            nodes.append((_resolve(a, stubs, by_id), _resolve(b, stubs, by_id)))
    return NumericalChorizo(tuple(comps), tuple(nodes))


def _resolve(end: str, stubs: dict[str, str], by_id: dict[str, Component]) -> str:
    if end.startswith(STUB):
        return stubs[end[len(STUB):]]
    return end


# ---------------------------------------------------------------------------
# fiber checks


def self_intersections(ch: NumericalChorizo) -> list[int]:
    """``-d_i / m_i`` per component, ``d_i`` the multiplicity-weighted count of node points on it.

    A self-node contributes two points, so for a component with self-nodes
    this is the self-intersection of its normalization in the plumbing, not
    of the nodal curve itself (the two differ by twice the self-node count).
    """
    mult = {c.id: c.multiplicity for c in ch.components}
    d = Counter()
    for a, b in ch.nodes:
        d[a] += mult[b]
        d[b] += mult[a]
    out = []
    for c in ch.components:
        if d[c.id] % c.multiplicity:
            raise MultiplicityMismatch(c.id, f"weighted degree {d[c.id]} is not divisible by "
                                             f"multiplicity {c.multiplicity}")
        out.append(-d[c.id] // c.multiplicity)
    return out


def intersection_matrix(ch: NumericalChorizo) -> list[list[int]]:
    """Off-diagonal node counts; diagonal the self-intersection of each (possibly nodal) component."""
    index = {c.id: i for i, c in enumerate(ch.components)}
    e = self_intersections(ch)
    q = [[0] * len(index) for _ in index]
    for i, v in enumerate(e):
        q[i][i] = v
    for a, b in ch.nodes:
        i, j = index[a], index[b]
        if i == j:
            q[i][i] += 2
        else:
            q[i][j] += 1
            q[j][i] += 1
    return q


def _negative_definite(q: list[list[int]]) -> bool:
    # Gaussian elimination without pivoting: every pivot of -q positive
    a = [[Fraction(-x) for x in row] for row in q]
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def intersection_form_semidefinite(ch: NumericalChorizo) -> tuple[bool, tuple[int, ...]]:
    """Whether the form is negative semidefinite with radical spanned by the multiplicity vector.

    Checked as ``Q m = 0`` plus negative definiteness after deleting one
    component, which together force rank ``n - 1`` and radical ``<m>``.
    """
    m = tuple(c.multiplicity for c in ch.components)
    try:
        q = intersection_matrix(ch)
    except MultiplicityMismatch:
        return False, m
    if any(sum(row[j] * m[j] for j in range(len(m))) for row in q):
        return False, m
    minor = [row[1:] for row in q[1:]]
    return _negative_definite(minor), m


def euler_balance(ch: NumericalChorizo, genus: int) -> bool:
    """``sum m_i * (2 - 2 g_i - node points on C_i) == 2 - 2 g``."""
    total = sum(c.multiplicity * (2 - 2 * c.genus - ch.degree(c.id)) for c in ch.components)
    return total == 2 - 2 * genus


def checks(ch: NumericalChorizo, genus: int) -> dict:
    try:
        e = self_intersections(ch)
    except MultiplicityMismatch as exc:
        e = str(exc)
    return {
        "euler_balance": euler_balance(ch, genus),
        "semidefinite": intersection_form_semidefinite(ch)[0],
        "self_intersections": e,
    }


# ---------------------------------------------------------------------------
# comparison


def _nx_graph(ch: NumericalChorizo):
    import networkx as nx

    g = nx.MultiGraph()
    for c in ch.components:
        g.add_node(c.id, genus=c.genus, multiplicity=c.multiplicity)
    g.add_edges_from(ch.nodes)
    return g


def chorizo_isomorphic(a: NumericalChorizo, b: NumericalChorizo) -> bool:
    """Isomorphism of dual graphs preserving genus, multiplicity and node counts; labels ignored."""
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_node_match

    if len(a.components) != len(b.components) or len(a.nodes) != len(b.nodes):
        return False
    match = categorical_node_match(["genus", "multiplicity"], [None, None])
    return nx.is_isomorphic(_nx_graph(a), _nx_graph(b), node_match=match)


def _digraph(ch: NumericalChorizo):
    index = {c.id: i for i, c in enumerate(ch.components)}
    labels = [[c.genus, c.multiplicity] for c in ch.components]
    arcs: Counter = Counter()
    for a, b in ch.nodes:
        i, j = index[a], index[b]
        arcs[(i, j)] += 1
        if i != j:
            arcs[(j, i)] += 1
    return labels, {k: (v,) for k, v in arcs.items()}


def canonical_encoding(ch: NumericalChorizo) -> bytes:
    labels, arcs = _digraph(ch)
    return canonical_bytes(labels, arcs)


# ---------------------------------------------------------------------------
# output


def to_json(ch: NumericalChorizo, genus: int | None = None) -> dict:
    doc = {
        "components": [{"id": c.id, "genus": c.genus, "multiplicity": c.multiplicity,
                        "label": c.part_label} for c in ch.components],
        "nodes": [list(n) for n in ch.nodes],
    }
    if genus is not None:
        doc["checks"] = checks(ch, genus)
    return doc


def dumps(ch: NumericalChorizo, genus: int | None = None) -> str:
    return json.dumps(to_json(ch, genus), indent=2, sort_keys=True)


def to_dot(ch: NumericalChorizo, name: str = "chorizo") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for c in ch.components:
        lines.append(f"  {json.dumps(c.id)} [label=\"g={c.genus}, m={c.multiplicity}\"];")
    for a, b in ch.nodes:
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
