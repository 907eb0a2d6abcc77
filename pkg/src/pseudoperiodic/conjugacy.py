"""The invariant triple (chorizo, weighted quotient graph, action class) and conjugacy verdicts."""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from . import chorizo as chz
from . import graphs as gr
from .canonical import canonical_bytes
from .chains import DEFAULT_BOUNDS, SearchBounds
from .model import InputError, PseudoPeriodicData

DISTINCT_S = "DISTINCT_S"
DISTINCT_Y = "DISTINCT_Y"
DISTINCT_ACTION = "DISTINCT_ACTION"
INVARIANTS_EQUAL = "INVARIANTS_EQUAL"

EQUAL_NOTE = ("conjugate by the triple (S_f, Y_f, c_f), where c_f is realized as the class of the "
              "refined partition graph with its periodic action, decorated by the per-orbit input data")


class GenusMismatch(InputError):
    pass


class LabelInconsistency(ValueError):
    """A chorizo component whose part label names no vertex or edge of the weighted graph."""


def decorations(data: PseudoPeriodicData) -> dict[str, list]:
    """Per-element decorations of the refined partition graph: exactly the per-orbit input data."""
    st = data.structure
    dec: dict[str, list] = {}
    for b in data.bodies:
        bo = st.body_orbit_data[st.body_orbit_of[b.id]]
        dec["b:" + b.id] = ["body", b.genus, bo.quotient_genus, bo.return_order,
                            [[v.lam, v.sigma] for v in sorted(bo.cone_points)]]
    for s in data.body_of_slot:
        v = st.slot_valency[st.slot_orbit_of[s]]
        dec["s:" + s] = ["slot", v.lam, v.sigma]
    for c in data.curves:
        key = st.curve_orbit_of[c.id]
        screw = str(st.curve_orbit_data[key].screw)
        if st.amphidrome[key]:
            dec["m:" + c.id] = ["midpoint"]
            for s in (c.end1, c.end2):
                dec["t:" + s] = ["midpoint-slot"]
                dec["h:" + s] = ["curve", screw, True]
        else:
            dec["c:" + c.id] = ["curve", screw, False]
    return dec


def _digest(b: bytes) -> str:
    return hashlib.sha256(b).hexdigest()


@dataclass(frozen=True, eq=False)
class InvariantTriple:
    genus: int
    chorizo: chz.NumericalChorizo
    weighted_graph: gr.WeightedGraph
    graph: gr.PartitionGraph
    action: gr.GraphAction
    decorations: dict

    def __post_init__(self):
        y = self.weighted_graph
        for c in self.chorizo.components:
            lab = c.part_label
            ok = (lab in y.vertices) if lab[:2] in ("b:", "m:") else (lab[:2] == "c:" and lab in y.edges)
            if not ok:
                raise LabelInconsistency(f"component {c.id} has label {lab!r} outside the weighted graph")

    @property
    def action_class(self):
        return (self.graph, self.action, self.decorations)

    @cached_property
    def chorizo_encoding(self) -> bytes:
        return chz.canonical_encoding(self.chorizo)

    @cached_property
    def weighted_encoding(self) -> bytes:
        return gr.weighted_encoding(self.weighted_graph)

    @cached_property
    def action_encoding(self) -> bytes:
        return gr.action_encoding(self.graph, self.action, self.decorations)

    @cached_property
    def eta_encoding(self) -> bytes:
        """The chorizo, the weighted graph and the collapsing map between them, as one graph."""
        y = self.weighted_graph
        comps = self.chorizo.components
        ids = [c.id for c in comps] + sorted(y.vertices) + sorted(y.edges)
        index = {x: i for i, x in enumerate(ids)}
        labels = ([["S", c.genus, c.multiplicity] for c in comps]
                  + [["V", y.vertices[v]] for v in sorted(y.vertices)]
                  + [["E", y.edges[e][2]] for e in sorted(y.edges)])
        arcs: Counter = Counter()
        for a, b in self.chorizo.nodes:
            arcs[(index[a], index[b], 0)] += 1
            if a != b:
                arcs[(index[b], index[a], 0)] += 1
        for e, (a, b, _) in y.edges.items():
            for v in (a, b):
                arcs[(index[e], index[v], 1)] += 1
        for c in comps:
            arcs[(index[c.id], index[c.part_label], 2)] += 1
        table: dict = {}
        for (i, j, t), k in arcs.items():
            table.setdefault((i, j), [0, 0, 0])[t] += k
        return canonical_bytes(labels, {k: tuple(v) for k, v in table.items()})

    def to_json(self) -> dict:
        def part(b: bytes) -> dict:
            return {"sha256": _digest(b), "canonical": json.loads(b)}
        return {
            "genus": self.genus,
            "S_f": part(self.chorizo_encoding),
            "Y_f": part(self.weighted_encoding),
            "c_f": part(self.action_encoding),
            "eta_f": part(self.eta_encoding),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def invariants(data: PseudoPeriodicData, bounds: SearchBounds = DEFAULT_BOUNDS) -> InvariantTriple:
    ch = chz.build_generalized_quotient(data, bounds)
    graph = gr.refined_partition_graph(data)
    action = gr.induced_action(data, graph)
    y = gr.quotient_weighted_graph(graph, action)
    return InvariantTriple(data.genus, ch, y, graph, action, decorations(data))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    verdict: str
    witness: dict | None = None

    @property
    def conjugate(self) -> bool:
        return self.verdict == INVARIANTS_EQUAL

    def to_json(self) -> dict:
        doc = {"verdict": self.verdict, "witness": self.witness}
        if self.conjugate:
            doc["note"] = EQUAL_NOTE
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _chorizo_summary(t: InvariantTriple) -> dict:
    ch = t.chorizo
    return {"components": len(ch.components), "nodes": len(ch.nodes),
            "multiplicities": ch.multiplicity_multiset(),
            "genera": sorted((c.genus for c in ch.components), reverse=True)}


def _weighted_summary(t: InvariantTriple) -> dict:
    y = t.weighted_graph
    return {"vertex_weights": sorted(y.vertices.values()),
            "edge_weights": sorted(w for _, _, w in y.edges.values()),
            "loops": sum(1 for a, b, _ in y.edges.values() if a == b)}


def _eta_summary(t: InvariantTriple) -> list:
    y = t.weighted_graph
    pre: dict[str, list[int]] = {}
    for c in t.chorizo.components:
        pre.setdefault(c.part_label, []).append(c.multiplicity)
    out = []
    for v, w in y.vertices.items():
        out.append(["vertex", w, sorted(pre.get(v, []))])
    for e, (_, _, w) in y.edges.items():
        out.append(["edge", w, sorted(pre.get(e, []))])
    return sorted(out)


def _action_summary(t: InvariantTriple) -> dict:
    vs = gr.orbit_sizes(t.action.vertex_perm)
    hs = gr.orbit_sizes(t.action.half_perm)
    return {"order": gr.action_order(t.action),
            "vertex_orbit_sizes": sorted(Counter(vs.values()).items()),
            "half_edge_orbit_sizes": sorted(Counter(hs.values()).items()),
            "sha256": _digest(t.action_encoding)}


def compare_triples(t1: InvariantTriple, t2: InvariantTriple) -> Verdict:
    if t1.genus != t2.genus:
        raise GenusMismatch(f"genus {t1.genus} vs {t2.genus}")
    if t1.chorizo_encoding != t2.chorizo_encoding:
        return Verdict(DISTINCT_S, {"invariant": "S_f", "first": _chorizo_summary(t1),
                                    "second": _chorizo_summary(t2)})
    if t1.weighted_encoding != t2.weighted_encoding:
        return Verdict(DISTINCT_Y, {"invariant": "Y_f", "first": _weighted_summary(t1),
                                    "second": _weighted_summary(t2)})
    if t1.eta_encoding != t2.eta_encoding:
        return Verdict(DISTINCT_Y, {"invariant": "eta_f (collapsing map S_f -> Y_f)",
                                    "first": _eta_summary(t1), "second": _eta_summary(t2)})
    if not gr.equivariant_isomorphic(t1.action_class, t2.action_class):
        return Verdict(DISTINCT_ACTION, {"invariant": "c_f", "first": _action_summary(t1),
                                         "second": _action_summary(t2)})
    return Verdict(INVARIANTS_EQUAL)


def conjugate(d1: PseudoPeriodicData, d2: PseudoPeriodicData,
              bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    if d1.genus != d2.genus:
        raise GenusMismatch(f"genus {d1.genus} vs {d2.genus}")
    return compare_triples(invariants(d1, bounds), invariants(d2, bounds))
