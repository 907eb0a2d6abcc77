"""Canonical forms of small vertex-colored multi-digraphs.

The graphs compared in this package (dual graphs of chorizos, weighted
quotient graphs, partition graphs with their periodic action) are all
encoded as a list of node labels plus a table of typed arc counts, and
canonicalized by color refinement with individualization on ties.
Twins (nodes whose arc rows and columns agree outside the pair) are
interchangeable, so only one of each twin class is individualized.
"""
from __future__ import annotations

import json
from typing import Hashable, Mapping, Sequence

ArcTable = Mapping[tuple[int, int], tuple[int, ...]]


def _label_key(label) -> str:
    return json.dumps(label, sort_keys=True, separators=(",", ":"))


class ColoredDigraph:
    """Nodes ``0..n-1`` with JSON-serializable labels; ``arcs[(i, j)]`` is a tuple of counts per arc type."""

    def __init__(self, labels: Sequence, arcs: ArcTable):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.arcs = {k: tuple(v) for k, v in arcs.items() if any(v)}
        self.out: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(self.n)]
        self.inn: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(self.n)]
        for (i, j), v in self.arcs.items():
            self.out[i][j] = v
            self.inn[j][i] = v

    def _zero(self):
        width = max((len(v) for v in self.arcs.values()), default=1)
        return (0,) * width

    def refine(self, colors: list[int]) -> list[int]:
        """Coarsest equitable refinement; colors are ranks, so the result is label-independent."""
        zero = self._zero()
        while True:
            sigs = []
            for v in range(self.n):
                outs = sorted((colors[u], a) for u, a in self.out[v].items() if u != v)
                ins = sorted((colors[u], a) for u, a in self.inn[v].items() if u != v)
                sigs.append((colors[v], self.out[v].get(v, zero), tuple(outs), tuple(ins)))
            ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
            new = [ranks[s] for s in sigs]
            if len(ranks) == len(set(colors)):
                return new
            colors = new

    def _twins(self, u: int, w: int) -> bool:
        zero = self._zero()
        if self.out[u].get(u, zero) != self.out[w].get(w, zero):
            return False
        if self.out[u].get(w, zero) != self.out[w].get(u, zero):
            return False
        ou = {k: v for k, v in self.out[u].items() if k not in (u, w)}
        ow = {k: v for k, v in self.out[w].items() if k not in (u, w)}
        iu = {k: v for k, v in self.inn[u].items() if k not in (u, w)}
        iw = {k: v for k, v in self.inn[w].items() if k not in (u, w)}
        return ou == ow and iu == iw

    def _certificate(self, colors: list[int]):
        order = sorted(range(self.n), key=lambda v: colors[v])
        pos = {v: i for i, v in enumerate(order)}
        arcs = tuple(sorted((pos[i], pos[j], a) for (i, j), a in self.arcs.items()))
        return arcs, order

    def canonical_order(self) -> list[int]:
        """A node ordering such that isomorphic graphs give identical relabeled graphs."""
        keys = [_label_key(lab) for lab in self.labels]
        rank = {k: r for r, k in enumerate(sorted(set(keys)))}
        colors = self.refine([rank[k] for k in keys])
        best: list = [None, None]

        def search(colors):
            if len(set(colors)) == self.n:
                cert, order = self._certificate(colors)
                if best[0] is None or cert < best[0]:
                    best[0], best[1] = cert, order
                return
            counts: dict[int, int] = {}
            for c in colors:
                counts[c] = counts.get(c, 0) + 1
            target = min(c for c, k in counts.items() if k > 1)
            cell = [v for v in range(self.n) if colors[v] == target]
            tried: list[int] = []
            for v in cell:
                if any(self._twins(v, t) for t in tried):
                    continue
                tried.append(v)
                # v keeps the cell's rank, the rest of the cell moves just above it
                split = [2 * c + (1 if (c == target and u != v) else 0) if c <= target else 2 * c + 1
                         for u, c in enumerate(colors)]
                search(self.refine(split))

        search(colors)
        return best[1]

    def canonical_bytes(self) -> bytes:
        order = self.canonical_order() if self.n else []
        pos = {v: i for i, v in enumerate(order)}
        doc = {
            "labels": [self.labels[v] for v in order],
            "arcs": sorted([pos[i], pos[j], list(a)] for (i, j), a in self.arcs.items()),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def canonical_bytes(labels: Sequence, arcs: ArcTable) -> bytes:
    return ColoredDigraph(labels, arcs).canonical_bytes()


def index_nodes(ids: Sequence[Hashable]) -> dict:
    return {x: i for i, x in enumerate(ids)}
