"""Built-in example inputs.

The torus entries are periodic maps whose generalized quotients are the
extended Dynkin configurations of elliptic fibers.  The two ``nielsen``
entries are the genus-6 pair sharing all of Nielsen's invariants.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .generate import CurveDesign, OrbitDesign, realize
from .model import (Body, BodyOrbitData, Curve, CurveOrbitData, MapAction, PseudoPeriodicData,
                    Valency, to_json)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    data: PseudoPeriodicData
    description: str
    # optional expectations: "multiplicities" (sorted descending), "components", "verdicts"
    expected: dict = field(default_factory=dict)


V = Valency


def nielsen(k: int) -> PseudoPeriodicData:
    """Five genus-1 bodies ``b0..b4`` in a cycle, ``C_j`` joining ``b_j`` to ``b_{j+1}``, map ``b_i -> b_{i+k}``."""
    n = 5
    bodies = tuple(Body(f"b{i}", 1, (f"b{i}L", f"b{i}R")) for i in range(n))
    curves = tuple(Curve(f"C{j}", f"b{j}R", f"b{(j + 1) % n}L") for j in range(n))
    slot_perm = {}
    for i in range(n):
        for side in "LR":
            slot_perm[f"b{i}{side}"] = f"b{(i + k) % n}{side}"
    action = MapAction({f"b{i}": f"b{(i + k) % n}" for i in range(n)}, slot_perm,
                       {f"C{j}": (f"C{(j + k) % n}", False) for j in range(n)})
    orbit = BodyOrbitData("b0", 1, 1, (), {"b0L": V(1, 0), "b0R": V(1, 0)})
    return PseudoPeriodicData(6, bodies, curves, action, (orbit,), (CurveOrbitData("C0", Fraction(-1)),),
                              name=f"nielsen-f{k}")


def _periodic_torus(name: str, order: int, cones) -> PseudoPeriodicData:
    return realize([OrbitDesign("T", 1, order, 0, [V(*c) for c in cones])], [], name=name)


def _build() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry("nielsen-f1", nielsen(1),
                     "genus 6, five tori with two holes in a cycle, rotated by one step; s = -1",
                     {"multiplicities": [5], "verdicts": {"nielsen-f2": "DISTINCT_ACTION"}}),
        CatalogEntry("nielsen-f2", nielsen(2),
                     "the same surface and curves, rotated by two steps; s = -1",
                     {"multiplicities": [5], "verdicts": {"nielsen-f1": "DISTINCT_ACTION"}}),
        CatalogEntry("identity-genus2", realize([OrbitDesign("S", 1, 1, 2)], [], name="identity-genus2"),
                     "the identity of the closed genus-2 surface", {"multiplicities": [1]}),
        CatalogEntry("kodaira-I0*", _periodic_torus("kodaira-I0*", 2, [(2, 1)] * 4),
                     "torus, elliptic involution, quotient sphere with four points of order 2",
                     {"multiplicities": [2, 1, 1, 1, 1], "verdicts": {"kodaira-II*": "DISTINCT_S"}}),
        CatalogEntry("kodaira-IV*", _periodic_torus("kodaira-IV*", 3, [(3, 1)] * 3),
                     "torus, order 3, three cone points of valency (3, 1)",
                     {"multiplicities": [3, 2, 2, 2, 1, 1, 1]}),
        CatalogEntry("kodaira-III*", _periodic_torus("kodaira-III*", 4, [(2, 1), (4, 1), (4, 1)]),
                     "torus, order 4, cone points (4, 1), (4, 1), (2, 1)",
                     {"multiplicities": [4, 3, 3, 2, 2, 2, 1, 1]}),
        CatalogEntry("kodaira-II*", _periodic_torus("kodaira-II*", 6, [(2, 1), (3, 1), (6, 1)]),
                     "torus, order 6, cone points (6, 1), (3, 1), (2, 1)",
                     {"multiplicities": [6, 5, 4, 4, 3, 3, 2, 2, 1],
                      "verdicts": {"kodaira-I0*": "DISTINCT_S"}}),
        CatalogEntry("amphidrome-genus2",
                     realize([OrbitDesign("B", 1, 2, 0, [V(2, 1)] * 4, [V(1, 0)])],
                             [CurveDesign((0, 0), None, Fraction(-2))], name="amphidrome-genus2"),
                     "a torus with two holes, an involution exchanging them, and one amphidrome curve; s = -2",
                     {"multiplicities": [2, 2, 1, 1, 1, 1, 1, 1], "components": 8}),
        CatalogEntry("order5-genus2", realize([OrbitDesign("P", 1, 5, 0, [V(5, 1), V(5, 1), V(5, 3)])], [],
                                              name="order5-genus2"),
                     "genus 2, order 5, cone points (5, 1), (5, 1), (5, 3)",
                     {"multiplicities": [5, 4, 4, 3, 3, 2, 2, 2, 1, 1, 1]}),
        CatalogEntry("twist-nonseparating-genus2",
                     realize([OrbitDesign("A", 1, 1, 1, [], [V(1, 0), V(1, 0)])],
                             [CurveDesign((0, 0), (0, 1), Fraction(-1))], name="twist-nonseparating-genus2"),
                     "a single negative Dehn twist along a non-separating curve",
                     {"multiplicities": [1], "components": 1}),
        CatalogEntry("twist-separating-genus2",
                     realize([OrbitDesign("A", 1, 1, 1, [], [V(1, 0)]), OrbitDesign("B", 1, 1, 1, [], [V(1, 0)])],
                             [CurveDesign((0, 0), (1, 0), Fraction(-1))], name="twist-separating-genus2"),
                     "a single negative Dehn twist along a separating curve",
                     {"multiplicities": [1, 1], "components": 2}),
        CatalogEntry("split-involutions-genus2",
                     realize([OrbitDesign(x, 1, 2, 0, [V(2, 1)] * 3, [V(2, 1)]) for x in "AB"],
                             [CurveDesign((0, 0), (1, 0), Fraction(-1))], name="split-involutions-genus2"),
                     "an involution on each side of a separating curve, glued with screw -1",
                     {"multiplicities": [2, 2, 1, 1, 1, 1, 1, 1, 1], "components": 9}),
    ]
    return {e.name: e for e in entries}


_ENTRIES = _build()


def builtin_list() -> list[str]:
    return list(_ENTRIES)


def builtin_get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(_ENTRIES)}") from None


def export(directory) -> list[Path]:
    """Write every entry as an input JSON file ``<name>.json``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, e in _ENTRIES.items():
        p = out / f"{name}.json"
        p.write_text(json.dumps(to_json(e.data), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        paths.append(p)
    return paths
