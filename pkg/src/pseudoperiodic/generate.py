"""Realizing orbit-level designs as full permutation data, random inputs, relabeling.

A design lists body orbits (orbit size, return order, quotient genus, cone
valencies, boundary valencies) and curve orbits joining boundary slot orbits.
:func:`realize` lays out concrete bodies, slots and curves: slot ``k`` of a
boundary slot orbit lives on body ``k mod m_B`` and the map shifts ``k`` by
one, so the slot orbit is a single cycle of length ``m_B * n_B / lambda``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .model import (Body, BodyOrbitData, Curve, CurveOrbitData, MapAction, PseudoPeriodicData,
                    Valency, validate)


@dataclass
class OrbitDesign:
    name: str
    size: int
    order: int
    quotient_genus: int
    cones: list[Valency] = field(default_factory=list)
    boundaries: list[Valency] = field(default_factory=list)

    def slots_per_body(self, j: int) -> int:
        return self.order // self.boundaries[j].lam

    def slot_return_time(self, j: int) -> int:
        return self.size * self.slots_per_body(j)

    @property
    def body_euler(self) -> Fraction:
        return self.order * (2 - 2 * self.quotient_genus - len(self.boundaries)
                             - sum((1 - Fraction(1, v.lam) for v in self.cones), Fraction(0)))

    @property
    def body_genus(self) -> Fraction:
        r = sum(self.slots_per_body(j) for j in range(len(self.boundaries)))
        return (2 - self.body_euler - r) / Fraction(2)


@dataclass
class CurveDesign:
    side1: tuple[int, int]             # (orbit index, boundary index)
    side2: tuple[int, int] | None      # None for an amphidrome orbit
    screw: Fraction
    offset: int = 0


def _slot(o: OrbitDesign, j: int, k: int) -> str:
    return f"{o.name}.{j}.{k}"


def reverses_from_slots(curves, slot_perm, curve_images) -> dict[str, tuple[str, bool]]:
    by_id = {c.id: c for c in curves}
    return {c: (t, slot_perm[by_id[c].end1] != by_id[t].end1) for c, t in curve_images.items()}


def realize(orbits: list[OrbitDesign], curves: list[CurveDesign], name: str = "") -> PseudoPeriodicData:
    bodies = []
    body_perm = {}
    slot_perm = {}
    body_orbits = []
    total_euler = 0
    for o in orbits:
        g = o.body_genus
        if g.denominator != 1 or g < 0 or o.body_euler.denominator != 1:
            raise ValueError(f"orbit {o.name}: no connected cover with this data (genus {g})")
        slots_on: dict[int, list[str]] = {i: [] for i in range(o.size)}
        for j in range(len(o.boundaries)):
            m_s = o.slot_return_time(j)
            for k in range(m_s):
                slots_on[k % o.size].append(_slot(o, j, k))
                slot_perm[_slot(o, j, k)] = _slot(o, j, (k + 1) % m_s)
        for i in range(o.size):
            bodies.append(Body(f"{o.name}{i}", int(g), tuple(slots_on[i])))
            body_perm[f"{o.name}{i}"] = f"{o.name}{(i + 1) % o.size}"
            total_euler += int(o.body_euler)
        body_orbits.append(BodyOrbitData(
            f"{o.name}0", o.order, o.quotient_genus, tuple(o.cones),
            {_slot(o, j, 0): v for j, v in enumerate(o.boundaries)}))
    curve_list = []
    images = {}
    curve_orbits = []
    for ci, cd in enumerate(curves):
        o1, j1 = orbits[cd.side1[0]], cd.side1[1]
        alpha = o1.slot_return_time(j1)
        if cd.side2 is None:
            if alpha % 2:
                raise ValueError("an amphidrome orbit needs a slot orbit of even length")
            half = alpha // 2
            for k in range(half):
                curve_list.append(Curve(f"C{ci}.{k}", _slot(o1, j1, k), _slot(o1, j1, k + half)))
                images[f"C{ci}.{k}"] = f"C{ci}.{(k + 1) % half}"
        else:
            o2, j2 = orbits[cd.side2[0]], cd.side2[1]
            if o2.slot_return_time(j2) != alpha:
                raise ValueError("the two sides of a curve orbit need equal slot return times")
            for k in range(alpha):
                curve_list.append(Curve(f"C{ci}.{k}", _slot(o1, j1, k), _slot(o2, j2, (k + cd.offset) % alpha)))
                images[f"C{ci}.{k}"] = f"C{ci}.{(k + 1) % alpha}"
        curve_orbits.append(CurveOrbitData(f"C{ci}.0", Fraction(cd.screw)))
    genus = 1 - total_euler // 2
    action = MapAction(body_perm, slot_perm, reverses_from_slots(curve_list, slot_perm, images))
    return PseudoPeriodicData(genus, tuple(bodies), tuple(curve_list), action,
                              tuple(body_orbits), tuple(curve_orbits), name=name)


# ---------------------------------------------------------------------------
# random inputs


def _random_valency(rng: random.Random, lam: int) -> Valency:
    if lam == 1:
        return Valency(1, 0)
    return Valency(lam, rng.choice([s for s in range(1, lam) if math.gcd(s, lam) == 1]))


def _random_orbit(rng: random.Random, name: str, need_boundary: bool) -> OrbitDesign | None:
    order = rng.choice([1, 1, 2, 2, 3, 4, 5, 6])
    divisors = [d for d in range(1, order + 1) if order % d == 0]
    size = rng.choice([1, 1, 1, 2, 3])
    h = rng.choice([0, 0, 1])
    rbar = rng.randint(1 if need_boundary else 0, 3)
    ncones = rng.randint(0, 4) if order > 1 else 0
    cone_lams = [rng.choice(divisors[1:]) for _ in range(ncones)]
    bnd_lams = [rng.choice(divisors) for _ in range(rbar)]
    if h == 0 and math.lcm(1, *cone_lams, *bnd_lams) != order:
        return None
    for _ in range(30):
        cones = [_random_valency(rng, lam) for lam in cone_lams]
        bnds = [_random_valency(rng, lam) for lam in bnd_lams]
        diff = (sum((Fraction(v.sigma, v.lam) for v in cones), Fraction(0))
                - sum((Fraction(v.sigma, v.lam) for v in bnds), Fraction(0)))
        if diff.denominator == 1:
            break
    else:
        return None
    o = OrbitDesign(name, size, order, h, sorted(cones), bnds)
    if o.body_euler >= 0:
        return None
    g = o.body_genus
    if g.denominator != 1 or g < 0:
        raise AssertionError(f"realizable rotation data gave non-integral genus: {o}")
    return o


def _random_screw_nonamph(rng, v1: Valency, v2: Valency) -> Fraction:
    base = v1.rotation + v2.rotation
    frac = base - math.floor(base)
    return -(frac + rng.randint(0 if frac else 1, 2))


def _random_screw_amph(rng, v: Valency) -> Fraction:
    head = v.rotation
    return -2 * (head + rng.randint(1 if v.lam == 1 else 0, 2))


def random_data(seed: int, max_orbits: int = 3) -> PseudoPeriodicData:
    """A random validated input; equal seeds give equal data."""
    rng = random.Random(seed)
    while True:
        k = rng.randint(1, max_orbits)
        orbits = []
        for i in range(k):
            o = _random_orbit(rng, "ABCDEFGH"[i], need_boundary=k > 1)
            if o is None:
                break
            orbits.append(o)
        if len(orbits) != k:
            continue
        pending = [(i, j) for i, o in enumerate(orbits) for j in range(len(o.boundaries))]
        rng.shuffle(pending)
        curves = []
        ok = True
        while pending:
            i, j = pending.pop()
            m_s = orbits[i].slot_return_time(j)
            partners = [p for p in pending if orbits[p[0]].slot_return_time(p[1]) == m_s]
            amph_ok = m_s % 2 == 0
            if partners and (not amph_ok or rng.random() < 0.6):
                p = rng.choice(partners)
                pending.remove(p)
                screw = _random_screw_nonamph(rng, orbits[i].boundaries[j], orbits[p[0]].boundaries[p[1]])
                curves.append(CurveDesign((i, j), p, screw, rng.randrange(m_s)))
            elif amph_ok:
                curves.append(CurveDesign((i, j), None, _random_screw_amph(rng, orbits[i].boundaries[j])))
            else:
                ok = False
                break
        if not ok:
            continue
        if not curves and (k > 1 or orbits[0].size > 1):
            continue
        data = realize(orbits, curves, name=f"random-{seed}")
        if data.genus < 2 and data.curves:
            continue
        if validate(data).ok:
            return data


# ---------------------------------------------------------------------------
# relabeling


def _shuffled(rng, items):
    items = list(items)
    rng.shuffle(items)
    return items


def shuffle_order(data: PseudoPeriodicData, rng: random.Random) -> PseudoPeriodicData:
    """The same data with every input array reordered; ids untouched."""
    return replace(
        data,
        bodies=tuple(replace(b, boundary_slots=tuple(_shuffled(rng, b.boundary_slots)))
                     for b in _shuffled(rng, data.bodies)),
        curves=tuple(_shuffled(rng, data.curves)),
        body_orbits=tuple(replace(bo, cone_points=tuple(_shuffled(rng, bo.cone_points)),
                                  boundary_valencies=dict(_shuffled(rng, bo.boundary_valencies.items())))
                          for bo in _shuffled(rng, data.body_orbits)),
        curve_orbits=tuple(_shuffled(rng, data.curve_orbits)),
    )


def relabel(data: PseudoPeriodicData, rng: random.Random) -> PseudoPeriodicData:
    """A conjugate copy: fresh ids, reordered arrays, other orbit representatives, flipped curve ends."""
    st = data.structure
    act = data.action
    ids = [("b", b.id) for b in data.bodies] + [("s", s) for s in data.body_of_slot] + [("c", c.id) for c in data.curves]
    fresh = _shuffled(rng, range(len(ids)))
    new = {key: f"{key[0]}{n}" for key, n in zip(ids, fresh)}
    nb = {b: new[("b", b)] for b in data.body_by_id}
    ns = {s: new[("s", s)] for s in data.body_of_slot}
    nc = {c: new[("c", c)] for c in data.curve_by_id}
    bodies = [Body(nb[b.id], b.genus, tuple(ns[s] for s in b.boundary_slots)) for b in data.bodies]
    curves = []
    for c in data.curves:
        e1, e2 = ns[c.end1], ns[c.end2]
        if rng.random() < 0.5:
            e1, e2 = e2, e1
        curves.append(Curve(nc[c.id], e1, e2))
    slot_perm = {ns[s]: ns[t] for s, t in act.slot_perm.items()}
    images = {nc[c]: nc[t] for c, (t, _) in act.curve_perm.items()}
    action = MapAction({nb[b]: nb[t] for b, t in act.body_perm.items()}, slot_perm,
                       reverses_from_slots(curves, slot_perm, images))
    body_orbits = []
    for bo in data.body_orbits:
        members = st.body_orbits[st.body_orbit_of[bo.representative]]
        bv = {}
        for rep, v in bo.boundary_valencies.items():
            bv[ns[rng.choice(st.slot_orbits[st.slot_orbit_of[rep]])]] = v
        body_orbits.append(BodyOrbitData(nb[rng.choice(members)], bo.return_order, bo.quotient_genus,
                                         bo.cone_points, bv))
    curve_orbits = [CurveOrbitData(nc[rng.choice(st.curve_orbits[st.curve_orbit_of[co.representative]])], co.screw)
                    for co in data.curve_orbits]
    out = PseudoPeriodicData(data.genus, tuple(bodies), tuple(curves), action,
                             tuple(body_orbits), tuple(curve_orbits), name=data.name)
    return shuffle_order(out, rng)
