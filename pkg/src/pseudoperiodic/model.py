"""Combinatorial encoding of a pseudoperiodic map of negative twist.

A map is given by the pieces ("bodies") of the surface cut along a precise
curve system, the curves joining boundary slots of bodies, an explicit
permutation action of the map on bodies, slots and curves, and per-orbit
data describing the periodic part: the order of the return map on a body,
the quotient orbifold genus, cone-point valencies and boundary valencies,
plus one screw number per curve orbit.

Orientation convention for boundary valencies: the rotation of the return
map on a boundary curve is measured with respect to the orientation induced
on that curve as the boundary of its body.  With this convention a body
orbit is realizable exactly when the cone-point terms and boundary terms of
``sigma / lambda`` agree modulo 1 (check ``k`` of :func:`validate`).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping


class InputError(ValueError):
    """Malformed input: missing or unknown keys, bad types, dangling ids."""


class UnknownId(KeyError):
    pass


@dataclass(frozen=True, order=True)
class Valency:
    """Rotation data ``(lambda, sigma)`` of a cone point or boundary curve.

    The return time ``m`` of the full valency triple is not stored; it is
    derived from the permutation data.
    """

    lam: int
    sigma: int

    def __post_init__(self):
        if not isinstance(self.lam, int) or not isinstance(self.sigma, int):
            raise InputError(f"valency entries must be integers: {self!r}")
        if self.lam < 1:
            raise InputError(f"lambda must be positive: {self!r}")
        if self.lam == 1:
            if self.sigma != 0:
                raise InputError(f"lambda = 1 requires sigma = 0: {self!r}")
        elif not (0 < self.sigma < self.lam and math.gcd(self.sigma, self.lam) == 1):
            raise InputError(f"sigma must be a unit modulo lambda in (0, lambda): {self!r}")

    @property
    def delta(self) -> int:
        return modular_inverse_delta(self)

    @property
    def rotation(self) -> Fraction:
        """``delta / lambda``, the rotation fraction of the return map."""
        return Fraction(self.delta, self.lam)

    def to_json(self) -> dict:
        return {"lambda": self.lam, "sigma": self.sigma}


def modular_inverse_delta(v: Valency) -> int:
    """The ``delta`` in ``(0, lambda)`` with ``delta * sigma == 1 (mod lambda)``; 0 when lambda is 1."""
    if v.lam == 1:
        return 0
    return pow(v.sigma, -1, v.lam)


@dataclass(frozen=True)
class Body:
    id: str
    genus: int
    boundary_slots: tuple[str, ...]

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary_slots)


@dataclass(frozen=True)
class Curve:
    id: str
    end1: str
    end2: str

    @property
    def ends(self) -> tuple[str, str]:
        return (self.end1, self.end2)


@dataclass(frozen=True)
class MapAction:
    body_perm: Mapping[str, str]
    slot_perm: Mapping[str, str]
    # curve id -> (image curve id, reverses orientation)
    curve_perm: Mapping[str, tuple[str, bool]]


@dataclass(frozen=True)
class BodyOrbitData:
    representative: str
    return_order: int
    quotient_genus: int
    cone_points: tuple[Valency, ...]
    # slot-orbit representative -> valency
    boundary_valencies: Mapping[str, Valency]


@dataclass(frozen=True)
class CurveOrbitData:
    representative: str
    screw: Fraction


@dataclass(frozen=True)
class Violation:
    check: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self):
        return f"[{self.check}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def checks(self) -> list[str]:
        return [v.check for v in self.violations]

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def _cycles(perm: Mapping[str, str]) -> list[list[str]]:
    seen: set[str] = set()
    out = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class PseudoPeriodicData:
    genus: int
    bodies: tuple[Body, ...]
    curves: tuple[Curve, ...]
    action: MapAction
    body_orbits: tuple[BodyOrbitData, ...]
    curve_orbits: tuple[CurveOrbitData, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        _check_references(self)

    @cached_property
    def body_by_id(self) -> dict[str, Body]:
        return {b.id: b for b in self.bodies}

    @cached_property
    def curve_by_id(self) -> dict[str, Curve]:
        return {c.id: c for c in self.curves}

    @cached_property
    def body_of_slot(self) -> dict[str, str]:
        return {s: b.id for b in self.bodies for s in b.boundary_slots}

    @cached_property
    def curve_of_slot(self) -> dict[str, str]:
        return {s: c.id for c in self.curves for s in c.ends}

    @cached_property
    def structure(self) -> "Structure":
        problems = permutation_problems(self)
        if problems:
            raise InputError("map action is inconsistent: " + "; ".join(v.message for v in problems))
        return Structure(self)

    def to_json(self) -> dict:
        return to_json(self)


def _check_references(data: PseudoPeriodicData) -> None:
    ids = [b.id for b in data.bodies]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate body id")
    cids = [c.id for c in data.curves]
    if len(set(cids)) != len(cids):
        raise InputError("duplicate curve id")
    slots = [s for b in data.bodies for s in b.boundary_slots]
    if len(set(slots)) != len(slots):
        raise InputError("a boundary slot is listed on two bodies (or twice)")
    slotset = set(slots)
    for c in data.curves:
        for s in c.ends:
            if s not in slotset:
                raise InputError(f"curve {c.id} references unknown slot {s}")
    for b in data.bodies:
        if b.genus < 0:
            raise InputError(f"body {b.id} has negative genus")


# ---------------------------------------------------------------------------
# derived orbit structure


class Structure:
    """Orbits of the action and the per-orbit lookups used by every later stage.

    Orbit keys are the smallest id in the orbit, so they do not depend on
    which representative the input happened to name.
    """

    def __init__(self, data: PseudoPeriodicData):
        self.data = data
        act = data.action
        self.body_cycles = _cycles(act.body_perm)
        self.slot_cycles = _cycles(act.slot_perm)
        curve_images = {c: t for c, (t, _) in act.curve_perm.items()}
        self.curve_cycles = _cycles(curve_images)

        self.body_orbit_of = {b: min(cyc) for cyc in self.body_cycles for b in cyc}
        self.slot_orbit_of = {s: min(cyc) for cyc in self.slot_cycles for s in cyc}
        self.curve_orbit_of = {c: min(cyc) for cyc in self.curve_cycles for c in cyc}

        self.body_orbits = {min(cyc): sorted(cyc) for cyc in self.body_cycles}
        self.slot_orbits = {min(cyc): sorted(cyc) for cyc in self.slot_cycles}
        self.curve_orbits = {min(cyc): sorted(cyc) for cyc in self.curve_cycles}

        self.slot_orbits_of_body_orbit: dict[str, list[str]] = {k: [] for k in self.body_orbits}
        for key in sorted(self.slot_orbits):
            body = data.body_of_slot[key]
            self.slot_orbits_of_body_orbit[self.body_orbit_of[body]].append(key)

        self.alpha: dict[str, int] = {}
        self.amphidrome: dict[str, bool] = {}
        for cyc in self.curve_cycles:
            key = min(cyc)
            reversed_ = False
            c = key
            for _ in cyc:
                c, rev = act.curve_perm[c]
                reversed_ ^= rev
            self.amphidrome[key] = reversed_
            self.alpha[key] = len(cyc) * (2 if reversed_ else 1)

    # -- lookups ------------------------------------------------------------

    def body_orbit_size(self, key: str) -> int:
        return len(self.body_orbits[key])

    def slot_return_time(self, key: str) -> int:
        return len(self.slot_orbits[key])

    def curve_sides(self, key: str) -> tuple[str, str]:
        """Slot orbits on the two sides of a curve orbit, side 1 holding the smallest end slot.

        For an amphidrome orbit both entries are the same slot orbit.
        """
        curves = self.data.curve_by_id
        ends = [s for c in self.curve_orbits[key] for s in curves[c].ends]
        first = min(ends)
        c = curves[self.data.curve_of_slot[first]]
        other = c.end2 if c.end1 == first else c.end1
        return self.slot_orbit_of[first], self.slot_orbit_of[other]

    @cached_property
    def body_orbit_data(self) -> dict[str, BodyOrbitData]:
        out = {}
        for bo in self.data.body_orbits:
            key = self.body_orbit_of.get(bo.representative)
            if key is not None and key not in out:
                out[key] = bo
        return out

    @cached_property
    def curve_orbit_data(self) -> dict[str, CurveOrbitData]:
        out = {}
        for co in self.data.curve_orbits:
            key = self.curve_orbit_of.get(co.representative)
            if key is not None and key not in out:
                out[key] = co
        return out

    @cached_property
    def slot_valency(self) -> dict[str, Valency]:
        """Slot-orbit key -> boundary valency."""
        out = {}
        for bo in self.data.body_orbits:
            for rep, v in bo.boundary_valencies.items():
                key = self.slot_orbit_of.get(rep)
                if key is not None:
                    out.setdefault(key, v)
        return out

    def return_order(self, body_key: str) -> int:
        return self.body_orbit_data[body_key].return_order

    def body_multiplicity(self, body_key: str) -> int:
        return self.body_orbit_size(body_key) * self.return_order(body_key)

    def body_orbit_of_slot_orbit(self, slot_key: str) -> str:
        return self.body_orbit_of[self.data.body_of_slot[slot_key]]


def derived_return_time(data: PseudoPeriodicData, kind: str, ident: str) -> int:
    """Return time of a body, a boundary slot, or an oriented curve.

    For curves this is ``alpha``: the setwise orbit size, doubled when the
    first setwise return reverses the curve.
    """
    st = data.structure
    if kind == "body":
        if ident not in st.body_orbit_of:
            raise UnknownId(ident)
        return st.body_orbit_size(st.body_orbit_of[ident])
    if kind == "slot":
        if ident not in st.slot_orbit_of:
            raise UnknownId(ident)
        return st.slot_return_time(st.slot_orbit_of[ident])
    if kind == "curve":
        if ident not in st.curve_orbit_of:
            raise UnknownId(ident)
        return st.alpha[st.curve_orbit_of[ident]]
    raise ValueError(f"unknown object kind {kind!r}")


def is_amphidrome(data: PseudoPeriodicData, curve: str) -> bool:
    st = data.structure
    if curve not in st.curve_orbit_of:
        raise UnknownId(curve)
    return st.amphidrome[st.curve_orbit_of[curve]]


def body_multiplicity(data: PseudoPeriodicData, body_orbit: BodyOrbitData | str) -> int:
    """Multiplicity of the body component: orbit size times return order."""
    rep = body_orbit if isinstance(body_orbit, str) else body_orbit.representative
    st = data.structure
    if rep not in st.body_orbit_of:
        raise UnknownId(rep)
    return st.body_multiplicity(st.body_orbit_of[rep])


# ---------------------------------------------------------------------------
# validation


def _is_permutation(perm: Mapping[str, str], domain: set[str]) -> bool:
    return set(perm) == domain and set(perm.values()) == domain


def permutation_problems(data: PseudoPeriodicData) -> list[Violation]:
    """Check ``c``: the three permutations are bijections and mutually compatible."""
    out: list[Violation] = []
    act = data.action
    bodies = set(data.body_by_id)
    slots = set(data.body_of_slot)
    curves = set(data.curve_by_id)
    if not _is_permutation(act.body_perm, bodies):
        out.append(Violation("c", "body map is not a permutation of the bodies"))
    if not _is_permutation(act.slot_perm, slots):
        out.append(Violation("c", "slot map is not a permutation of the boundary slots"))
    images = {c: t for c, (t, _) in act.curve_perm.items()}
    if not _is_permutation(images, curves):
        out.append(Violation("c", "curve map is not a permutation of the curves"))
    if out:
        return out
    for s, t in sorted(act.slot_perm.items()):
        b = data.body_of_slot[s]
        if data.body_of_slot[t] != act.body_perm[b]:
            out.append(Violation("c", f"slot {s} of body {b} maps to {t}, not on the image body "
                                      f"{act.body_perm[b]}", (s, t)))
    for b, t in sorted(act.body_perm.items()):
        if data.body_by_id[b].genus != data.body_by_id[t].genus:
            out.append(Violation("c", f"body {b} maps to body {t} of different genus", (b, t)))
    curve_by_id = data.curve_by_id
    for c, (t, rev) in sorted(act.curve_perm.items()):
        cur, img = curve_by_id[c], curve_by_id[t]
        e1, e2 = act.slot_perm[cur.end1], act.slot_perm[cur.end2]
        if {e1, e2} != {img.end1, img.end2}:
            out.append(Violation("c", f"curve map {c} -> {t} is not induced by the slot map", (c, t)))
        elif rev != (e1 == img.end2):
            out.append(Violation("c", f"reverses flag of {c} -> {t} disagrees with the slot map", (c, t)))
    return out


def _connected(data: PseudoPeriodicData) -> bool:
    if not data.bodies:
        return False
    adj: dict[str, set[str]] = {b.id: set() for b in data.bodies}
    for c in data.curves:
        a, b = data.body_of_slot[c.end1], data.body_of_slot[c.end2]
        adj[a].add(b)
        adj[b].add(a)
    start = data.bodies[0].id
    seen = {start}
    stack = [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def validate(data: PseudoPeriodicData) -> ValidationReport:
    """Run every consistency check; an empty report means the data is usable.

    Checks are reported under letters: a admissibility, b total Euler
    characteristic and closed connected surface, c permutation compatibility,
    d orbit data coverage, e Riemann-Hurwitz, f boundary valency versus
    return times, g side valencies of curve orbits, h screw compatibility,
    i negative screws, j genus restriction, k realizability of each body
    orbit's rotation data.  Checks d-h and k need c to pass.
    """
    from .chains import amph_head, chain_sum

    out: list[Violation] = []
    periodic_torus = data.genus == 1 and not data.curves
    # a
    if not periodic_torus:
        for b in data.bodies:
            if b.euler_characteristic >= 0:
                out.append(Violation("a", f"body {b.id} has Euler characteristic "
                                          f"{b.euler_characteristic} >= 0", (b.id,)))
    # b
    total = sum(b.euler_characteristic for b in data.bodies)
    if total != 2 - 2 * data.genus:
        out.append(Violation("b", f"bodies have total Euler characteristic {total}, "
                                  f"expected {2 - 2 * data.genus}"))
    used = [s for c in data.curves for s in c.ends]
    if len(used) != len(set(used)) or set(used) != set(data.body_of_slot):
        out.append(Violation("b", "boundary slots are not matched one-to-one by curve ends"))
    elif not _connected(data):
        out.append(Violation("b", "bodies and curves do not form a connected surface"))
    # c
    perm = permutation_problems(data)
    out.extend(perm)
    if not perm:
        out.extend(_orbit_checks(data, amph_head, chain_sum))
    # i
    for co in data.curve_orbits:
        if co.screw >= 0:
            out.append(Violation("i", f"curve orbit {co.representative} has screw number "
                                      f"{co.screw} >= 0", (co.representative,)))
    # j
    if data.genus < 1:
        out.append(Violation("j", f"genus {data.genus} < 1"))
    elif data.genus == 1 and data.curves:
        out.append(Violation("j", "genus 1 is supported only with an empty curve system"))
    order = "abcdefghijk"
    out.sort(key=lambda v: order.index(v.check))
    return ValidationReport(tuple(out))


def _orbit_checks(data, amph_head, chain_sum) -> list[Violation]:
    out: list[Violation] = []
    st = Structure(data)

    # d: every orbit described exactly once
    seen: dict[str, str] = {}
    for bo in data.body_orbits:
        key = st.body_orbit_of.get(bo.representative)
        if key is None:
            out.append(Violation("d", f"body orbit data names unknown body {bo.representative}",
                                 (bo.representative,)))
        elif key in seen:
            out.append(Violation("d", f"body orbit of {key} is described twice "
                                      f"({seen[key]}, {bo.representative})", (key,)))
        else:
            seen[key] = bo.representative
    for key in st.body_orbits:
        if key not in seen:
            out.append(Violation("d", f"body orbit of {key} has no orbit data", (key,)))
    seen = {}
    for co in data.curve_orbits:
        key = st.curve_orbit_of.get(co.representative)
        if key is None:
            out.append(Violation("d", f"curve orbit data names unknown curve {co.representative}",
                                 (co.representative,)))
        elif key in seen:
            out.append(Violation("d", f"curve orbit of {key} is described twice", (key,)))
        else:
            seen[key] = co.representative
    for key in st.curve_orbits:
        if key not in seen:
            out.append(Violation("d", f"curve orbit of {key} has no orbit data", (key,)))
    for bo in data.body_orbits:
        bkey = st.body_orbit_of.get(bo.representative)
        if bkey is None:
            continue
        expected = set(st.slot_orbits_of_body_orbit[bkey])
        got: list[str] = []
        for rep in bo.boundary_valencies:
            skey = st.slot_orbit_of.get(rep)
            if skey is None or skey not in expected:
                out.append(Violation("d", f"boundary valency key {rep} is not a slot of body "
                                          f"orbit {bkey}", (rep,)))
            else:
                got.append(skey)
        if len(got) != len(set(got)):
            out.append(Violation("d", f"a slot orbit of body orbit {bkey} has two boundary valencies",
                                 (bkey,)))
        missing = expected - set(got)
        if missing:
            out.append(Violation("d", f"slot orbits {sorted(missing)} of body orbit {bkey} have no "
                                      "boundary valency", tuple(sorted(missing))))
    if out:
        return out

    for bkey, members in st.body_orbits.items():
        bo = st.body_orbit_data[bkey]
        body = data.body_by_id[bkey]
        n = bo.return_order
        m_b = len(members)
        slot_keys = st.slot_orbits_of_body_orbit[bkey]
        if n < 1 or bo.quotient_genus < 0:
            out.append(Violation("e", f"body orbit {bkey}: return order must be positive and "
                                      "quotient genus nonnegative", (bkey,)))
            continue
        # e: Riemann-Hurwitz on one body of the orbit
        bad_cone = [v for v in bo.cone_points if v.lam < 2 or n % v.lam]
        if bad_cone:
            out.append(Violation("e", f"body orbit {bkey}: cone orders {[v.lam for v in bad_cone]} "
                                      f"must be >= 2 and divide the return order {n}", (bkey,)))
        orbifold_chi = (2 - 2 * bo.quotient_genus - len(slot_keys)
                        - sum(1 - Fraction(1, v.lam) for v in bo.cone_points))
        if n * orbifold_chi != body.euler_characteristic:
            out.append(Violation("e", f"body orbit {bkey}: Riemann-Hurwitz fails, "
                                      f"{body.euler_characteristic} != {n} * ({orbifold_chi})", (bkey,)))
        # f: lambda_S * m_S == n_B * m_B
        for skey in slot_keys:
            v = st.slot_valency[skey]
            if v.lam * st.slot_return_time(skey) != n * m_b:
                out.append(Violation("f", f"slot orbit {skey}: lambda {v.lam} * return time "
                                          f"{st.slot_return_time(skey)} != {n} * {m_b}", (skey,)))
        # k: the rotation data must come from a connected cyclic cover
        cone_sum = sum((Fraction(v.sigma, v.lam) for v in bo.cone_points), Fraction(0))
        bdry_sum = sum((Fraction(st.slot_valency[k].sigma, st.slot_valency[k].lam)
                        for k in slot_keys), Fraction(0))
        if (cone_sum - bdry_sum).denominator != 1:
            out.append(Violation("k", f"body orbit {bkey}: cone terms {cone_sum} and boundary "
                                      f"terms {bdry_sum} of sigma/lambda differ by a non-integer", (bkey,)))
        if bo.quotient_genus == 0:
            lams = [v.lam for v in bo.cone_points] + [st.slot_valency[k].lam for k in slot_keys]
            if math.lcm(1, *lams) != n:
                out.append(Violation("k", f"body orbit {bkey}: quotient genus 0 needs the rotation "
                                          f"orders {lams} to generate the order-{n} action", (bkey,)))

    for ckey in st.curve_orbits:
        co = st.curve_orbit_data[ckey]
        alpha = st.alpha[ckey]
        s1, s2 = st.curve_sides(ckey)
        s_abs = abs(co.screw)
        if st.amphidrome[ckey]:
            # g
            if s1 != s2 or st.slot_return_time(s1) != alpha:
                out.append(Violation("g", f"amphidrome curve orbit {ckey}: sides must share one slot "
                                          f"orbit with return time alpha = {alpha}", (ckey,)))
                continue
            # h
            v = st.slot_valency[s1]
            rest = s_abs / 2 - chain_sum(amph_head(v))
            if co.screw != 0 and (rest.denominator != 1 or rest < 0 or (v.lam == 1 and rest < 1)):
                out.append(Violation("h", f"amphidrome curve orbit {ckey}: |s|/2 = {s_abs / 2} minus "
                                          f"the chain head sum is not a nonnegative integer", (ckey,)))
        else:
            m1, m2 = st.slot_return_time(s1), st.slot_return_time(s2)
            if not m1 == m2 == alpha:
                out.append(Violation("g", f"curve orbit {ckey}: side return times {m1}, {m2} differ "
                                          f"from alpha = {alpha}", (ckey,)))
                continue
            v1, v2 = st.slot_valency[s1], st.slot_valency[s2]
            rest = s_abs - v1.rotation - v2.rotation
            if co.screw != 0 and rest.denominator != 1:
                out.append(Violation("h", f"curve orbit {ckey}: |s| = {s_abs} is incompatible with "
                                          f"side rotations {v1.rotation} and {v2.rotation}", (ckey,)))
    return out


# ---------------------------------------------------------------------------
# JSON


_TOP_KEYS = {"genus", "bodies", "curves", "map", "body_orbits", "curve_orbits"}


def _obj(value, keys: set[str], where: str, optional: Iterable[str] = ()) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object")
    extra = set(value) - keys - set(optional)
    if extra:
        raise InputError(f"{where}: unknown keys {sorted(extra)}")
    missing = keys - set(value)
    if missing:
        raise InputError(f"{where}: missing keys {sorted(missing)}")
    return value


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer")
    return value


def _str(value, where: str) -> str:
    if not isinstance(value, str):
        raise InputError(f"{where}: expected a string")
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected an array")
    return value


def _str_map(value, where: str) -> dict[str, str]:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object")
    return {_str(k, where): _str(v, f"{where}.{k}") for k, v in value.items()}


def _valency(value, where: str) -> Valency:
    obj = _obj(value, {"lambda", "sigma"}, where)
    return Valency(_int(obj["lambda"], where + ".lambda"), _int(obj["sigma"], where + ".sigma"))


def parse_screw(text) -> Fraction:
    if not isinstance(text, str):
        raise InputError("screw numbers must be given as exact strings such as \"-3/5\"")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad screw number {text!r}") from None


def from_json(doc: dict, name: str = "") -> PseudoPeriodicData:
    """Build :class:`PseudoPeriodicData` from the input-file JSON object."""
    doc = _obj(doc, _TOP_KEYS, "input")
    bodies = []
    for i, b in enumerate(_list(doc["bodies"], "bodies")):
        b = _obj(b, {"id", "genus", "boundaries"}, f"bodies[{i}]")
        bodies.append(Body(_str(b["id"], f"bodies[{i}].id"), _int(b["genus"], f"bodies[{i}].genus"),
                           tuple(_str(s, f"bodies[{i}].boundaries") for s in _list(b["boundaries"], "boundaries"))))
    curves = []
    for i, c in enumerate(_list(doc["curves"], "curves")):
        c = _obj(c, {"id", "ends"}, f"curves[{i}]")
        ends = _list(c["ends"], f"curves[{i}].ends")
        if len(ends) != 2:
            raise InputError(f"curves[{i}].ends: expected two slots")
        curves.append(Curve(_str(c["id"], f"curves[{i}].id"), _str(ends[0], "ends"), _str(ends[1], "ends")))
    mp = _obj(doc["map"], {"bodies", "slots", "curves"}, "map")
    curve_perm = {}
    if not isinstance(mp["curves"], dict):
        raise InputError("map.curves: expected an object")
    for cid, img in mp["curves"].items():
        img = _obj(img, {"to", "reverses"}, f"map.curves.{cid}")
        if not isinstance(img["reverses"], bool):
            raise InputError(f"map.curves.{cid}.reverses: expected a boolean")
        curve_perm[cid] = (_str(img["to"], f"map.curves.{cid}.to"), img["reverses"])
    action = MapAction(_str_map(mp["bodies"], "map.bodies"), _str_map(mp["slots"], "map.slots"), curve_perm)
    body_orbits = []
    for i, bo in enumerate(_list(doc["body_orbits"], "body_orbits")):
        where = f"body_orbits[{i}]"
        bo = _obj(bo, {"rep", "order", "quotient_genus", "cone_points", "boundary_valencies"}, where)
        bv = bo["boundary_valencies"]
        if not isinstance(bv, dict):
            raise InputError(f"{where}.boundary_valencies: expected an object")
        body_orbits.append(BodyOrbitData(
            _str(bo["rep"], where + ".rep"),
            _int(bo["order"], where + ".order"),
            _int(bo["quotient_genus"], where + ".quotient_genus"),
            tuple(_valency(v, f"{where}.cone_points[{j}]") for j, v in enumerate(_list(bo["cone_points"], "cone_points"))),
            {_str(k, where): _valency(v, f"{where}.boundary_valencies.{k}") for k, v in bv.items()},
        ))
    curve_orbits = []
    for i, co in enumerate(_list(doc["curve_orbits"], "curve_orbits")):
        co = _obj(co, {"rep", "screw"}, f"curve_orbits[{i}]")
        curve_orbits.append(CurveOrbitData(_str(co["rep"], f"curve_orbits[{i}].rep"), parse_screw(co["screw"])))
    return PseudoPeriodicData(_int(doc["genus"], "genus"), tuple(bodies), tuple(curves), action,
                              tuple(body_orbits), tuple(curve_orbits), name=name)


def to_json(data: PseudoPeriodicData) -> dict:
    act = data.action
    return {
        "genus": data.genus,
        "bodies": [{"id": b.id, "genus": b.genus, "boundaries": list(b.boundary_slots)} for b in data.bodies],
        "curves": [{"id": c.id, "ends": [c.end1, c.end2]} for c in data.curves],
        "map": {
            "bodies": dict(sorted(act.body_perm.items())),
            "slots": dict(sorted(act.slot_perm.items())),
            "curves": {c: {"to": t, "reverses": r} for c, (t, r) in sorted(act.curve_perm.items())},
        },
        "body_orbits": [{
            "rep": bo.representative,
            "order": bo.return_order,
            "quotient_genus": bo.quotient_genus,
            "cone_points": [v.to_json() for v in bo.cone_points],
            "boundary_valencies": {k: v.to_json() for k, v in sorted(bo.boundary_valencies.items())},
        } for bo in data.body_orbits],
        "curve_orbits": [{"rep": co.representative, "screw": str(co.screw)} for co in data.curve_orbits],
    }


def load(path) -> PseudoPeriodicData:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON ({exc})") from None
    return from_json(doc, name=str(path))


def dump(data: PseudoPeriodicData, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(data), fh, indent=2, sort_keys=True)
        fh.write("\n")
