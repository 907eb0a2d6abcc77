"""Integer chains attached to cone points and to annuli.

Three constructions:

* :func:`cone_chain`, the strictly decreasing chain ``lambda > lambda - sigma > ... > 1``
  replacing a cone point;
* :func:`nonamph_chain`, the unique chain joining the two boundary valencies
  of a non-amphidrome annulus whose reciprocal products sum to ``|s|``;
* :func:`amph_chain`, the non-increasing chain ``lambda >= sigma >= ... >= 1``
  of an amphidrome annulus, summing to ``|s| / 2``.

Everything is exact (``int`` and ``Fraction``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Valency

CONE = "cone"
NON_AMPHIDROME = "non_amphidrome"
AMPHIDROME = "amphidrome"


class ChainError(ValueError):
    pass


class IncompatibleScrew(ChainError):
    """The screw number cannot be realized with the given side valencies."""


class SearchBoundExceeded(ChainError):
    """The chain search was cut off by its length or entry bound before finding a sequence."""


@dataclass(frozen=True)
class SearchBounds:
    max_length: int = 64   # number of entries n_0 .. n_l
    max_entry: int = 10**6

    def __post_init__(self):
        if self.max_length < 2 or self.max_entry < 1:
            raise ValueError("search bounds must be positive (max_length >= 2)")


DEFAULT_BOUNDS = SearchBounds()


@dataclass(frozen=True)
class ChainSeq:
    entries: tuple[int, ...]
    kind: str
    multiplier: int = 1

    @property
    def length(self) -> int:
        """``l``: the index of the last entry."""
        return len(self.entries) - 1

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(self.multiplier * n for n in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _least_positive_residue(a: int, n: int) -> int:
    r = a % n
    return r if r else n


def cone_chain(v: Valency, multiplier: int = 1) -> ChainSeq:
    if v.lam < 2:
        raise ChainError(f"lambda = {v.lam} is not a cone point")
    seq = [v.lam, v.lam - v.sigma]
    while seq[-1] != 1:
        seq.append(_least_positive_residue(-seq[-2], seq[-1]))
    return ChainSeq(tuple(seq), CONE, multiplier)


def amph_head(v: Valency) -> tuple[int, ...]:
    """The forced part of an amphidrome chain, before padding with 1's."""
    if v.lam == 1:
        return (1,)
    seq = [v.lam, v.sigma]
    while seq[-1] != 1:
        seq.append(_least_positive_residue(-seq[-2], seq[-1]))
    return tuple(seq)


def amph_chain(v: Valency, s_abs, multiplier: int = 1) -> ChainSeq:
    s_abs = Fraction(s_abs)
    head = amph_head(v)
    rest = s_abs / 2 - _reciprocal_sum(head)
    if rest.denominator != 1 or rest < 0 or (len(head) == 1 and rest < 1):
        raise IncompatibleScrew(f"|s|/2 = {s_abs / 2} is not the head sum {_reciprocal_sum(head)} "
                                "plus a nonnegative integer")
    return ChainSeq(head + (1,) * int(rest), AMPHIDROME, multiplier)


def nonamph_chain(v1: Valency, v2: Valency, s_abs, multiplier: int = 1,
                  bounds: SearchBounds = DEFAULT_BOUNDS) -> ChainSeq:
    """Depth-first search for the chain joining ``v1`` to ``v2`` with reciprocal sum ``s_abs``."""
    s_abs = Fraction(s_abs)
    if s_abs <= 0 or (s_abs - v1.rotation - v2.rotation).denominator != 1:
        raise IncompatibleScrew(f"|s| = {s_abs} is incompatible with rotations "
                                f"{v1.rotation} and {v2.rotation}")
    lam1, lam2 = v1.lam, v2.lam
    # a sequence with (n_{i-1} + n_{i+1}) / n_i >= 2 is convex, so no entry exceeds both ends
    top = max(lam1, lam2)
    cap = min(top, bounds.max_entry)
    truncated = top > bounds.max_entry

    def closes(prev: int, last: int) -> bool:
        return last == lam2 and (prev - v2.sigma) % lam2 == 0

    def candidates(prev: int | None, cur: int, remaining: Fraction):
        # 1 / (cur * nxt) <= remaining
        low = max(1, math.ceil(1 / (cur * remaining)))
        if prev is None:
            residue, step = v1.sigma % lam1, lam1
        else:
            low = max(low, 2 * cur - prev)
            residue, step = (-prev) % cur, cur
        first = low + (residue - low) % step
        return range(first, cap + 1, step)

    seq = [lam1]

    def extend(total: Fraction) -> bool:
        nonlocal truncated
        cur = seq[-1]
        prev = seq[-2] if len(seq) > 1 else None
        for nxt in candidates(prev, cur, s_abs - total):
            if nxt > cur and nxt > lam2:
                # once increasing, a convex sequence keeps increasing up to n_l
                break
            new_total = total + Fraction(1, cur * nxt)
            if new_total == s_abs:
                if closes(cur, nxt):
                    seq.append(nxt)
                    return True
                continue
            if len(seq) + 1 >= bounds.max_length:
                truncated = True
                continue
            seq.append(nxt)
            if extend(new_total):
                return True
            seq.pop()
        return False

    if extend(Fraction(0)):
        return ChainSeq(tuple(seq), NON_AMPHIDROME, multiplier)
    if truncated:
        raise SearchBoundExceeded(f"no chain for {v1}, {v2}, |s| = {s_abs} within {bounds}")
    raise IncompatibleScrew(f"no chain exists for {v1}, {v2}, |s| = {s_abs}")


def _reciprocal_sum(entries) -> Fraction:
    return sum((Fraction(1, a * b) for a, b in zip(entries, entries[1:])), Fraction(0))


def chain_sum(c) -> Fraction:
    """``sum 1 / (n_i n_{i+1})`` over consecutive entries."""
    return _reciprocal_sum(tuple(c))


def _recurrence_holds(n) -> bool:
    return all((n[i - 1] + n[i + 1]) % n[i] == 0 for i in range(1, len(n) - 1))


def chain_check(c: ChainSeq, *valencies: Valency, s_abs=None) -> bool:
    """Re-verify the defining conditions of ``c`` for its kind, independently of the constructors.

    ``cone`` takes one valency, ``non_amphidrome`` two valencies and ``s_abs``,
    ``amphidrome`` one valency and ``s_abs``.
    """
    n = tuple(c.entries)
    if len(n) < 2 or any(x < 1 for x in n) or not _recurrence_holds(n):
        return False
    if c.kind == CONE:
        (v,) = valencies
        return (n[0] == v.lam and n[1] == v.lam - v.sigma and n[-1] == 1
                and all(a > b for a, b in zip(n, n[1:]))
                and all(math.gcd(a, b) == 1 for a, b in zip(n, n[1:])))
    if c.kind == NON_AMPHIDROME:
        v1, v2 = valencies
        return (n[0] == v1.lam and n[-1] == v2.lam
                and (n[1] - v1.sigma) % v1.lam == 0 and (n[-2] - v2.sigma) % v2.lam == 0
                and all((n[i - 1] + n[i + 1]) >= 2 * n[i] for i in range(1, len(n) - 1))
                and chain_sum(n) == Fraction(s_abs))
    if c.kind == AMPHIDROME:
        (v,) = valencies
        return (n[0] == v.lam and (n[1] - v.sigma) % v.lam == 0 and n[-1] == 1
                and all(a >= b for a, b in zip(n, n[1:]))
                and chain_sum(n) == Fraction(s_abs) / 2)
    raise ValueError(f"unknown chain kind {c.kind!r}")
