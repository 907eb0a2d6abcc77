"""Independent reference implementations used by the tests.

Nothing here imports the chain constructors; they are re-derived from the
defining conditions or from continued fractions.
"""
from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction


def hj_expansion(p: int, q: int) -> list[int]:
    """Negative continued fraction p/q = b1 - 1/(b2 - 1/(...)), every b >= 2 (p > q >= 1)."""
    x = Fraction(p, q)
    out = []
    while True:
        b = math.ceil(x)
        out.append(b)
        if b == x:
            return out
        x = 1 / (b - x)


def hj_evaluate(bs: list[int]) -> Fraction:
    x = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        x = b - 1 / x
    return x


def chain_from_hj(lam: int, sigma: int) -> list[int]:
    """Remainders of lam / (lam - sigma) = [b_1, ..., b_k]: n_0 = lam, n_1 = lam - sigma, n_{i+1} = b_i n_i - n_{i-1}.

    The last coefficient sends the sequence to 0, so the chain is n_0 .. n_k.
    """
    bs = hj_expansion(lam, lam - sigma)
    assert all(b >= 2 for b in bs) and hj_evaluate(bs) == Fraction(lam, lam - sigma)
    n = [lam, lam - sigma]
    for b in bs[:-1]:
        n.append(b * n[-1] - n[-2])
    assert bs[-1] * n[-1] - n[-2] == 0 and n[-1] == 1, (lam, sigma, bs, n)
    return n


def enumerate_chain_sequences(max_lam: int, max_l: int, max_entry: int, max_sum) -> dict:
    """All convex sequences with n_i | n_{i-1} + n_{i+1}, n_0 <= max_lam, n_l <= max_lam, l <= max_l.

    Entries range over 1..max_entry.  Returns a dict keyed by
    ``(n_0, n_1 mod n_0, n_l, n_{l-1} mod n_l, sum)`` listing the sequences.
    The sum of 1/(n_i n_{i+1}) only grows, so branches beyond ``max_sum`` are cut.
    """
    found: dict = defaultdict(list)
    max_sum = Fraction(max_sum)

    def rec(seq, total):
        if len(seq) >= 2 and seq[-1] <= max_lam:
            found[(seq[0], seq[1] % seq[0], seq[-1], seq[-2] % seq[-1], total)].append(tuple(seq))
        if len(seq) == max_l + 1:
            return
        cur = seq[-1]
        if len(seq) == 1:
            cands = range(1, max_entry + 1)
        else:
            prev = seq[-2]
            # convexity: n_{i+1} >= 2 n_i - n_{i-1}; divisibility: n_{i+1} = -n_{i-1} mod n_i
            low = max(1, 2 * cur - prev)
            start = low + (-prev - low) % cur
            cands = range(start, max_entry + 1, cur)
        for nxt in cands:
            t = total + Fraction(1, cur * nxt)
            if t > max_sum:
                continue
            seq.append(nxt)
            rec(seq, t)
            seq.pop()

    for n0 in range(1, max_lam + 1):
        rec([n0], Fraction(0))
    return found


def psd_rank(a) -> tuple[bool, int]:
    """(positive semidefinite?, rank) of a symmetric integer matrix, by exact symmetric elimination.

    Pivots on any positive diagonal entry; a negative diagonal entry, or a
    nonzero off-diagonal entry once the diagonal is exhausted, rules out PSD.
    """
    a = [[Fraction(x) for x in row] for row in a]
    live = list(range(len(a)))
    rank = 0
    while live:
        if any(a[i][i] < 0 for i in live):
            return False, rank
        k = next((i for i in live if a[i][i] > 0), None)
        if k is None:
            return all(a[i][j] == 0 for i in live for j in live), rank
        live.remove(k)
        rank += 1
        for i in live:
            f = a[i][k] / a[k][k]
            for j in live:
                a[i][j] -= f * a[k][j]
    return True, rank


def extended_dynkin(center: int, arms) -> tuple[list[int], list[tuple[int, int]]]:
    """Vertex multiplicities and edges of a star-shaped tree: a centre and arms of given multiplicities."""
    mults = [center]
    edges = []
    for arm in arms:
        prev = 0
        for m in arm:
            mults.append(m)
            edges.append((prev, len(mults) - 1))
            prev = len(mults) - 1
    return mults, edges
