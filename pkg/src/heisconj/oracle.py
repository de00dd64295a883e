"""Brute-force conjugacy deciders and partition comparison.

These never look at the invariant formulas: the finite oracle tries every
group element as a conjugator, the integer oracle solves the raw
conjugation equations

    p1 - p2 = k n' - k' n
    c1 - c2 = k n'(n'-1)/2 - k' n(n-1)/2 - n' p1    (mod n)

by sweeping the full solution family of the first one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Hashable, Sequence

import numpy as np

from .congruence import InvariantViolation, solve_linear_diophantine
from .heis import ExtElement, ExtGroup, ext_conjugate, ext_inv
from .integer import ZExtElement, kc, z_conjugate

DEFAULT_ORDER_BOUND = 20000


class OrderBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    conjugate: bool
    witness: object = None
    method: str = "exhaustive"
    search_stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.conjugate


def _check_bound(G: ExtGroup, bound: int):
    if not G.is_finite:
        raise OrderBoundExceeded("brute-force oracle needs a finite group")
    if G.order > bound:
        raise OrderBoundExceeded(f"group order {G.order} exceeds the oracle bound {bound}")


def oracle_finite(G: ExtGroup, x1: ExtElement, x2: ExtElement,
                  bound: int = DEFAULT_ORDER_BOUND) -> OracleVerdict:
    _check_bound(G, bound)
    if x1.n != x2.n or x1.k != x2.k:
        return OracleVerdict(False, None, "exhaustive", {"tried": 0})
    tried = 0
    for g in G.elements():
        tried += 1
        if ext_conjugate(G, g, x1) == x2:
            return OracleVerdict(True, g, "exhaustive", {"tried": tried})
    return OracleVerdict(False, None, "exhaustive", {"tried": tried})


def conjugacy_classes(G: ExtGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[list[ExtElement]]:
    """All conjugacy classes, each the orbit of its least element under
    conjugation by every group element.  Classes and members are sorted."""
    _check_bound(G, bound)
    everything = list(G.elements())
    pairs = [(g.as_tuple(), ext_inv(G, g).as_tuple()) for g in everything]
    mul = G.mul_coords
    seen = set()
    classes = []
    for x in everything:
        t = x.as_tuple()
        if t in seen:
            continue
        orbit = {mul(mul(g, t), gi) for g, gi in pairs}
        seen |= orbit
        classes.append([G.element(*o) for o in sorted(orbit)])
    return classes


# ---------------------------------------------------------------------------
# integer model
# ---------------------------------------------------------------------------

def _second_equation(x1: ZExtElement, x2: ZExtElement, n1: int, k1: int) -> bool:
    p1, c1, n, k = x1
    lhs = c1 - x2.c
    rhs = kc(k, n1) - kc(k1, n) - n1 * p1
    return (lhs - rhs) % abs(n) == 0 if n else lhs == rhs


def z_witness(x1: ZExtElement, x2: ZExtElement, n1: int, k1: int) -> ZExtElement:
    """Conjugator (p', 0, n', k') taking x1 to x2; p' absorbs the Im n slack."""
    p1, c1, n, k = x1
    slack = c1 + kc(k1, n) + n1 * (p1 + k1 * n) - x2.c - kc(k, n1) - n * k * n1
    p_shift = slack // n if n else 0
    g = ZExtElement(p_shift, 0, n1, k1)
    if z_conjugate(g, x1) != x2:
        raise InvariantViolation(f"oracle witness {g} does not conjugate {x1} to {x2}")
    return g


def oracle_z(x1, x2) -> OracleVerdict:
    x1, x2 = ZExtElement(*x1), ZExtElement(*x2)
    if x1.n != x2.n or x1.k != x2.k:
        return OracleVerdict(False, None, "parametric", {"tried": 0})
    p1, c1, n, k = x1
    p2 = x2.p
    if n == 0 and k == 0:
        # every (n', k') solves the first equation; second is c1 - c2 = -n' p1
        if p1 != p2:
            return OracleVerdict(False, None, "parametric", {"tried": 0})
        diff = x2.c - c1
        if p1 == 0:
            ok, n1 = diff == 0, 0
        else:
            ok, n1 = diff % p1 == 0, diff // p1
        wit = z_witness(x1, x2, n1, 0) if ok else None
        return OracleVerdict(ok, wit, "parametric", {"tried": 1})
    sol = solve_linear_diophantine(k, -n, p1 - p2)
    if sol is None:
        return OracleVerdict(False, None, "parametric", {"tried": 0})
    # n' has period 2n and k' period 2 in the second equation
    sweep = 2 * gcd(n, k)
    for t in range(sweep):
        n1, k1 = sol.at(t)
        if _second_equation(x1, x2, n1, k1):
            return OracleVerdict(True, z_witness(x1, x2, n1, k1), "parametric",
                                 {"tried": t + 1, "period": sweep})
    return OracleVerdict(False, None, "parametric", {"tried": sweep, "period": sweep})


def naive_residues(n: int, k: int, p1: int, p2: int, bound: int = 200) -> frozenset:
    """Residues mod n of k n'(n'-1)/2 - k' n(n-1)/2 - n' p1 over all
    n', k' in [-bound, bound] with p1 - p2 = k n' - k' n exactly (n >= 1)."""
    if n < 1:
        raise ValueError("naive scan needs n >= 1")
    n1 = np.arange(-bound, bound + 1, dtype=np.int64)
    num = k * n1 - (p1 - p2)
    hit = num % n == 0
    k1 = num // n
    hit &= (k1 >= -bound) & (k1 <= bound)
    vals = k * (n1 * (n1 - 1) // 2) - k1 * (n * (n - 1) // 2) - n1 * p1
    return frozenset(int(v) for v in np.unique(np.mod(vals[hit], n)))


def naive_scan_z(x1, x2, bound: int = 200) -> OracleVerdict:
    x1, x2 = ZExtElement(*x1), ZExtElement(*x2)
    if x1.n != x2.n or x1.k != x2.k or x1.n < 1:
        raise ValueError("naive scan compares elements with equal n >= 1 and k")
    res = naive_residues(x1.n, x1.k, x1.p, x2.p, bound)
    return OracleVerdict((x1.c - x2.c) % x1.n in res, None, "naive-scan",
                         {"box": bound, "residues": len(res)})


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

@dataclass
class PartitionReport:
    equal: bool
    blocks_a: int
    blocks_b: int
    offending: tuple | None = None
    verdicts: tuple | None = None


def partition_compare(elements: Sequence, labels_a: Sequence[Hashable],
                      labels_b: Sequence[Hashable],
                      oracle: Callable | None = None) -> PartitionReport:
    """Do the two labelings induce the same partition of ``elements``?"""
    if not (len(elements) == len(labels_a) == len(labels_b)):
        raise ValueError("labelings must be total on the element set")
    a_to_b: dict = {}
    b_to_a: dict = {}
    first_a: dict = {}
    first_b: dict = {}
    for idx, (la, lb) in enumerate(zip(labels_a, labels_b)):
        first_a.setdefault(la, idx)
        first_b.setdefault(lb, idx)
        ok_ab = a_to_b.setdefault(la, lb) == lb
        ok_ba = b_to_a.setdefault(lb, la) == la
        if not (ok_ab and ok_ba):
            j = first_a[la] if not ok_ab else first_b[lb]
            pair = (elements[j], elements[idx])
            detail = ((labels_a[j], labels_a[idx]), (labels_b[j], labels_b[idx]))
            verdicts = oracle(*pair) if oracle else None
            return PartitionReport(False, len(set(labels_a)), len(set(labels_b)),
                                   (pair, detail), verdicts)
    return PartitionReport(True, len(a_to_b), len(b_to_a))
