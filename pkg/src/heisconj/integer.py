"""The extended integer Heisenberg group.

N = P = C = K = Z, the pairing is multiplication and k in K acts by
k(p, c, n) = (p + k n, c + k n(n-1)/2, n).  Elements are plain integer
quadruples (p, c, n, k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

from .congruence import CongruenceSystem, canonical_w, lemma5_solve


class WrongVariant(ValueError):
    """The element's n does not belong to the requested branch."""


class ZExtElement(NamedTuple):
    p: int
    c: int
    n: int
    k: int


Z_IDENTITY = ZExtElement(0, 0, 0, 0)


def kc(k: int, n: int) -> int:
    return k * (n * (n - 1) // 2)


def z_mul(x: ZExtElement, y: ZExtElement) -> ZExtElement:
    shifted = y.p + x.k * y.n
    return ZExtElement(x.p + shifted, y.c + x.c + kc(x.k, y.n) + x.n * shifted,
                       y.n + x.n, y.k + x.k)


def z_inv(x: ZExtElement) -> ZExtElement:
    return ZExtElement(-x.p + x.k * x.n, -x.c - kc(x.k, -x.n) + x.n * x.p, -x.n, -x.k)


def z_conjugate(g: ZExtElement, x: ZExtElement) -> ZExtElement:
    return z_mul(z_mul(g, x), z_inv(g))


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZInvariantRecord:
    n: int
    k: int
    variant: str  # "odd" | "even" | "degenerate"
    payload: dict = field(compare=False)
    key: tuple = field(repr=False)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "variant": self.variant, **self.payload}


def odd_invariants(x: ZExtElement) -> ZInvariantRecord:
    p, c, n, k = x
    if n == 0 or n % 2 == 0:
        raise WrongVariant(f"odd invariants need odd n, got {n}")
    m = abs(n)
    g = gcd(m, k)
    w = canonical_w(k, m)
    modulus = m * gcd(g, p)
    j = (-p * p * w - g * (2 * c + p)) % modulus
    r = p % g
    payload = {"g": g, "p_mod_g": r, "w": w, "j": j, "j_modulus": modulus}
    return ZInvariantRecord(n, k, "odd", payload, (r, j))


def even_invariants(x: ZExtElement) -> ZInvariantRecord:
    p, c, n, k = x
    if n == 0 or n % 2:
        raise WrongVariant(f"even invariants need nonzero even n, got {n}")
    m = 2 * abs(n)
    g = gcd(m, k)
    w = canonical_w(k, m)
    modulus = m * gcd(g, 2 * p)
    j1 = -p * p * w - g * (2 * c + p)
    j2 = j1 - w * n * (2 * p + n)
    i1, i2 = p % g, (p + n) % g
    j1, j2 = j1 % modulus, j2 % modulus
    payload = {"g": g, "I": sorted({i1, i2}), "I1": i1, "I2": i2,
               "w": w, "J": sorted({j1, j2}), "J1": j1, "J2": j2, "J_modulus": modulus}
    return ZInvariantRecord(n, k, "even", payload,
                            (frozenset((i1, i2)), frozenset((j1, j2))))


def degenerate_invariants(x: ZExtElement) -> ZInvariantRecord:
    """n = 0: conjugation is p -> p - k n', c -> c - k n'(n'-1)/2 + n' p."""
    p, c, n, k = x
    if n != 0:
        raise WrongVariant("degenerate invariants need n = 0")
    if k:
        r = p % abs(k)
        t = (p - r) // k
        c0 = c - kc(k, t) + t * p
        payload = {"p_mod_k": r, "c_normal": c0}
        key = (r, c0)
    else:
        c0 = c % abs(p) if p else c
        payload = {"p": p, "c_mod_p": c0}
        key = (p, c0)
    return ZInvariantRecord(0, k, "degenerate", payload, key)


def z_invariants(x: ZExtElement) -> ZInvariantRecord:
    if x.n == 0:
        return degenerate_invariants(x)
    if x.n % 2:
        return odd_invariants(x)
    return even_invariants(x)


# ---------------------------------------------------------------------------
# conjugacy decision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZConjugacy:
    conjugate: bool
    branch: str
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.conjugate


def _degenerate_conjugate(x1: ZExtElement, x2: ZExtElement) -> ZConjugacy:
    p1, c1, _, k = x1
    p2, c2 = x2.p, x2.c
    if k:
        if (p1 - p2) % k:
            return ZConjugacy(False, "degenerate", {"reason": "k does not divide p1 - p2"})
        t = (p1 - p2) // k
        ok = c1 - c2 == kc(k, t) - t * p1
        return ZConjugacy(ok, "degenerate", {"n_prime": t})
    if p1 != p2:
        return ZConjugacy(False, "degenerate", {"reason": "p differs"})
    diff = c2 - c1
    if p1 == 0:
        return ZConjugacy(diff == 0, "degenerate", {"n_prime": 0})
    if diff % p1:
        return ZConjugacy(False, "degenerate", {"reason": "p does not divide c1 - c2"})
    return ZConjugacy(True, "degenerate", {"n_prime": diff // p1})


def delta_equivalent(x1: ZExtElement, x2: ZExtElement, delta: int):
    """Solve the doubled system for even n with k' of parity ``delta``."""
    p1, c1, n, k = x1
    p2, c2 = x2.p, x2.c
    shift = n * delta
    sys = CongruenceSystem(a=k, b=p1 - p2 + shift, c=-(p1 + p2 + shift),
                           d=(2 * c1 + p1) - (2 * c2 + p2), n=2 * abs(n))
    return lemma5_solve(sys)


def is_conjugate_z(x1: ZExtElement, x2: ZExtElement) -> ZConjugacy:
    x1, x2 = ZExtElement(*x1), ZExtElement(*x2)
    if x1.n != x2.n or x1.k != x2.k:
        return ZConjugacy(False, "mismatch", {"reason": "n or k differ"})
    n = x1.n
    if n == 0:
        return _degenerate_conjugate(x1, x2)
    p1, c1, _, k = x1
    p2, c2 = x2.p, x2.c
    if n % 2:
        sys = CongruenceSystem(a=k, b=p1 - p2, c=-(p1 + p2),
                               d=(2 * c1 + p1) - (2 * c2 + p2), n=abs(n))
        out = lemma5_solve(sys)
        return ZConjugacy(out.solvable, "odd", {"n_prime": out.witness})
    for delta in (0, 1):
        out = delta_equivalent(x1, x2, delta)
        if out.solvable:
            return ZConjugacy(True, "even", {"delta": delta, "n_prime": out.witness})
    return ZConjugacy(False, "even", {})
