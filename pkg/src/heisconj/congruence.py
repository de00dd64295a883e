"""Extended gcd, linear Diophantine equations and the two-congruence test.

The central routine decides whether

    a x = b (mod n)
    c x = d (mod n)

has an integer solution, using the gcd criterion

    (a, n) | b   and   d (a, n) - b c w = 0  (mod n (a, c, n))

where ``w`` inverts ``a / (a, n)`` modulo ``n / (a, n)``.  Every positive
verdict is backed by an explicit witness that is checked before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; always a bug."""


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``a*u + b*v == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_u, old_v


@dataclass(frozen=True)
class DiophantineSolution:
    x0: int
    y0: int
    step_x: int
    step_y: int
    degenerate: bool = False

    def at(self, t: int) -> tuple[int, int]:
        return self.x0 + t * self.step_x, self.y0 + t * self.step_y


def solve_linear_diophantine(alpha: int, beta: int, gamma: int) -> DiophantineSolution | None:
    """Solve ``alpha*x + beta*y == gamma`` over the integers.

    All solutions are ``(x0 + t*step_x, y0 + t*step_y)``.  For
    ``alpha == beta == 0`` and ``gamma == 0`` every pair solves and the
    result is flagged ``degenerate``.
    """
    g, u, v = ext_gcd(alpha, beta)
    if g == 0:
        if gamma:
            return None
        return DiophantineSolution(0, 0, 0, 0, degenerate=True)
    if gamma % g:
        return None
    q = gamma // g
    return DiophantineSolution(u * q, v * q, beta // g, -(alpha // g))


def canonical_w(a: int, n: int) -> int:
    """Least ``w >= 0`` with ``(a/(a,n)) * w == 1 (mod n/(a,n))``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    g = gcd(a, n)
    m = n // g
    if m == 1:
        return 0
    return pow((a // g) % m, -1, m)


@dataclass(frozen=True)
class CongruenceSystem:
    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be >= 1")

    def satisfied_by(self, x: int) -> bool:
        return (self.a * x - self.b) % self.n == 0 and (self.c * x - self.d) % self.n == 0


@dataclass(frozen=True)
class SolveOutcome:
    solvable: bool
    witness: int | None
    g1: int
    w: int
    residual: int


def lemma5_solve(sys: CongruenceSystem) -> SolveOutcome:
    a, b, c, d, n = sys.a, sys.b, sys.c, sys.d, sys.n
    g1 = gcd(a, n)
    w = canonical_w(a, n)
    big = n * gcd(gcd(a, c), n)
    residual = (d * g1 - b * c * w) % big
    solvable = b % g1 == 0 and residual == 0
    if not solvable:
        return SolveOutcome(False, None, g1, w, residual)

    # x = w b' + i n/(a,n); substitute into the second congruence
    n1 = n // g1
    x0 = w * (b // g1)
    coeff = c * n1
    h, u, _ = ext_gcd(coeff, n)
    rhs = d - c * x0
    if rhs % h:
        raise InvariantViolation(f"criterion accepted but no witness for {sys}")
    i = (rhs // h) * u
    x = (x0 + i * n1) % n
    if not sys.satisfied_by(x):
        raise InvariantViolation(f"witness {x} fails {sys}")
    return SolveOutcome(True, x, g1, w, residual)


def _inverse_table(limit: int) -> np.ndarray:
    """inv[q, u] = u^{-1} mod q, or 0 when not invertible (or q <= 1)."""
    table = np.zeros((limit + 1, limit + 1), dtype=np.int64)
    for q in range(2, limit + 1):
        for u in range(q):
            if gcd(u, q) == 1:
                table[q, u] = pow(u, -1, q)
    return table


def lemma5_batch(a: int, b, c, d, n: int):
    """Vectorized :func:`lemma5_solve` for one ``(a, n)`` over arrays b, c, d.

    Returns ``(solvable, witness)`` arrays; the witness is ``-1`` where the
    system is unsolvable.  Witnesses are verified against both congruences
    and any disagreement with the criterion raises :class:`InvariantViolation`.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    b, c, d = (np.asarray(v, dtype=np.int64) for v in np.broadcast_arrays(b, c, d))
    g1 = gcd(a, n)
    w = canonical_w(a, n)
    n1 = n // g1
    big = n * np.gcd(np.gcd(a, c), n)
    residual = np.mod(d * g1 - b * c * w, big)
    solvable = (np.mod(b, g1) == 0) & (residual == 0)

    # i solves c n1 i = d - c x0 (mod n); gcd(c n1, n) = n1 (c, g1)
    x0 = w * (b // g1)
    cg = np.gcd(c, g1)
    h = n1 * cg
    rhs = d - c * x0
    divisible = np.mod(rhs, h) == 0
    q = g1 // cg
    inv = _inverse_table(max(g1, 1))
    unit = np.mod(c // cg, np.maximum(q, 1))
    i = np.mod((rhs // h) * inv[q, unit], np.maximum(q, 1))
    x = np.mod(x0 + i * n1, n)
    ok = (np.mod(a * x - b, n) == 0) & (np.mod(c * x - d, n) == 0)
    if np.any(solvable & ~(divisible & ok)):
        raise InvariantViolation(f"criterion accepted a system without witness (a={a}, n={n})")
    return solvable, np.where(solvable, x, -1)
