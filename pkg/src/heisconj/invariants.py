"""Complete conjugacy invariants for finite extended Heisenberg groups.

For fixed (n, k) two elements x1 = (p1, c1, n, k), x2 = (p2, c2, n, k) are
conjugate iff some (n', k') in N + K satisfies

    p1 - p2 = k_p(n') - k'_p(n)                               (Lambda)
    c1 - c2 = k_c(n') - k'_c(n) - (n', p1)     mod Im n       (B)

The class of x is pinned down by n, k, R = p mod Im Lambda and
S = the coset of c0 - c - B(x0, z) modulo V = B(x0, Ker Lambda) + Im n,
where x0 is a fixed basepoint with the same R and Lambda(z) = p0 - p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .abelian import (AbElement, AbHom, CyclicProduct, Subgroup, hom_image,
                      hom_kernel, hom_preimage)
from .congruence import InvariantViolation
from .heis import ExtElement, ExtGroup


class ContextMismatch(ValueError):
    """The element does not carry the context's fixed n and k."""


class OddCaseInapplicable(ValueError):
    """A hypothesis of the odd-order simplification fails."""


@dataclass(frozen=True)
class InvariantRecord:
    n: AbElement
    k: AbElement
    R: AbElement
    S: AbElement
    V: Subgroup = field(compare=False, repr=False)
    basepoint: ExtElement = field(compare=False, repr=False)

    @property
    def label(self):
        return (self.n.coords, self.k.coords, self.R.coords, self.S.coords)

    def to_json(self) -> dict:
        return {"n": list(self.n.coords), "k": list(self.k.coords),
                "R": list(self.R.coords), "S": list(self.S.coords),
                "basepoint": {"p": list(self.basepoint.p.coords),
                              "c": list(self.basepoint.c.coords)}}


class ConjContext:
    """Everything that depends only on the fixed pair (n, k)."""

    def __init__(self, G: ExtGroup, n: AbElement, k: AbElement):
        self.G = G
        self.n = G.N.element(n.coords if isinstance(n, AbElement) else n)
        self.k = G.K.element(k.coords if isinstance(k, AbElement) else k)
        self.aut = G.aut(self.k)
        self.im_n = hom_image(G.H.pairing_hom(self.n))
        self.NK = CyclicProduct(G.N.moduli + G.K.moduli)
        self.lam = lambda_build(self)
        self.im_lam = hom_image(self.lam)
        self.ker_lam = hom_kernel(self.lam)

    @cached_property
    def _ker_elems(self) -> list[AbElement]:
        """Ker Lambda, or enough of it to see every value of B modulo Im n.

        On an infinite group B restricted to Ker Lambda is a quadratic
        polynomial in kernel coordinates, so with m = |C / Im n| each
        coordinate only matters modulo 2m.
        """
        if self.NK.is_finite:
            return self.ker_lam.elements()
        m = self.im_n.index()
        if m is None:
            raise ValueError("V needs C / Im n to be finite")
        gens = self.ker_lam.generators
        out = set()
        for ts in itertools.product(range(2 * m), repeat=len(gens)):
            raw = [sum(t * g.coords[i] for t, g in zip(ts, gens)) for i in range(self.NK.rank)]
            out.add(self.NK.reduce(raw))
        return [self.NK.element(z) for z in sorted(out)]

    def split(self, z: AbElement):
        s = self.G.N.rank
        return self.G.N.element(z.coords[:s]), self.G.K.element(z.coords[s:])

    def check(self, x: ExtElement):
        if x.n != self.n or x.k != self.k:
            raise ContextMismatch("element does not have the context's n and k")

    @lru_cache(maxsize=None)
    def _b12(self, p1: tuple, z: tuple) -> tuple:
        G = self.G
        s = G.N.rank
        n1, k1 = z[:s], z[s:]
        kc_n1 = self.aut.kc_coords(n1)
        kc_k1 = G.aut(G.K.reduce(k1)).kc_coords(self.n.coords)
        pair = G.H.pair_coords(n1, p1)
        raw = [a - b - c for a, b, c in zip(kc_n1, kc_k1, pair)]
        return self.im_n.canonical_coords(raw)

    @lru_cache(maxsize=None)
    def _v_group(self, r: tuple) -> Subgroup:
        values = {self._b12(r, z.coords) for z in self._ker_elems}
        C = self.G.C
        # subgroup check, in C / Im n
        zero = self.im_n.canonical_coords((0,) * C.rank)
        if zero not in values:
            raise InvariantViolation("0 is not in B(Ker Lambda)")
        for a in values:
            if self.im_n.canonical_coords([-t for t in a]) not in values:
                raise InvariantViolation("B(Ker Lambda) not closed under negation")
            for b in values:
                if self.im_n.canonical_coords([s + t for s, t in zip(a, b)]) not in values:
                    raise InvariantViolation("B(Ker Lambda) not closed under addition")
        gens = [C.element(v) for v in sorted(values)] + list(self.im_n.generators)
        return Subgroup.generated_by(C, gens)

    @lru_cache(maxsize=None)
    def _preimage(self, target: tuple) -> tuple | None:
        z = hom_preimage(self.lam, self.G.P.element(target))
        return None if z is None else z.coords

    def preimage(self, target: AbElement) -> AbElement | None:
        z = self._preimage(target.coords)
        return None if z is None else self.NK.element(z)

    def preimage_set(self, target: AbElement) -> list[AbElement]:
        z0 = self.preimage(target)
        if z0 is None:
            return []
        return [z0 + z for z in self._ker_elems]

    def basepoint(self, r: AbElement) -> ExtElement:
        return ExtElement(r, self.G.C.zero(), self.n, self.k)

    def b12(self, x1: ExtElement, nk: AbElement) -> AbElement:
        return b12_eval(self, x1, nk)

    def v12_set(self, x1: ExtElement, x2: ExtElement) -> frozenset:
        """{c1 - c2 - B(x1, z) : Lambda(z) = p1 - p2} as canonical C/Im n coords."""
        diff = x1.p - x2.p
        out = set()
        for z in self.preimage_set(diff):
            b = self._b12(x1.p.coords, z.coords)
            raw = [a - s - t for a, s, t in zip(x1.c.coords, x2.c.coords, b)]
            out.add(self.im_n.canonical_coords(raw))
        return frozenset(out)

    def record(self, x: ExtElement) -> InvariantRecord:
        r = invariant_R(self, x)
        V = v_group(self, x)
        x0 = self.basepoint(r)
        return InvariantRecord(self.n, self.k, r, invariant_S(self, x0, x), V, x0)


def lambda_build(ctx: ConjContext) -> AbHom:
    G = ctx.G
    images = [ctx.aut.k_p.column(j) for j in range(G.N.rank)]
    for g in ctx.G.kgroup.generator_images:
        images.append((-g.k_p(ctx.n)).coords)
    return AbHom.from_images(ctx.NK, G.P, images)


def invariant_R(ctx: ConjContext, x: ExtElement) -> AbElement:
    ctx.check(x)
    return ctx.im_lam.canonical(x.p)


def b12_eval(ctx: ConjContext, x1: ExtElement, nk: AbElement) -> AbElement:
    ctx.check(x1)
    return AbElement(ctx.G.C, ctx._b12(x1.p.coords, nk.coords))


def v_group(ctx: ConjContext, x: ExtElement) -> Subgroup:
    """V = B(x, Ker Lambda) + Im n as a subgroup of C (so cosets are C/V)."""
    ctx.check(x)
    return ctx._v_group(invariant_R(ctx, x).coords)


def invariant_S(ctx: ConjContext, x0: ExtElement, x: ExtElement) -> AbElement:
    ctx.check(x0)
    ctx.check(x)
    r = invariant_R(ctx, x)
    if invariant_R(ctx, x0) != r:
        raise ContextMismatch("basepoint and element have different R")
    z = ctx.preimage(x0.p - x.p)
    if z is None:
        raise InvariantViolation("no preimage although R values agree")
    b = ctx._b12(x0.p.coords, z.coords)
    V = ctx._v_group(r.coords)
    raw = [a - s - t for a, s, t in zip(x0.c.coords, x.c.coords, b)]
    return AbElement(ctx.G.C, V.canonical_coords(raw))


class InvariantEngine:
    """Caches one :class:`ConjContext` per (n, k) of a finite group."""

    def __init__(self, G: ExtGroup):
        self.G = G
        self._contexts: dict = {}

    def context(self, n: AbElement, k: AbElement) -> ConjContext:
        key = (n.coords, k.coords)
        ctx = self._contexts.get(key)
        if ctx is None:
            ctx = self._contexts[key] = ConjContext(self.G, n, k)
        return ctx

    def record(self, x: ExtElement) -> InvariantRecord:
        return self.context(x.n, x.k).record(x)

    def label(self, x: ExtElement):
        return self.record(x).label


def are_conjugate_finite(G: ExtGroup, x1: ExtElement, x2: ExtElement,
                         engine: InvariantEngine | None = None) -> bool:
    if x1.n != x2.n or x1.k != x2.k:
        return False
    engine = engine or InvariantEngine(G)
    return engine.record(x1) == engine.record(x2)


# ---------------------------------------------------------------------------
# odd order, phi = 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OddCaseRecord:
    path: str  # "surjective" or "general"
    n: tuple
    k: tuple
    R: tuple
    T: tuple  # 2c + (k_p^-1(p), p) mod Im n, or the general S

    @property
    def label(self):
        return (self.path, self.n, self.k, self.R, self.T)

    def to_json(self):
        return {"path": self.path, "n": list(self.n), "k": list(self.k),
                "R": list(self.R), "T": list(self.T)}


def odd_case_hypotheses(ctx: ConjContext) -> None:
    """Raise :class:`OddCaseInapplicable` naming the first failing hypothesis."""
    idx = ctx.im_n.index()
    if idx is None:
        raise OddCaseInapplicable("odd-case-inapplicable: C/Im n is infinite")
    if idx % 2 == 0:
        raise OddCaseInapplicable(f"odd-case-inapplicable: |C/Im n| = {idx} is even")
    N = ctx.G.N
    for j, g in enumerate(ctx.G.kgroup.generator_images):
        for i in range(N.rank):
            if any(g.phi_coords(N.gen(i).coords)):
                raise OddCaseInapplicable(
                    f"odd-case-inapplicable: phi does not vanish for K generator {j}")


def tilde_kp_surjective(ctx: ConjContext) -> bool:
    """k_p : N -> P / K(n) is onto, i.e. k_p(N) + K(n) = P."""
    return ctx.im_lam.index() == 1


def k_of_n(ctx: ConjContext) -> Subgroup:
    """K(n) = {k'_p(n) : k' in K}."""
    G = ctx.G
    return Subgroup.generated_by(G.P, [g.k_p(ctx.n) for g in G.kgroup.generator_images])


def tilde_kp_preimages(ctx: ConjContext, p: AbElement) -> list[AbElement]:
    """All n'' in N with k_p(n'') = p mod K(n)."""
    return sorted({ctx.split(z)[0] for z in ctx.preimage_set(p)}, key=lambda e: e.coords)


def odd_case_invariants(ctx: ConjContext, x: ExtElement) -> OddCaseRecord:
    ctx.check(x)
    odd_case_hypotheses(ctx)
    r = invariant_R(ctx, x)
    if not tilde_kp_surjective(ctx):
        rec = ctx.record(x)
        return OddCaseRecord("general", x.n.coords, x.k.coords, r.coords, rec.S.coords)
    z = ctx.preimage(x.p)
    n2, _ = ctx.split(z)
    G = ctx.G
    pair = G.H.pair_coords(n2.coords, x.p.coords)
    raw = [2 * a + b for a, b in zip(x.c.coords, pair)]
    return OddCaseRecord("surjective", x.n.coords, x.k.coords, r.coords,
                         ctx.im_n.canonical_coords(raw))
