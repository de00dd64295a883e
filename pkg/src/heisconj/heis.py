"""Discrete Heisenberg groups, graded automorphisms and the extended group.

A Heisenberg group is given by abelian groups N, P, C and a bilinear
pairing N x P -> C; elements are triples (n, p, c) multiplied like upper
unitriangular matrices.  A graded automorphism is a pair (k_p, k_c) with
k_p : N -> P a homomorphism and k_c : N -> C satisfying

    k_c(n1 + n2) = k_c(n1) + k_c(n2) + (n1, k_p(n2)).

The extended group is ((P + C) x| N) x| K for a group K of such
automorphisms; its elements are quadruples (p, c, n, k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .abelian import AbElement, AbHom, CyclicProduct, DimensionError


class NoGradedExtension(ValueError):
    """k_p admits no k_c satisfying the cocycle identity."""


class InvalidChoice(ValueError):
    """A user-supplied diagonal value does not solve its equation."""


class KGroupError(ValueError):
    """A generator image is incompatible with the order of its K factor."""


def _solve_scalar_multiple(l: int, target: Sequence[int], C: CyclicProduct):
    """Least solution x in C of ``l * x == target`` (coordinatewise), or None."""
    out = []
    for t, m in zip(target, C.moduli):
        if m == 0:
            if l == 0:
                if t:
                    return None
                out.append(0)
            elif t % l:
                return None
            else:
                out.append(t // l)
        else:
            found = next((x for x in range(m) if (l * x - t) % m == 0), None)
            if found is None:
                return None
            out.append(found)
    return tuple(out)


@dataclass(frozen=True)
class HeisenbergData:
    N: CyclicProduct
    P: CyclicProduct
    C: CyclicProduct
    pairing: tuple  # pairing[i][j] = C-coords of (e_i, f_j)

    def __post_init__(self):
        pr = tuple(tuple(self.C.reduce(v) for v in row) for row in self.pairing)
        if len(pr) != self.N.rank or any(len(row) != self.P.rank for row in pr):
            raise DimensionError("pairing must be an N-rank x P-rank array of C-vectors")
        object.__setattr__(self, "pairing", pr)
        for i, li in enumerate(self.N.moduli):
            for j, lj in enumerate(self.P.moduli):
                v = pr[i][j]
                if (li and any(self.C.reduce([li * a for a in v]))) or \
                        (lj and any(self.C.reduce([lj * a for a in v]))):
                    raise ValueError(f"pairing not well-defined at ({i},{j})")

    @classmethod
    def integer(cls) -> "HeisenbergData":
        Z = CyclicProduct((0,))
        return cls(Z, Z, Z, (((1,),),))

    @property
    def is_finite(self) -> bool:
        return self.N.is_finite and self.P.is_finite and self.C.is_finite

    def pair_coords(self, n: Sequence[int], p: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * self.C.rank
        for i, ni in enumerate(n):
            if not ni:
                continue
            row = self.pairing[i]
            for j, pj in enumerate(p):
                if pj:
                    for t, v in enumerate(row[j]):
                        acc[t] += ni * pj * v
        return self.C.reduce(acc)

    def pairing_hom(self, n: AbElement) -> AbHom:
        """The homomorphism P -> C, p -> (n, p), for fixed n."""
        images = [self.pair_coords(n.coords, self.P.gen(j).coords) for j in range(self.P.rank)]
        return AbHom.from_images(self.P, self.C, images)

    def identity(self) -> "HeisElement":
        return HeisElement(self, self.N.zero(), self.P.zero(), self.C.zero())

    def element(self, n, p, c) -> "HeisElement":
        return HeisElement(self, self.N.element(n), self.P.element(p), self.C.element(c))


def pairing_apply(H: HeisenbergData, n: AbElement, p: AbElement) -> AbElement:
    if n.parent != H.N or p.parent != H.P:
        raise DimensionError("pairing arguments are not in N and P")
    return AbElement(H.C, H.pair_coords(n.coords, p.coords))


@dataclass(frozen=True)
class HeisElement:
    group: HeisenbergData
    n: AbElement
    p: AbElement
    c: AbElement

    def __mul__(self, other):
        return heis_mul(self, other)


def heis_mul(x: HeisElement, y: HeisElement) -> HeisElement:
    if x.group != y.group:
        raise DimensionError("elements of different Heisenberg groups")
    H = x.group
    return HeisElement(H, x.n + y.n, x.p + y.p, x.c + y.c + pairing_apply(H, x.n, y.p))


def heis_inv(x: HeisElement) -> HeisElement:
    H = x.group
    return HeisElement(H, -x.n, -x.p, -x.c + pairing_apply(H, x.n, x.p))


# ---------------------------------------------------------------------------
# graded automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedAut:
    H: HeisenbergData
    k_p: AbHom
    diag: tuple  # x_i in C, one per N generator (coords)
    hom_part: AbHom

    @cached_property
    def cross(self) -> tuple:
        """cross[i][j] = (e_i, k_p(e_j)) as C-coords."""
        H = self.H
        return tuple(
            tuple(H.pair_coords(H.N.gen(i).coords, self.k_p.column(j))
                  for j in range(H.N.rank))
            for i in range(H.N.rank))

    def kc_coords(self, m: Sequence[int]) -> tuple[int, ...]:
        C = self.H.C
        cross = self.cross
        acc = list(self.hom_part.apply_coords(m))
        s = len(m)
        for i in range(s):
            mi = m[i]
            if not mi:
                continue
            tri = mi * (mi - 1) // 2
            for t in range(C.rank):
                acc[t] += tri * cross[i][i][t] + mi * self.diag[i][t]
            for j in range(i + 1, s):
                mj = m[j]
                if mj:
                    for t in range(C.rank):
                        acc[t] += mi * mj * cross[i][j][t]
        return C.reduce(acc)

    def __add__(self, other: "GradedAut") -> "GradedAut":
        return aut_compose(self, other)

    def __rmul__(self, m: int) -> "GradedAut":
        C = self.H.C
        return GradedAut(self.H, m * self.k_p,
                         tuple(C.reduce([m * a for a in x]) for x in self.diag),
                         m * self.hom_part)

    def phi_coords(self, m: Sequence[int]) -> tuple[int, ...]:
        """2 k_c(n) - (n, k_p(n)); additive in n."""
        C = self.H.C
        kc = self.kc_coords(m)
        return C.reduce([2 * a - b for a, b in
                         zip(kc, self.H.pair_coords(m, self.k_p.apply_coords(m)))])

    def is_trivial(self) -> bool:
        """True when k_p = 0 and k_c vanishes identically."""
        if not self.k_p.is_zero():
            return False
        N = self.H.N
        return all(not any(self.kc_coords(N.gen(i).coords)) for i in range(N.rank))


def build_graded_aut(H: HeisenbergData, k_p: AbHom, x_choices=None,
                     hom_part: AbHom | None = None) -> GradedAut:
    """Graded automorphism with the given k_p.

    Checks that the cross terms (e_i, k_p(e_j)) are symmetric and that every
    ``l_i x_i + l_i(l_i - 1)/2 (e_i, k_p(e_i)) = 0`` is solvable in C.  When
    ``x_choices`` is omitted the least solution is taken (0 for Z factors).
    """
    if k_p.source != H.N or k_p.target != H.P:
        raise DimensionError("k_p must map N to P")
    if hom_part is None:
        hom_part = AbHom.zero(H.N, H.C)
    if hom_part.source != H.N or hom_part.target != H.C:
        raise DimensionError("hom part must map N to C")
    aut = GradedAut(H, k_p, tuple((0,) * H.C.rank for _ in H.N.moduli), hom_part)
    cross = aut.cross
    s = H.N.rank
    for i in range(s):
        for j in range(i + 1, s):
            if cross[i][j] != cross[j][i]:
                raise NoGradedExtension(
                    f"no-graded-extension: cross terms not symmetric at ({i},{j})")
    diag = []
    for i, l in enumerate(H.N.moduli):
        rhs = H.C.reduce([-(l * (l - 1) // 2) * a for a in cross[i][i]])
        if l == 0:
            least = (0,) * H.C.rank
        else:
            least = _solve_scalar_multiple(l, rhs, H.C)
            if least is None:
                raise NoGradedExtension(
                    f"no-graded-extension: l(l-1)/2 (e_{i}, k_p(e_{i})) is not in {l}C")
        if x_choices is None or x_choices[i] is None:
            diag.append(least)
            continue
        x = H.C.reduce(x_choices[i])
        if l and any(H.C.reduce([l * a - b for a, b in zip(x, rhs)])):
            raise InvalidChoice(f"x_{i} = {x} does not solve l x + l(l-1)/2 (e_i, k_p(e_i)) = 0")
        diag.append(x)
    return GradedAut(H, k_p, tuple(diag), hom_part)


def kc_eval(k: GradedAut, n: AbElement) -> AbElement:
    if n.parent != k.H.N:
        raise DimensionError("argument is not in N")
    return AbElement(k.H.C, k.kc_coords(n.coords))


def aut_apply(k: GradedAut, x: HeisElement) -> HeisElement:
    H = x.group
    return HeisElement(H, x.n, x.p + k.k_p(x.n), x.c + kc_eval(k, x.n))


def aut_compose(k1: GradedAut, k2: GradedAut) -> GradedAut:
    if k1.H != k2.H:
        raise DimensionError("automorphisms of different groups")
    C = k1.H.C
    return GradedAut(k1.H, k1.k_p + k2.k_p,
                     tuple(C.reduce([a + b for a, b in zip(x, y)])
                           for x, y in zip(k1.diag, k2.diag)),
                     k1.hom_part + k2.hom_part)


def trivial_aut(H: HeisenbergData) -> GradedAut:
    return GradedAut(H, AbHom.zero(H.N, H.P), tuple((0,) * H.C.rank for _ in H.N.moduli),
                     AbHom.zero(H.N, H.C))


@dataclass(frozen=True)
class KGroup:
    H: HeisenbergData
    K: CyclicProduct
    generator_images: tuple

    def __post_init__(self):
        gens = tuple(self.generator_images)
        object.__setattr__(self, "generator_images", gens)
        if len(gens) != self.K.rank:
            raise DimensionError("need one automorphism per K generator")
        for j, (l, g) in enumerate(zip(self.K.moduli, gens)):
            if g.H != self.H:
                raise DimensionError("generator acts on a different group")
            if l and not (l * g).is_trivial():
                raise KGroupError(f"K generator order violated at generator {j} (order {l})")

    def aut(self, k: AbElement | Sequence[int]) -> GradedAut:
        coords = k.coords if isinstance(k, AbElement) else self.K.reduce(k)
        out = trivial_aut(self.H)
        for kj, g in zip(coords, self.generator_images):
            if kj:
                out = aut_compose(out, kj * g)
        return out


@dataclass(frozen=True)
class ExtElement:
    p: AbElement
    c: AbElement
    n: AbElement
    k: AbElement

    def as_tuple(self):
        return (self.p.coords, self.c.coords, self.n.coords, self.k.coords)


class ExtGroup:
    """The extended group ((P + C) x| N) x| K."""

    def __init__(self, H: HeisenbergData, kgroup: KGroup):
        if kgroup.H != H:
            raise DimensionError("K acts on a different Heisenberg group")
        self.H = H
        self.kgroup = kgroup
        self._aut_cache: dict = {}

    @classmethod
    def integer(cls) -> "ExtGroup":
        H = HeisenbergData.integer()
        Z = CyclicProduct((0,))
        gen = build_graded_aut(H, AbHom(Z, Z, [[1]]))
        return cls(H, KGroup(H, Z, (gen,)))

    @property
    def N(self):
        return self.H.N

    @property
    def P(self):
        return self.H.P

    @property
    def C(self):
        return self.H.C

    @property
    def K(self):
        return self.kgroup.K

    @property
    def is_finite(self) -> bool:
        return self.H.is_finite and self.K.is_finite

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        return self.P.order * self.C.order * self.N.order * self.K.order

    def aut(self, k) -> GradedAut:
        coords = k.coords if isinstance(k, AbElement) else tuple(k)
        got = self._aut_cache.get(coords)
        if got is None:
            got = self.kgroup.aut(coords)
            if self.K.is_finite:
                self._aut_cache[coords] = got
        return got

    def element(self, p, c, n, k) -> ExtElement:
        return ExtElement(self.P.element(p), self.C.element(c),
                          self.N.element(n), self.K.element(k))

    def identity(self) -> ExtElement:
        return ExtElement(self.P.zero(), self.C.zero(), self.N.zero(), self.K.zero())

    def elements(self):
        for p in self.P.elements():
            for c in self.C.elements():
                for n in self.N.elements():
                    for k in self.K.elements():
                        yield ExtElement(p, c, n, k)

    def generators(self) -> list[ExtElement]:
        e = self.identity()
        out = []
        for i in range(self.P.rank):
            out.append(ExtElement(self.P.gen(i), e.c, e.n, e.k))
        for i in range(self.C.rank):
            out.append(ExtElement(e.p, self.C.gen(i), e.n, e.k))
        for i in range(self.N.rank):
            out.append(ExtElement(e.p, e.c, self.N.gen(i), e.k))
        for i in range(self.K.rank):
            out.append(ExtElement(e.p, e.c, e.n, self.K.gen(i)))
        return out

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return ext_mul(self, x, y)

    def mul_coords(self, x: tuple, y: tuple) -> tuple:
        """:func:`ext_mul` on ``(p, c, n, k)`` coordinate tuples, for bulk loops."""
        xp, xc, xn, xk = x
        yp, yc, yn, yk = y
        a = self.aut(xk)
        P, C = self.P, self.C
        shifted = P.reduce([u + v for u, v in zip(yp, a.k_p.apply_coords(yn))])
        p = P.reduce([u + v for u, v in zip(xp, shifted)])
        c = C.reduce([s + t + u + v for s, t, u, v in zip(
            yc, xc, a.kc_coords(yn), self.H.pair_coords(xn, shifted))])
        return (p, c, self.N.reduce([u + v for u, v in zip(xn, yn)]),
                self.K.reduce([u + v for u, v in zip(xk, yk)]))

    def inv(self, x: ExtElement) -> ExtElement:
        return ext_inv(self, x)

    def conjugate(self, g: ExtElement, x: ExtElement) -> ExtElement:
        return ext_conjugate(self, g, x)


def _check_member(G: ExtGroup, x: ExtElement):
    if (x.p.parent, x.c.parent, x.n.parent, x.k.parent) != (G.P, G.C, G.N, G.K):
        raise DimensionError("element does not belong to this extended group")


def ext_mul(G: ExtGroup, x: ExtElement, y: ExtElement) -> ExtElement:
    """``x * y``; the left factor's automorphism acts on the right factor."""
    _check_member(G, x)
    _check_member(G, y)
    H = G.H
    a = G.aut(x.k)
    shifted = y.p + a.k_p(y.n)
    p = x.p + shifted
    c = y.c + x.c + kc_eval(a, y.n) + pairing_apply(H, x.n, shifted)
    return ExtElement(p, c, y.n + x.n, y.k + x.k)


def ext_inv(G: ExtGroup, x: ExtElement) -> ExtElement:
    _check_member(G, x)
    a = G.aut(x.k)
    mn = -x.n
    p = -x.p - a.k_p(mn)
    c = -x.c - kc_eval(a, mn) + pairing_apply(G.H, x.n, x.p)
    return ExtElement(p, c, mn, -x.k)


def ext_conjugate(G: ExtGroup, g: ExtElement, x: ExtElement) -> ExtElement:
    """``g * x * g^-1``."""
    return ext_mul(G, ext_mul(G, g, x), ext_inv(G, g))


def semidirect_mul(G: ExtGroup, x: ExtElement, y: ExtElement) -> ExtElement:
    """Product computed as (h, k)(h', k') = (h * k(h'), k + k') in the
    Heisenberg group; an independent route to :func:`ext_mul`."""
    H = G.H
    h1 = HeisElement(H, x.n, x.p, x.c)
    h2 = aut_apply(G.aut(x.k), HeisElement(H, y.n, y.p, y.c))
    h = heis_mul(h1, h2)
    return ExtElement(h.p, h.c, h.n, x.k + y.k)
