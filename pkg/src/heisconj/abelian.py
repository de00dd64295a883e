"""Finitely generated abelian groups presented as products of cyclic factors.

A factor with modulus ``0`` is a copy of Z; a factor with modulus ``l >= 1``
is Z/lZ.  Congruence "mod 0" means equality, so the same code handles the
finite and the infinite models.

Subgroups are stored as a row-style Hermite basis of their preimage lattice
in Z^s (generators plus the relation vectors ``l_i e_i``).  Membership and
canonical coset representatives are both obtained by reducing a coordinate
vector against that basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Sequence


class DimensionError(ValueError):
    """Raised when coordinate vectors or parents do not line up."""


class UnsupportedEnumeration(ValueError):
    """Raised when asked to enumerate an infinite group."""


def _mod(x: int, m: int) -> int:
    return x % m if m else x


# ---------------------------------------------------------------------------
# integer lattice helpers
# ---------------------------------------------------------------------------

def echelon(rows: Sequence[Sequence[int]], pivot_cols: int | None = None):
    """Row Hermite normal form of an integer matrix.

    Only the first ``pivot_cols`` columns are used for pivoting; trailing
    columns are carried along (this is how transformation matrices are
    tracked).  Returns ``(basis, pivots, zero_rows)`` where ``basis`` are the
    nonzero pivot rows sorted by pivot column, with positive pivots and the
    entries above each pivot reduced into ``[0, pivot)``, and ``zero_rows``
    are the rows whose pivot part vanished.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], [], []
    width = len(rows[0])
    if pivot_cols is None:
        pivot_cols = width
    basis: list[list[int]] = []
    pivots: list[int] = []
    active = rows
    for col in range(pivot_cols):
        nz = [r for r in active if r[col]]
        rest = [r for r in active if not r[col]]
        if not nz:
            continue
        # Euclid on the column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            head = nz[0]
            nxt = [head]
            for r in nz[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col]:
                    nxt.append(r)
                else:
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for b in basis:
            q = b[col] // piv[col]
            if q:
                b[:] = [a - q * c for a, c in zip(b, piv)]
        basis.append(piv)
        pivots.append(col)
        active = rest
    return basis, pivots, active


def reduce_against(basis: Sequence[Sequence[int]], pivots: Sequence[int],
                   vec: Sequence[int]) -> list[int]:
    """Reduce ``vec`` modulo the lattice spanned by an echelon ``basis``."""
    v = list(vec)
    for row, col in zip(basis, pivots):
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {z in Z^ncols : matrix @ z = 0}."""
    nrows = len(matrix)
    aug = []
    for j in range(ncols):
        col = [matrix[i][j] for i in range(nrows)]
        aug.append(col + [1 if t == j else 0 for t in range(ncols)])
    _, _, zero = echelon(aug, nrows)
    return [r[nrows:] for r in zero]


def integer_solve(matrix: Sequence[Sequence[int]], ncols: int,
                  rhs: Sequence[int]) -> list[int] | None:
    """One integer solution z of ``matrix @ z = rhs`` or ``None``."""
    nrows = len(matrix)
    if nrows == 0:
        return [0] * ncols
    aug = []
    for j in range(ncols):
        col = [matrix[i][j] for i in range(nrows)]
        aug.append(col + [1 if t == j else 0 for t in range(ncols)])
    basis, pivots, _ = echelon(aug, nrows)
    # rhs^T = y^T E with E the pivot part; forward substitution
    residual = list(rhs)
    z = [0] * ncols
    for row, col in zip(basis, pivots):
        if residual[col] % row[col]:
            return None
        y = residual[col] // row[col]
        if y:
            residual = [a - y * b for a, b in zip(residual, row[:nrows])]
            z = [a + y * b for a, b in zip(z, row[nrows:])]
    if any(residual):
        return None
    return z


# ---------------------------------------------------------------------------
# groups, elements, homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicProduct:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 0 for m in self.moduli):
            raise ValueError(f"moduli must be non-negative: {self.moduli}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return all(m >= 1 for m in self.moduli)

    @property
    def order(self) -> int | None:
        return prod(self.moduli) if self.is_finite else None

    def reduce(self, raw: Sequence[int]) -> tuple[int, ...]:
        if len(raw) != len(self.moduli):
            raise DimensionError(f"expected {self.rank} coordinates, got {len(raw)}")
        return tuple(x % m if m else x for x, m in zip(raw, self.moduli))

    def element(self, raw: Sequence[int]) -> "AbElement":
        return AbElement(self, self.reduce(raw))

    def zero(self) -> "AbElement":
        return AbElement(self, (0,) * self.rank)

    def gen(self, i: int) -> "AbElement":
        return self.element([1 if t == i else 0 for t in range(self.rank)])

    def elements(self) -> Iterator["AbElement"]:
        return enumerate_elements(self)

    def relation_vectors(self) -> list[list[int]]:
        return [[m if t == i else 0 for t in range(self.rank)]
                for i, m in enumerate(self.moduli) if m]

    def __mul__(self, other: "CyclicProduct") -> "CyclicProduct":
        return CyclicProduct(self.moduli + other.moduli)

    def __str__(self):
        if not self.moduli:
            return "0"
        return " x ".join("Z" if m == 0 else f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True)
class AbElement:
    parent: CyclicProduct
    coords: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, AbElement) or other.parent != self.parent:
            raise DimensionError("elements live in different groups")

    def __add__(self, other: "AbElement") -> "AbElement":
        self._check(other)
        return self.parent.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "AbElement") -> "AbElement":
        self._check(other)
        return self.parent.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "AbElement":
        return self.parent.element([-a for a in self.coords])

    def __rmul__(self, m: int) -> "AbElement":
        return self.parent.element([m * a for a in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"AbElement{self.coords}"


def ab_reduce(parent: CyclicProduct, raw: Sequence[int]) -> AbElement:
    return parent.element(raw)


def enumerate_elements(g: CyclicProduct) -> Iterator[AbElement]:
    """All elements of a finite group in lexicographic coordinate order."""
    if not g.is_finite:
        raise UnsupportedEnumeration(f"cannot enumerate infinite group {g}")
    for coords in itertools.product(*(range(m) for m in g.moduli)):
        yield AbElement(g, coords)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism given by ``matrix[i][j]`` = i-th target coordinate of the
    image of the j-th source generator."""

    source: CyclicProduct
    target: CyclicProduct
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(a) for a in row) for row in self.matrix)
        if len(mat) != self.target.rank or any(len(r) != self.source.rank for r in mat):
            raise DimensionError(
                f"matrix shape does not match {self.target.rank}x{self.source.rank}")
        # canonical entries so equal maps compare equal
        mat = tuple(tuple(_mod(a, m) for a in row) for row, m in zip(mat, self.target.moduli))
        object.__setattr__(self, "matrix", mat)
        for j, lj in enumerate(self.source.moduli):
            if not lj:
                continue
            for i, mi in enumerate(self.target.moduli):
                if _mod(lj * mat[i][j], mi):
                    raise ValueError(
                        f"homomorphism not well-defined at target {i}, source {j}")

    @classmethod
    def from_images(cls, source, target, images):
        """Build from the list of images of the source generators."""
        images = [list(im) for im in images]
        if len(images) != source.rank:
            raise DimensionError("need one image per source generator")
        mat = [[images[j][i] for j in range(source.rank)] for i in range(target.rank)]
        return cls(source, target, mat)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [[0] * source.rank for _ in range(target.rank)])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def apply_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(
            [sum(a * x for a, x in zip(row, coords)) for row in self.matrix])

    def __call__(self, x: AbElement) -> AbElement:
        return hom_apply(self, x)

    def __add__(self, other: "AbHom") -> "AbHom":
        return AbHom(self.source, self.target,
                     [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self) -> "AbHom":
        return AbHom(self.source, self.target, [[-a for a in r] for r in self.matrix])

    def __rmul__(self, m: int) -> "AbHom":
        return AbHom(self.source, self.target, [[m * a for a in r] for r in self.matrix])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)


def hom_apply(h: AbHom, x: AbElement) -> AbElement:
    if x.parent != h.source:
        raise DimensionError("element is not in the source of the homomorphism")
    return AbElement(h.target, h.apply_coords(x.coords))


@dataclass(frozen=True)
class Subgroup:
    ambient: CyclicProduct
    generators: tuple[AbElement, ...]
    lattice_basis: tuple[tuple[int, ...], ...] = field(compare=False)
    pivots: tuple[int, ...] = field(compare=False)

    @classmethod
    def generated_by(cls, ambient: CyclicProduct, generators) -> "Subgroup":
        gens = tuple(g if isinstance(g, AbElement) else ambient.element(g)
                     for g in generators)
        for g in gens:
            if g.parent != ambient:
                raise DimensionError("generator outside the ambient group")
        rows = [list(g.coords) for g in gens] + ambient.relation_vectors()
        basis, pivots, _ = echelon(rows) if rows else ([], [], [])
        return cls(ambient, gens, tuple(tuple(r) for r in basis), tuple(pivots))

    @classmethod
    def trivial(cls, ambient):
        return cls.generated_by(ambient, [])

    @classmethod
    def whole(cls, ambient):
        return cls.generated_by(ambient, [ambient.gen(i) for i in range(ambient.rank)])

    def canonical(self, x: AbElement) -> AbElement:
        return coset_canonical(self, x)

    def canonical_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.ambient.reduce(reduce_against(self.lattice_basis, self.pivots, coords))

    def __contains__(self, x) -> bool:
        coords = x.coords if isinstance(x, AbElement) else x
        return not any(reduce_against(self.lattice_basis, self.pivots, coords))

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.generated_by(self.ambient, self.generators + other.generators)

    def same_as(self, other: "Subgroup") -> bool:
        return self.lattice_basis == other.lattice_basis

    def index(self) -> int | None:
        """Size of the quotient ``ambient / self``; ``None`` when infinite."""
        if len(self.pivots) < self.ambient.rank:
            return None
        return prod(row[c] for row, c in zip(self.lattice_basis, self.pivots))

    def order(self) -> int | None:
        total = self.ambient.order
        if total is None:
            return None
        return total // self.index()

    def elements(self) -> list[AbElement]:
        """Elements of a subgroup of a finite ambient, in sorted order."""
        if not self.ambient.is_finite:
            raise UnsupportedEnumeration("subgroup of an infinite group")
        seen = {self.ambient.zero().coords}
        frontier = list(seen)
        gens = [g.coords for g in self.generators]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = self.ambient.reduce([a + b for a, b in zip(v, g)])
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return [AbElement(self.ambient, c) for c in sorted(seen)]


def coset_canonical(sub: Subgroup, x: AbElement) -> AbElement:
    if x.parent != sub.ambient:
        raise DimensionError("element is not in the ambient group")
    return AbElement(sub.ambient, sub.canonical_coords(x.coords))


def _hom_relation_matrix(h: AbHom):
    """[M | diag(target moduli)] restricted to the nonzero moduli."""
    rel_cols = [i for i, m in enumerate(h.target.moduli) if m]
    mat = [list(row) + [h.target.moduli[i] if t == i else 0 for t in rel_cols]
           for i, row in enumerate(h.matrix)]
    return mat, h.source.rank + len(rel_cols)


def hom_kernel(h: AbHom) -> Subgroup:
    mat, ncols = _hom_relation_matrix(h)
    if h.target.rank == 0:
        return Subgroup.whole(h.source)
    basis = integer_kernel(mat, ncols)
    gens = [h.source.element(v[:h.source.rank]) for v in basis]
    return Subgroup.generated_by(h.source, gens)


def hom_image(h: AbHom) -> Subgroup:
    return Subgroup.generated_by(
        h.target, [h.target.element(h.column(j)) for j in range(h.source.rank)])


def hom_preimage(h: AbHom, y: AbElement) -> AbElement | None:
    """Some x with h(x) = y, or ``None`` when y is not in the image."""
    if y.parent != h.target:
        raise DimensionError("element is not in the target of the homomorphism")
    if h.target.rank == 0:
        return h.source.zero()
    mat, ncols = _hom_relation_matrix(h)
    z = integer_solve(mat, ncols, list(y.coords))
    if z is None:
        return None
    x = h.source.element(z[:h.source.rank])
    assert hom_apply(h, x) == y
    return x
