import itertools

import pytest
from hypothesis import given, settings, strategies as st

from heisconj.abelian import (AbHom, CyclicProduct, DimensionError, Subgroup,
                              UnsupportedEnumeration, ab_reduce, coset_canonical,
                              enumerate_elements, hom_apply, hom_image, hom_kernel,
                              hom_preimage, integer_kernel, integer_solve)

Z4 = CyclicProduct((4,))


def test_reduce_examples():
    assert ab_reduce(CyclicProduct((2, 0)), (5, -3)).coords == (1, -3)
    assert ab_reduce(Z4, (0,)).coords == (0,)
    assert ab_reduce(Z4, (-1,)).coords == (3,)
    with pytest.raises(DimensionError):
        ab_reduce(Z4, (1, 2))


def test_hom_apply_examples():
    assert hom_apply(AbHom(Z4, Z4, [[1]]), Z4.element((3,))).coords == (3,)
    assert hom_apply(AbHom(Z4, Z4, [[2]]), Z4.element((3,))).coords == (2,)
    Z2 = CyclicProduct((2,))
    assert hom_apply(AbHom(Z2, Z4, [[2]]), Z2.element((1,))).coords == (2,)
    with pytest.raises(DimensionError):
        hom_apply(AbHom(Z4, Z4, [[1]]), Z2.element((1,)))


def test_ill_defined_hom_rejected():
    with pytest.raises(ValueError):
        AbHom(CyclicProduct((2,)), Z4, [[1]])


def test_kernel_and_image_examples():
    double = AbHom(Z4, Z4, [[2]])
    assert sorted(e.coords for e in hom_kernel(double).elements()) == [(0,), (2,)]
    assert sorted(e.coords for e in hom_image(double).elements()) == [(0,), (2,)]
    assert hom_kernel(AbHom(Z4, Z4, [[1]])).order() == 1
    assert hom_kernel(AbHom.zero(Z4, Z4)).order() == 4
    assert hom_image(AbHom.zero(Z4, Z4)).order() == 1
    Z = CyclicProduct((0,))
    six = hom_image(AbHom(Z, Z, [[6]]))
    assert Z.element((4,)) not in six
    assert Z.element((-12,)) in six
    assert six.index() == 6


def test_coset_canonical_examples():
    sub = Subgroup.generated_by(Z4, [Z4.element((2,))])
    assert coset_canonical(sub, Z4.element((3,))).coords == (1,)
    assert coset_canonical(sub, Z4.element((2,))).coords == (0,)
    whole = Subgroup.whole(Z4)
    assert all(coset_canonical(whole, x).is_zero() for x in Z4.elements())


def test_enumerate_examples():
    assert [e.coords for e in enumerate_elements(CyclicProduct((2, 2)))] == [
        (0, 0), (0, 1), (1, 0), (1, 1)]
    assert [e.coords for e in enumerate_elements(CyclicProduct((3,)))] == [(0,), (1,), (2,)]
    with pytest.raises(UnsupportedEnumeration):
        list(enumerate_elements(CyclicProduct((0,))))


def test_integer_lattice_helpers():
    m = [[2, 4, 6]]
    for v in integer_kernel(m, 3):
        assert sum(a * b for a, b in zip(m[0], v)) == 0
    assert integer_solve(m, 3, [10]) is not None
    assert integer_solve(m, 3, [3]) is None


def _all_homs(src, tgt):
    cols = []
    for j in range(src.rank):
        cols.append([e.coords for e in tgt.elements()])
    for choice in itertools.product(*cols):
        matrix = [[choice[j][i] for j in range(src.rank)] for i in range(tgt.rank)]
        try:
            yield AbHom(src, tgt, matrix)
        except ValueError:
            continue


SMALL = [(2,), (4,), (6,), (2, 2), (2, 4), (3, 3), (1, 4)]


@pytest.mark.parametrize("src", SMALL)
@pytest.mark.parametrize("tgt", [(4,), (2, 2), (6,), (3,)])
def test_kernel_image_match_exhaustive_scan(src, tgt):
    A, B = CyclicProduct(src), CyclicProduct(tgt)
    for h in _all_homs(A, B):
        ker = {x.coords for x in A.elements() if h(x).is_zero()}
        img = {h(x).coords for x in A.elements()}
        K, I = hom_kernel(h), hom_image(h)
        assert {x.coords for x in K.elements()} == ker
        assert {x.coords for x in I.elements()} == img
        for y in B.elements():
            z = hom_preimage(h, y)
            assert (z is not None) == (y.coords in img)
            if z is not None:
                assert h(z) == y


@pytest.mark.parametrize("moduli", [(4,), (2, 4), (3, 6), (2, 2, 2)])
def test_coset_canonical_is_a_bijection_on_cosets(moduli):
    A = CyclicProduct(moduli)
    elems = list(A.elements())
    for gens in itertools.combinations(elems, 2):
        sub = Subgroup.generated_by(A, list(gens))
        reps = {}
        for x in elems:
            reps[x.coords] = coset_canonical(sub, x).coords
        for x, y in itertools.product(elems, repeat=2):
            assert ((x - y) in sub) == (reps[x.coords] == reps[y.coords])
        assert len(set(reps.values())) == sub.index()


mods = st.lists(st.sampled_from([0, 1, 2, 3, 4, 6, 9]), min_size=1, max_size=3)


@settings(max_examples=200, deadline=None)
@given(mods, st.data())
def test_reduce_idempotent_and_addition_laws(moduli, data):
    A = CyclicProduct(tuple(moduli))
    vec = st.lists(st.integers(-50, 50), min_size=A.rank, max_size=A.rank)
    a, b, c = (A.element(data.draw(vec)) for _ in range(3))
    assert ab_reduce(A, a.coords) == a
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + A.zero() == a
    assert (a + (-a)).is_zero()
