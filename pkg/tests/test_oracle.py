import itertools

import pytest

from heisconj.heis import ext_conjugate
from heisconj.integer import ZExtElement, is_conjugate_z, z_conjugate
from heisconj.oracle import (OrderBoundExceeded, conjugacy_classes, naive_scan_z,
                             oracle_finite, oracle_z, partition_compare)

X = ZExtElement


def test_oracle_finite_examples(small64):
    G = small64
    x = G.element((1,), (2,), (1,), (1,))
    v = oracle_finite(G, x, x)
    assert v.conjugate and v.witness == G.identity()
    y = G.element((1,), (2,), (0,), (1,))
    v = oracle_finite(G, x, y)
    assert not v.conjugate and v.witness is None


def test_oracle_finite_bound(small64, zgroup):
    with pytest.raises(OrderBoundExceeded):
        oracle_finite(small64, small64.identity(), small64.identity(), bound=10)
    with pytest.raises(OrderBoundExceeded):
        oracle_finite(zgroup, zgroup.identity(), zgroup.identity())


def test_full_table_small64(small64):
    G = small64
    xs = list(G.elements())
    assert len(xs) == 64
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == 64
    assert len(classes) == 28
    where = {x: i for i, c in enumerate(classes) for x in c}
    for x, y in itertools.product(xs, repeat=2):
        v = oracle_finite(G, x, y)
        assert v.conjugate == (where[x] == where[y])
        if v.conjugate:
            assert ext_conjugate(G, v.witness, x) == y


def test_oracle_z_examples():
    v = oracle_z(X(0, 0, 3, 1), X(-1, -3, 3, 1))
    assert v.conjugate
    assert (v.witness.n, v.witness.k) == (1, 0)
    assert v.witness == X(0, 0, 1, 0)
    v = oracle_z(X(0, 0, 3, 1), X(1, 1, 3, 1))
    assert not v.conjugate and v.search_stats["tried"] == 2
    v = oracle_z(X(4, 2, 3, 1), X(4, 2, 3, 1))
    assert v.conjugate and v.search_stats["tried"] == 1
    assert (v.witness.n, v.witness.k) == (0, 0)
    assert not oracle_z(X(0, 0, 3, 1), X(0, 0, 2, 1))


def test_oracle_z_witness_and_symmetry():
    box = range(-3, 4)
    for n in (1, 2, 3, 4, 6, 0, -2):
        for k in (0, 1, 2, 4, -3):
            xs = [X(p, c, n, k) for p in box for c in box]
            for a, b in itertools.product(xs, repeat=2):
                v = oracle_z(a, b)
                assert v.conjugate == oracle_z(b, a).conjugate
                if v.conjugate:
                    assert z_conjugate(v.witness, a) == b


def test_sweep_period_against_naive_scan():
    box = range(-3, 4)
    for n in range(1, 7):
        for k in range(0, 5):
            for p1, p2, c1, c2 in itertools.product(box, repeat=4):
                a, b = X(p1, c1, n, k), X(p2, c2, n, k)
                assert oracle_z(a, b).conjugate == naive_scan_z(a, b, bound=120).conjugate


def test_partition_compare_examples():
    xs = list(range(8))
    coarse = [x % 2 for x in xs]
    assert partition_compare(xs, coarse, [f"c{v}" for v in coarse]).equal
    fine = [(x % 2, x // 4) for x in xs]
    rep = partition_compare(xs, coarse, fine, oracle=lambda a, b: (a, b))
    assert not rep.equal
    a, b = rep.offending[0]
    assert coarse[a] == coarse[b] and fine[a] != fine[b]
    assert rep.verdicts == (a, b)
    with pytest.raises(ValueError):
        partition_compare(xs, coarse, fine[:3])


def test_oracle_z_agrees_with_decider_on_big_values():
    cases = [(X(10**12 + 3, -7, 9, 6), X(3, 10**9, 9, 6)),
             (X(17, 10**15, 10, 4), X(-5, 3, 10, 4))]
    for a, b in cases:
        assert bool(oracle_z(a, b)) == bool(is_conjugate_z(a, b))
