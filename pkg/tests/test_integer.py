import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from heisconj.certify import audit_even_sets, delta_composition_defects
from heisconj.integer import (WrongVariant, ZExtElement, degenerate_invariants,
                              even_invariants, is_conjugate_z, kc, odd_invariants,
                              z_conjugate, z_inv, z_invariants, z_mul)
from heisconj.oracle import oracle_z

X = ZExtElement


def test_z_mul_matches_generic_group(zgroup):
    from heisconj.heis import ext_mul
    rng = random.Random(1)
    for _ in range(300):
        a = X(*[rng.randint(-20, 20) for _ in range(4)])
        b = X(*[rng.randint(-20, 20) for _ in range(4)])
        ga = zgroup.element(*[(v,) for v in a])
        gb = zgroup.element(*[(v,) for v in b])
        assert tuple(v[0] for v in ext_mul(zgroup, ga, gb).as_tuple()) == z_mul(a, b)
        assert z_mul(a, z_inv(a)) == X(0, 0, 0, 0)


def test_kc_closed_form_is_a_cocycle():
    for k in range(-6, 7):
        for a, b in itertools.product(range(-20, 21), repeat=2):
            assert kc(k, a + b) == kc(k, a) + kc(k, b) + a * k * b


def test_odd_examples():
    rec = odd_invariants(X(5, 2, 3, 1))
    assert rec.payload["g"] == 1 and rec.payload["p_mod_g"] == 0 and rec.payload["w"] == 1
    assert rec.payload["j"] == 2 and rec.payload["j_modulus"] == 3
    assert odd_invariants(X(0, 0, 3, 1)).payload["j"] == 0
    assert odd_invariants(X(-1, -3, 3, 1)).payload["j"] == 0
    assert odd_invariants(X(0, 0, 3, 1)) == odd_invariants(X(-1, -3, 3, 1))
    for n in (1, 3, 5, -7):
        for k in range(0, 6):
            assert odd_invariants(X(0, 0, n, k)).payload["j"] == 0
    with pytest.raises(WrongVariant):
        odd_invariants(X(0, 0, 2, 1))


def test_even_examples():
    pl = even_invariants(X(1, 0, 2, 2)).payload
    assert pl["g"] == 2 and pl["I1"] == 1 and pl["I2"] == 1 and pl["w"] == 1
    assert pl["J_modulus"] == 8 and pl["J1"] == 5 and pl["J2"] == 5
    for n in (2, 4, 6):
        pl = even_invariants(X(0, 0, n, 0)).payload
        assert pl["I1"] == 0 and pl["I2"] == n % (2 * n) and pl["J1"] == 0
    with pytest.raises(WrongVariant):
        even_invariants(X(0, 0, 3, 1))
    with pytest.raises(WrongVariant):
        even_invariants(X(0, 0, 0, 1))


def test_degenerate_branch_exhaustive():
    box = range(-4, 5)
    for k in range(-3, 4):
        xs = [X(p, c, 0, k) for p in box for c in box]
        for a, b in itertools.product(xs, repeat=2):
            inv = degenerate_invariants(a) == degenerate_invariants(b)
            assert inv == bool(is_conjugate_z(a, b)) == bool(oracle_z(a, b))


def test_is_conjugate_examples():
    assert is_conjugate_z(X(0, 0, 3, 1), X(-1, -3, 3, 1))
    assert not is_conjugate_z(X(0, 0, 3, 1), X(1, 1, 3, 1))
    assert not is_conjugate_z(X(0, 0, 3, 1), X(0, 0, 3, 2))
    for x in [X(1, 2, 3, 4), X(0, 0, 0, 0), X(-3, 5, 4, 2), X(2, 2, 0, 3)]:
        assert is_conjugate_z(x, x)


def test_equivalence_relation_on_small_box():
    box = range(-2, 3)
    for n in (1, 2, 3, 4):
        for k in (0, 1, 2, 3):
            xs = [X(p, c, n, k) for p in box for c in box]
            rel = {(a, b): bool(is_conjugate_z(a, b)) for a in xs for b in xs}
            for a, b in rel:
                assert rel[a, b] == rel[b, a]
            for a, b, c in itertools.product(xs, repeat=3):
                if rel[a, b] and rel[b, c]:
                    assert rel[a, c]


def test_delta_composition():
    assert delta_composition_defects(box=3, n_values=(2, 4), k_max=4) == 0


def test_even_set_audit_reports_nothing():
    # unordered {I1, I2} and {J1, J2} agreeing must mean conjugate
    found = audit_even_sets(box=4, n_values=(2, 4, 6, 8), k_max=6)
    assert found == [], found[:5]


def test_negative_n_and_k():
    box = range(-3, 4)
    for n in (-1, -2, -3, -4, -6):
        for k in (-3, -1, 0, 2):
            xs = [X(p, c, n, k) for p in box for c in box]
            for a, b in itertools.product(xs, repeat=2):
                assert bool(is_conjugate_z(a, b)) == bool(oracle_z(a, b))
                if bool(is_conjugate_z(a, b)):
                    assert z_invariants(a) == z_invariants(b)


small = st.integers(-6, 6)


@settings(max_examples=500, deadline=None)
@given(small, small, small.filter(bool), small, small, small, small, small)
def test_invariants_survive_conjugation(p, c, n, k, gp, gc, gn, gk):
    x, g = X(p, c, n, k), X(gp, gc, gn, gk)
    y = z_conjugate(g, x)
    assert (y.n, y.k) == (x.n, x.k)
    assert z_invariants(x) == z_invariants(y)
    assert is_conjugate_z(x, y)
    if x.n % 2 == 0:
        assert set(even_invariants(x).payload["I"]) == set(even_invariants(y).payload["I"])
        assert set(even_invariants(x).payload["J"]) == set(even_invariants(y).payload["J"])


def test_record_json_is_plain():
    import json
    for x in [X(5, 2, 3, 1), X(1, 0, 2, 2), X(3, 1, 0, 2), X(3, 1, 0, 0)]:
        doc = z_invariants(x).to_json()
        assert json.loads(json.dumps(doc)) == doc
        assert doc["variant"] in {"odd", "even", "degenerate"}
