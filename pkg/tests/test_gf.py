import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from mubcurves.gf import (
    DEFAULT_MODULI,
    GF2n,
    ReducibleModulusError,
    clmul,
    find_factor,
    is_irreducible,
    poly_mod,
    rank_gf2,
)


@pytest.mark.parametrize("n", range(1, 5))
def test_field_axioms_exhaustive(n):
    f = GF2n(n)
    els = list(f.elements())
    for a, b in itertools.product(els, repeat=2):
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(a, b) == poly_mod(clmul(a, b), f.modulus)
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
    for a in els[1:]:
        assert f.mul(a, f.inv(a)) == 1


@st.composite
def field_and_elements(draw, k=3):
    n = draw(st.integers(1, 8))
    f = GF2n(n)
    return f, [draw(st.integers(0, f.order - 1)) for _ in range(k)]


@settings(max_examples=300, deadline=None)
@given(field_and_elements())
def test_field_axioms_random(data):
    f, (a, b, c) = data
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
    assert f.pow(a, f.order) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.order - 1) == 1


@settings(max_examples=300, deadline=None)
@given(field_and_elements())
def test_frobenius_is_additive_and_multiplicative(data):
    f, (a, b, _) = data
    for m in range(f.n + 1):
        assert f.frobenius(a ^ b, m) == f.frobenius(a, m) ^ f.frobenius(b, m)
        assert f.frobenius(f.mul(a, b), m) == f.mul(f.frobenius(a, m), f.frobenius(b, m))
    assert f.frobenius(a, f.n) == a


@pytest.mark.parametrize("n", range(1, 9))
def test_trace_is_balanced_and_linear(n):
    f = GF2n(n)
    zeros = sum(1 for x in f.elements() if f.trace(x) == 0)
    assert zeros == f.order // 2
    assert f.trace(0) == 0
    for x in list(f.elements())[:64]:
        assert f.trace(f.frobenius(x)) == f.trace(x)
        assert f.character(x) == (-1) ** f.trace(x)


@pytest.mark.parametrize("n", range(1, 9))
def test_default_basis_is_self_dual(n):
    f = GF2n(n)
    assert f.is_self_dual
    for i, j in itertools.product(range(n), repeat=2):
        assert f.trace(f.mul(f.basis[i], f.basis[j])) == int(i == j)
    assert rank_gf2(f.basis) == n


def test_gf4_basis_and_labels(gf4):
    s, s2 = 2, 3
    assert gf4.basis == (s, s2)
    assert gf4.mul(s, s) == s2
    assert gf4.mul(s, s2) == 1
    assert [gf4.label(x) for x in gf4.elements()] == ["0", "1", "s", "s2"]
    assert gf4.trace(1) == 0 and gf4.trace(s) == 1 and gf4.trace(s2) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_expand_combine_roundtrip(n):
    f = GF2n(n)
    for x in list(f.elements())[:128]:
        coords = f.expand(x)
        assert len(coords) == n
        assert f.combine(coords) == x
        assert coords == tuple(f.trace(f.mul(x, t)) for t in f.basis)


def test_combine_rejects_wrong_length(gf4):
    with pytest.raises(ValueError):
        gf4.combine([1, 0, 1])


def test_default_moduli_irreducible():
    for n, m in DEFAULT_MODULI.items():
        assert is_irreducible(m), n


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError) as exc:
        GF2n(2, modulus=0b101)  # x^2 + 1 = (x + 1)^2
    assert exc.value.factor == 0b11
    assert find_factor(0b101) == 0b11


def test_wrong_degree_modulus_and_range():
    with pytest.raises(ValueError):
        GF2n(3, modulus=0b111)
    with pytest.raises(ValueError):
        GF2n(0)
    with pytest.raises(ValueError):
        GF2n(9)


def test_non_self_dual_basis_allowed_but_flagged():
    f = GF2n(2, basis=(1, 2))
    assert not f.is_self_dual
    for x in f.elements():
        assert f.combine(f.expand(x)) == x


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF2n(3).inv(0)


def test_element_out_of_range(gf4):
    with pytest.raises(ValueError):
        gf4.check(4)


def test_json_roundtrip():
    for n in (1, 2, 5):
        f = GF2n(n)
        g = GF2n.from_json(json.dumps(f.to_json()))
        assert g == f and g.basis == f.basis
        x = f.order - 1
        assert f.element_from_json(f.element_to_json(x)) == x
