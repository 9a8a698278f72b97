import random

import pytest
from hypothesis import given, settings, strategies as st

from hlrc.errors import ParameterError
from hlrc.galois import Fe, field_create, quad_ext


def test_field_create_prime_field():
    f = field_create(37, 1)
    assert f.q == 37
    assert list(f.modulus) == [0, 1]


def test_field_create_gf27_modulus_has_no_roots():
    f = field_create(3, 3)
    assert f.q == 27
    coeffs = list(f.modulus)
    for x in range(3):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % 3
        assert acc != 0


def test_field_create_gf64():
    f = field_create(2, 6)
    assert f.q == 64
    # x^6 + x + 1 is the smallest irreducible of degree 6 over GF(2)
    assert list(f.modulus) == [1, 1, 0, 0, 0, 0, 1]


def test_field_create_determinism():
    a = field_create(41, 2)
    b = field_create(41, 2)
    assert a is b
    assert a.to_dict() == {"p": 41, "m": 2, "modulus": list(a.modulus)}


def test_field_create_rejects_composite_p():
    with pytest.raises(ParameterError):
        field_create(36, 1)


def test_gf37_examples():
    f = field_create(37)
    assert f.add(20, 18) == 1
    assert f.pow(8, 4) == 26


def test_inverse_roundtrip():
    rng = random.Random(7)
    for f in (field_create(37), field_create(2, 6), field_create(41, 2)):
        for _ in range(200):
            x = rng.randrange(1, f.q)
            assert f.mul(f.inv(x), x) == 1
    with pytest.raises(ZeroDivisionError):
        field_create(37).inv(0)


@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_gf27_field_axioms(a, b, c):
    f = field_create(3, 3)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@settings(max_examples=50)
@given(st.integers(0, 1680), st.integers(0, 1680))
def test_gf1681_sub_neg(a, b):
    f = field_create(41, 2)
    assert f.add(f.sub(a, b), b) == a
    assert f.add(a, f.neg(a)) == 0


def test_fe_operators_and_cross_field_guard():
    f = field_create(37)
    g = field_create(13)
    x = Fe(f, 20)
    y = Fe(f, 18)
    assert (x + y).rep == 1
    assert (x * y).rep == (20 * 18) % 37
    assert (x / y * y) == x
    assert (-x + x).rep == 0
    assert (x ** 4).rep == f.pow(20, 4)
    with pytest.raises(ValueError):
        _ = x + Fe(g, 5)


def test_primitive_element():
    assert field_create(37).primitive_element() == 2
    assert field_create(2, 1).primitive_element() == 1
    for f in (field_create(37), field_create(3, 3), field_create(41, 2)):
        g = f.primitive_element()
        assert f.element_order(g) == f.q - 1


@pytest.mark.parametrize("p,m", [(37, 1), (2, 6), (3, 3), (41, 2)])
def test_discrete_log_bijection(p, m):
    f = field_create(p, m)
    g = f.primitive_element()
    seen = set()
    v = 1
    for _ in range(f.q - 1):
        seen.add(v)
        v = f.mul(v, g)
    assert seen == set(range(1, f.q))


def test_roots_of_unity():
    f = field_create(37)
    assert f.roots_of_unity(4) == [1, 6, 31, 36]
    assert f.roots_of_unity(1) == [1]
    f64 = field_create(2, 6)
    r9 = f64.roots_of_unity(9)
    assert len(r9) == 9
    prod = 1
    for z in r9:
        prod = f64.mul(prod, z)
    assert prod == 1
    with pytest.raises(ParameterError):
        f.roots_of_unity(5)


def test_subgroup_cosets_gf37():
    f = field_create(37)
    cosets = f.subgroup_cosets(12)
    assert len(cosets) == 3
    assert set(cosets[0]) == {1, 6, 8, 10, 11, 14, 23, 26, 27, 29, 31, 36}
    assert f.subgroup_cosets(36) == [list(range(1, 37))]
    with pytest.raises(ParameterError):
        f.subgroup_cosets(7)


def test_subgroup_cosets_partition_and_closure():
    f = field_create(2, 6)
    for h in (3, 7, 9, 21):
        cosets = f.subgroup_cosets(h)
        union = [x for c in cosets for x in c]
        assert len(union) == f.q - 1
        assert len(set(union)) == f.q - 1
        subgroup = f.roots_of_unity(h)
        for c in cosets:
            cs = set(c)
            assert all(f.mul(x, s) in cs for x in c for s in subgroup)


def test_vectorized_ops_agree_with_scalar():
    rng = random.Random(3)
    for f in (field_create(37), field_create(2, 6), field_create(41, 2)):
        a = f.arr([rng.randrange(f.q) for _ in range(64)])
        b = f.arr([rng.randrange(f.q) for _ in range(64)])
        assert all(f.vadd(a, b)[i] == f.add(int(a[i]), int(b[i])) for i in range(64))
        assert all(f.vmul(a, b)[i] == f.mul(int(a[i]), int(b[i])) for i in range(64))
        assert all(f.vsub(a, b)[i] == f.sub(int(a[i]), int(b[i])) for i in range(64))
        for e in (0, 1, 2, 7, f.q - 2):
            assert all(f.vpow(a, e)[i] == f.pow(int(a[i]), e) for i in range(64))


def test_quad_ext_embedding_is_multiplicative():
    rng = random.Random(11)
    for base in (field_create(37), field_create(3, 3), field_create(2, 6)):
        ext = quad_ext(base)
        for _ in range(100):
            a, b = rng.randrange(base.q), rng.randrange(base.q)
            assert ext.mul(ext.embed(a), ext.embed(b)) == ext.embed(base.mul(a, b))
            assert ext.add(ext.embed(a), ext.embed(b)) == ext.embed(base.add(a, b))


def test_quad_ext_norm_of_base_is_square():
    base = field_create(37)
    ext = quad_ext(base)
    for a in range(1, 37):
        assert ext.norm(ext.embed(a)) == base.mul(a, a)


def test_quad_ext_generator_order():
    for base in (field_create(3, 3), field_create(5)):
        ext = quad_ext(base)
        g = ext.generator()
        n = ext.order - 1
        assert ext.pow(g, n) == ext.one()
        seen = set()
        v = ext.one()
        for _ in range(n):
            v = ext.mul(v, g)
            seen.add(v)
        assert len(seen) == n


def test_quad_ext_norm_surjective_onto_base():
    base = field_create(5)
    ext = quad_ext(base)
    g = ext.generator()
    norms = set()
    v = ext.one()
    for _ in range(ext.order - 1):
        norms.add(ext.norm(v))
        v = ext.mul(v, g)
    assert norms == set(range(1, 5))
