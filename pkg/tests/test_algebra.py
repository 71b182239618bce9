from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from curvestrata.algebra import (
    BinaryForm,
    Field,
    Scalar,
    bf_add,
    bf_div_exact,
    bf_eval,
    bf_gcd,
    bf_mul,
    bf_normalize_monic,
    bf_ring_op,
    bf_scale,
    bf_sub,
    bf_substitute,
    iter_forms,
    render_form,
    scalar_arith,
)
from curvestrata.errors import (
    BothZero,
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroForm,
    ZeroPoint,
)

from helpers import F2, F3, F5, QQ

u, v = BinaryForm.u(QQ), BinaryForm.v(QQ)


def form(field, *coeffs):
    return BinaryForm.from_coeffs(field, coeffs)


def to_sympy(F: BinaryForm):
    U, V = sympy.symbols("u v")
    d = F.degree
    return sum(sympy.Rational(c) * U ** (d - j) * V**j for j, c in enumerate(F.coeffs))


# scalars ----------------------------------------------------------------------


def test_rational_addition():
    assert QQ(Fraction(1, 3)) + QQ(Fraction(1, 6)) == QQ(Fraction(1, 2))


def test_prime_field_inverse():
    inv = scalar_arith(F5(2), None, "inv")
    assert inv == F5(3)
    assert F5(2) * inv == F5(1)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        F5(0).inverse()
    with pytest.raises(DivisionByZero):
        QQ(1) / QQ(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        scalar_arith(F5(1), F3(1), "add")
    with pytest.raises(FieldMismatch):
        bf_add(BinaryForm.u(F5), BinaryForm.u(F3))


def test_scalar_canonical_representatives():
    assert F5(7).value == 2
    assert F5(-1).value == 4
    assert F5(Fraction(1, 2)).value == 3
    assert QQ(Fraction(4, -6)).value == Fraction(-2, 3)
    x = F5(13)
    assert Scalar(F5, x.value) == x


@pytest.mark.parametrize("op,expected", [("add", 0), ("sub", 4), ("mul", 1), ("div", 4), ("eq", False)])
def test_scalar_dispatch(op, expected):
    assert scalar_arith(F5(2), F5(3), op) == expected


def test_nonprime_characteristic_rejected():
    with pytest.raises(ValueError):
        Field(4)


# ring operations --------------------------------------------------------------


def test_addition_with_cancellation():
    assert (u + v) + (u - v) == bf_scale(u, 2)


def test_product_expands():
    P = bf_mul(u + v, u - v)
    assert P == form(QQ, 1, 0, -1)
    assert sympy.expand(to_sympy(u + v) * to_sympy(u - v)) == sympy.expand(to_sympy(P))


def test_degree_is_additive():
    assert bf_mul(u * v, v).degree == 3


def test_cancellation_gives_zero():
    Z = bf_sub(u, u)
    assert Z.is_zero and Z.degree is None
    assert bf_add(Z, v * v) == v * v


def test_unequal_degrees_rejected():
    with pytest.raises(DegreeMismatch):
        bf_add(u, v * v)


def test_ring_op_dispatch():
    assert bf_ring_op(u, v, "mul") == u * v
    assert bf_ring_op(u, 3, "scale") == form(QQ, 3, 0)


# exact division ---------------------------------------------------------------


def test_exact_division():
    Q = bf_div_exact(form(QQ, 1, 0, -1), u - v)
    assert Q == u + v
    assert bf_mul(Q, u - v) == form(QQ, 1, 0, -1)


def test_division_by_unit():
    F = form(QQ, 2, -1, 5)
    assert bf_div_exact(F, BinaryForm.constant(QQ, 1)) == F


def test_not_divisible():
    with pytest.raises(NotDivisible):
        bf_div_exact(u * u, v)
    with pytest.raises(NotDivisible):
        bf_div_exact(v * v, u)
    with pytest.raises(DivisionByZero):
        bf_div_exact(u, BinaryForm.zero(QQ))


# gcd ---------------------------------------------------------------------------


def test_gcd_examples():
    assert bf_gcd(u * v, v * v) == v
    F = form(QQ, 2, 4, 6)
    assert bf_gcd(F, BinaryForm.zero(QQ)) == bf_normalize_monic(F)
    assert bf_gcd(form(QQ, 1, 0, -1), u + v) == u + v
    with pytest.raises(BothZero):
        bf_gcd(BinaryForm.zero(QQ), BinaryForm.zero(QQ))


def test_gcd_examples_against_sympy():
    U, V = sympy.symbols("u v")
    for F, G in [(u * v, v * v), (form(QQ, 1, 0, -1), u + v), (u**3 - v**3, u * u - v * v)]:
        expected = sympy.Poly(sympy.gcd(to_sympy(F), to_sympy(G)), U, V).monic()
        assert sympy.Poly(to_sympy(bf_gcd(F, G)), U, V, domain="QQ") == expected


# evaluation and normalization --------------------------------------------------


def test_evaluation_examples():
    assert bf_eval(u, (1, 0)) == 1
    assert bf_eval(v, (1, 0)) == 0
    assert bf_eval(form(F2, 1, 0, 1), (1, 1)) == 0
    assert bf_eval(form(QQ, 1, 2, 3), (0, 2)) == 12
    with pytest.raises(ZeroPoint):
        bf_eval(u, (0, 0))


def test_monic_normalization():
    assert bf_normalize_monic(form(QQ, 2, 2)) == u + v
    assert bf_normalize_monic(form(F5, 0, 0, 3)) == form(F5, 0, 0, 1)
    with pytest.raises(ZeroForm):
        bf_normalize_monic(BinaryForm.zero(QQ))


def test_rendering():
    assert render_form(form(QQ, 1, -2, 1)) == "u^2 - 2*u*v + v^2"
    assert render_form(form(QQ, -1, 0)) == "-u"
    assert render_form(form(QQ, Fraction(1, 2), 0, 0, -3)) == "1/2*u^3 - 3*v^3"
    assert render_form(BinaryForm.zero(QQ)) == "0"
    assert render_form(form(F5, 0, 4, 1)) == "4*u*v + v^2"


def test_substitution():
    # (u^2 : v^2) substituted into u*v gives u^2 v^2
    assert bf_substitute(u * v, u * u, v * v) == BinaryForm.monomial(QQ, 2, 2)


# brute-force divisor oracle ---------------------------------------------------


def divisor_table(field, max_degree):
    """Map each form to its set of monic divisors, built from products only."""
    forms = [F for d in range(max_degree + 1) for F in iter_forms(field, d)]
    monic = [F for d in range(max_degree + 1) for F in iter_forms(field, d, monic=True)]
    table = {F: set() for F in forms}
    for D in monic:
        for d in range(max_degree - D.degree + 1):
            for Q in iter_forms(field, d):
                P = bf_mul(D, Q)
                if P in table:
                    table[P].add(D)
    return forms, table


@pytest.mark.parametrize("field,max_degree", [(F2, 3), (F3, 2)])
def test_gcd_matches_divisor_enumeration(field, max_degree):
    forms, table = divisor_table(field, max_degree)
    for F, G in product(forms, repeat=2):
        H = bf_gcd(F, G)
        common = table[F] & table[G]
        assert H in common
        assert all(H.degree >= D.degree for D in common)
        assert all(bf_div_exact(H, D) is not None for D in common)


# properties ----------------------------------------------------------------------


def forms_over(field, max_degree=4):
    coeff = st.integers(-6, 6) if field.characteristic == 0 else st.integers(0, field.characteristic - 1)
    return st.integers(0, max_degree).flatmap(
        lambda d: st.lists(coeff, min_size=d + 1, max_size=d + 1)
    ).map(lambda cs: BinaryForm.from_coeffs(field, cs)).filter(lambda F: not F.is_zero)


fields = st.sampled_from([QQ, F2, F3, F5, Field(7)])


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_gcd_divides_both(data):
    field = data.draw(fields)
    F, G = data.draw(forms_over(field)), data.draw(forms_over(field))
    H = bf_gcd(F, G)
    assert bf_mul(bf_div_exact(F, H), H) == F
    assert bf_mul(bf_div_exact(G, H), H) == G


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_gcd_of_common_multiple(data):
    field = data.draw(fields)
    F, G, H = (data.draw(forms_over(field, 3)) for _ in range(3))
    assert bf_gcd(bf_mul(F, H), bf_mul(G, H)) == bf_normalize_monic(bf_mul(H, bf_gcd(F, G)))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_gcd_agrees_with_sympy(data):
    field = data.draw(fields)
    F, G = data.draw(forms_over(field)), data.draw(forms_over(field))
    H = bf_gcd(F, G)
    x = sympy.symbols("x")
    p = field.characteristic or None
    # dehomogenize at v = 1 and account for common powers of v separately
    f = sympy.Poly(list(map(int if p else sympy.Rational, F.coeffs)), x, modulus=p)
    g = sympy.Poly(list(map(int if p else sympy.Rational, G.coeffs)), x, modulus=p)
    expected_deg = sympy.gcd(f, g).degree() + min(F.pure_powers()[1], G.pure_powers()[1])
    assert H.degree == expected_deg


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_evaluation_is_multiplicative(data):
    field = data.draw(fields)
    F, G = data.draw(forms_over(field)), data.draw(forms_over(field))
    hi = 5 if field.characteristic == 0 else field.characteristic - 1
    a = (data.draw(st.integers(-5 if not field.characteristic else 0, hi)),
         data.draw(st.integers(-5 if not field.characteristic else 0, hi)))
    if not field.reduce(a[0]) and not field.reduce(a[1]):
        return
    assert bf_eval(bf_mul(F, G), a) == bf_eval(F, a) * bf_eval(G, a)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_canonical_forms_are_idempotent(data):
    field = data.draw(fields)
    F = data.draw(forms_over(field))
    M = bf_normalize_monic(F)
    assert bf_normalize_monic(M) == M
    for c in F.coeffs:
        assert field.reduce(c) == c
