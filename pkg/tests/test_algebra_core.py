import pytest
from hypothesis import given, settings, strategies as st

from tightclosure.errors import CharMismatch, DivisionByZero, ExponentOverflow
from tightclosure.field import FpScalar, NotPrime, PrimeChar, inv_mod, is_prime
from tightclosure.poly import MonomialOrder, PolyRing, frobenius_power

import oracles


def test_scalar_examples():
    assert FpScalar(3, 7).inverse() == FpScalar(5, 7)
    assert FpScalar(2, 5) ** 4 == FpScalar(1, 5)
    assert FpScalar(4, 5) + FpScalar(3, 5) == FpScalar(2, 5)


def test_scalar_errors():
    with pytest.raises(DivisionByZero):
        FpScalar(0, 5).inverse()
    with pytest.raises(CharMismatch):
        FpScalar(1, 5) + FpScalar(1, 7)
    with pytest.raises(NotPrime):
        PrimeChar(4)


@given(st.integers(min_value=2, max_value=3000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % d for d in range(2, int(n ** 0.5) + 1))


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(min_value=1, max_value=10**6))
def test_inverse(p, a):
    if a % p:
        assert a * inv_mod(a, p) % p == 1


def test_poly_examples():
    R = PolyRing(5, ["x", "y"])
    x, y = R.gens()
    assert str((x + y) * (x - y)) == "x^2 + 4*y^2"
    assert (x + y) * R.zero() == R.zero()
    R2 = PolyRing(2, ["x", "y"])
    a, b = R2.gens()
    assert (a + b) ** 2 == a**2 + b**2


def test_frobenius_examples():
    R2 = PolyRing(2, ["x", "y"])
    x, y = R2.gens()
    assert frobenius_power(x + y, 1) == x**2 + y**2
    R5 = PolyRing(5, ["z"])
    (z,) = R5.gens()
    assert frobenius_power(z, 2) == z**25
    R3 = PolyRing(3, ["x", "y"])
    x, y = R3.gens()
    assert frobenius_power(x + 2 * y, 1) == (x + 2 * y) * (x + 2 * y) * (x + 2 * y)


def test_frobenius_overflow():
    R = PolyRing(2, ["x"])
    (x,) = R.gens()
    with pytest.raises(ExponentOverflow):
        frobenius_power(x, 40)


def test_orders():
    R = PolyRing(7, ["x", "y"], order="lex")
    x, y = R.gens()
    assert (x + y**5).leading_monomial() == (1, 0)
    G = R.with_order(MonomialOrder("grevlex"))
    assert (x + y**5).to_ring(G).leading_monomial() == (0, 5)


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-20, 20), max_size=5)


@settings(max_examples=60)
@given(polys, polys)
def test_multiplication_matches_oracle(f, g):
    p = 7
    R = PolyRing(p, ["x", "y"])
    prod = R.poly(f) * R.poly(g)
    f7 = {m: c % p for m, c in f.items() if c % p}
    g7 = {m: c % p for m, c in g.items() if c % p}
    assert prod.terms == oracles.poly_mul(f7, g7, p)


@settings(max_examples=40)
@given(polys, st.sampled_from([2, 3, 5]))
def test_frobenius_is_pth_power(f, p):
    R = PolyRing(p, ["x", "y"])
    F = R.poly(f)
    assert F.frobenius(1) == F ** p
