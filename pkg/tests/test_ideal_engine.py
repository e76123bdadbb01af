import pytest
from hypothesis import given, settings, strategies as st

from tightclosure.errors import DivisionByZero, NotZeroDimensional
from tightclosure.groebner import (AmbientIdeal, buchberger, colon_ideal, colon_ideal_ideal,
                                   degree_slice_basis, hilbert_numerator, ideal_intersection,
                                   ideal_membership, krull_dimension, normal_form, vspace_dimension)
from tightclosure.poly import PolyRing

import oracles


def test_buchberger_examples():
    R = PolyRing(5, ["x", "y"])
    x, y = R.gens()
    assert set(buchberger([x**2, x * y]).generators) == {x**2, x * y}
    L = PolyRing(7, ["x", "y"], order="lex")
    x, y = L.gens()
    gb = buchberger([x**2 + y**2, x * y])
    assert set(gb.generators) == {x**2 + y**2, x * y, y**3}
    assert normal_form(x**3, gb).is_zero()
    assert all(normal_form(g, gb).is_zero() for g in gb.generators)
    assert list(buchberger([L.zero()]).generators) == []


def test_membership_examples():
    R = PolyRing(7, ["x", "y"])
    x, y = R.gens()
    assert ideal_membership(x**3, AmbientIdeal(R, [x**2 + y**2, x * y]))
    S = PolyRing(5, ["x", "y", "z"])
    x, y, z = S.gens()
    assert not ideal_membership(z, AmbientIdeal(S, [x, y]))
    assert ideal_membership(S.zero(), AmbientIdeal(S, [x]))
    assert normal_form(y, buchberger([x])) == y


def test_colon_examples():
    R = PolyRing(5, ["x", "y"])
    x, y = R.gens()
    assert colon_ideal(AmbientIdeal(R, [x**2 * y]), y).equals(AmbientIdeal(R, [x**2]))
    assert colon_ideal(AmbientIdeal(R, [x**2, x * y]), x).equals(AmbientIdeal(R, [x, y]))
    col = colon_ideal_ideal(AmbientIdeal(R, [x**4, y**4]), AmbientIdeal(R, [x**2 * y**2]))
    assert col.equals(AmbientIdeal(R, [x**2, y**2]))
    with pytest.raises(DivisionByZero):
        colon_ideal(AmbientIdeal(R, [x]), R.zero())


def test_colon_against_dense_oracle():
    # (x^4, y^4) : x^2 y^2 -- a monomial m is in the colon iff m x^2 y^2 is in (x^4, y^4)
    p = 5
    R = PolyRing(p, ["x", "y"])
    x, y = R.gens()
    col = colon_ideal(AmbientIdeal(R, [x**4, y**4]), x**2 * y**2)
    gens = [{(4, 0): 1}, {(0, 4): 1}]
    for d in range(5):
        for m in oracles.monomials(2, d):
            shifted = {(m[0] + 2, m[1] + 2): 1}
            assert col.contains(R.monomial(m)) == oracles.homogeneous_member(shifted, gens, 2, p)


def test_intersection_examples():
    R = PolyRing(7, ["x", "y"])
    x, y = R.gens()
    assert ideal_intersection(AmbientIdeal(R, [x]), AmbientIdeal(R, [y])).equals(AmbientIdeal(R, [x * y]))
    assert ideal_intersection(AmbientIdeal(R, [x**2]), AmbientIdeal(R, [x])).equals(AmbientIdeal(R, [x**2]))
    inter = ideal_intersection(AmbientIdeal(R, [x + y]), AmbientIdeal(R, [x - y]))
    assert inter.equals(AmbientIdeal(R, [(x + y) * (x - y)]))


def test_dimension_examples():
    S = PolyRing(5, ["x", "y", "z"])
    x, y, z = S.gens()
    assert krull_dimension(AmbientIdeal(S, [])) == 3
    R = PolyRing(5, ["x", "y"])
    a, b = R.gens()
    assert krull_dimension(AmbientIdeal(R, [a, b])) == 0
    assert krull_dimension(AmbientIdeal(S, [x**3 + y**3 - z**3])) == 2


def test_vspace_examples():
    R = PolyRing(5, ["x", "y"])
    x, y = R.gens()
    assert vspace_dimension(AmbientIdeal(R, [x**2, y**3])) == 6
    with pytest.raises(NotZeroDimensional):
        vspace_dimension(AmbientIdeal(R, [x]))
    S = PolyRing(5, ["x", "y", "z"])
    x, y, z = S.gens()
    assert sorted(degree_slice_basis(AmbientIdeal(S, [x**3 + y**3 - z**3]), 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_vspace_fermat_cube_matches_oracle():
    # The relation x^3+y^3-z^3 already lies in (x^3, y^3, z^3), so the count is 27.
    p = 5
    S = PolyRing(p, ["x", "y", "z"])
    x, y, z = S.gens()
    ours = vspace_dimension(AmbientIdeal(S, [x**3, y**3, z**3, x**3 + y**3 - z**3]))
    gens = [{(3, 0, 0): 1}, {(0, 3, 0): 1}, {(0, 0, 3): 1}, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): p - 1}]
    assert ours == oracles.quotient_length(gens, 3, p) == 27


def test_hilbert_numerator():
    S = PolyRing(5, ["x", "y", "z"])
    x, y, z = S.gens()
    gb = AmbientIdeal(S, [x**3 + y**3 - z**3]).gb
    assert hilbert_numerator(gb.leading_monomials, (1, 1, 1)) == {0: 1, 3: -1}




def _random_form(R, d, seed):
    import random
    rnd = random.Random(seed)
    return R.poly({m: rnd.randrange(R.p) for m in R.monomials_of_degree(d)})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 10**6), st.integers(1, 4))
def test_membership_matches_macaulay_oracle(degrees, seed, target_degree):
    p = 5
    R = PolyRing(p, ["x", "y", "z"])
    gens = [_random_form(R, d, seed + i) for i, d in enumerate(degrees)]
    gens = [g for g in gens if g]
    f = _random_form(R, target_degree, seed + 99)
    if not gens:
        return
    ours = AmbientIdeal(R, gens).contains(f)
    assert ours == oracles.homogeneous_member(f.terms, [g.terms for g in gens], 3, p)
    # products with generators are always members
    assert AmbientIdeal(R, gens).contains(gens[0] * f)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=3, max_size=4), st.integers(0, 10**6))
def test_quotient_length_matches_oracle(degrees, seed):
    p = 7
    R = PolyRing(p, ["x", "y", "z"])
    x, y, z = R.gens()
    extra = [_random_form(R, d, seed + i) for i, d in enumerate(degrees[3:])]
    gens = [x**degrees[0], y**degrees[1], z**degrees[2]] + extra
    gens = [g for g in gens if g]
    assert vspace_dimension(AmbientIdeal(R, gens)) == oracles.quotient_length([g.terms for g in gens], 3, p)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_groebner_order_independent(seed):
    p = 5
    R = PolyRing(p, ["x", "y", "z"])
    gens = [_random_form(R, 2, seed), _random_form(R, 2, seed + 1)]
    lex = R.with_order(type(R.order)("lex"))
    a = AmbientIdeal(R, gens)
    b = AmbientIdeal(lex, [g.to_ring(lex) for g in gens])
    for g in b.gb.generators:
        assert a.contains(g.to_ring(R))
    for g in a.gb.generators:
        assert b.contains(g.to_ring(lex))
