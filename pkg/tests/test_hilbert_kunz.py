from fractions import Fraction

import pytest

from tightclosure.errors import NotCofinite, NotNested, PreconditionError
from tightclosure.hilbert_kunz import decimal6, hk_compare, hk_length, hk_table, hs_table
from tightclosure.rings import present_ring

import oracles
from conftest import fermat


def test_decimal6():
    assert decimal6(Fraction(1, 3)) == "0.333333"
    assert decimal6(Fraction(0)) == "0"
    assert decimal6(Fraction(9, 4)) == "2.25"


def test_polynomial_ring_lengths():
    R = present_ring(3, ["x", "y"])
    x, y = R.gens()
    table = hk_table(R, R.ideal([x, y]), 3)
    assert table.lengths == [1, 9, 81, 729]
    assert all(r.normalized == 1 for r in table.rows)
    assert table.delta == 0


def test_fermat_golden(golden):
    F = fermat(5)
    g = golden("fermat_hk_p5")
    table = hk_table(F, F.ideal(F.gens()), 3)
    assert table.lengths == [r["length"] for r in g["rows"]]
    # the golden file itself is the oracle's output
    assert [oracles.fermat_length(5, r["q"], r["q"]) for r in g["rows"]] == table.lengths


def test_fermat_hs_golden(golden):
    F = fermat(5)
    table = hs_table(F, F.ideal(F.gens()), 4)
    assert [r.length for r in table.rows] == [r["length"] for r in golden("fermat_hs_p5")["rows"]]
    assert oracles.fermat_hs_length(5, 3) == table.rows[2].length


def test_compare_golden(golden, fermat7):
    x, y, z = fermat7.gens()
    g = golden("fermat_hk_compare_p7")["rows"]
    small = fermat7.ideal([x, y, z**3])
    big = fermat7.ideal([x, y, z**2])
    cmp = hk_compare(fermat7, small, big, 2)
    assert [r["length"] for r in cmp.rows] == [r["xy"] for r in g[:3]]
    assert [r["length_bigger"] for r in cmp.rows] == [r["xyz2"] for r in g[:3]]
    assert not cmp.all_equal
    with pytest.raises(NotNested):
        hk_compare(fermat7, big, small, 1)


def test_errors():
    R = present_ring(5, ["x", "y"])
    x, y = R.gens()
    with pytest.raises(NotCofinite):
        hk_table(R, R.ideal([x]), 1)
    with pytest.raises(PreconditionError):
        hk_table(R, R.ideal([x + y**2, y]), 1)
    assert hk_length(R, R.ideal([x**2, y]), 1) == 50
