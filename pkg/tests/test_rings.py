import pytest

from tightclosure.errors import EmptyFamily, GradingError, PreconditionError, SingularEverywhere, ZeroRing
from tightclosure.poly import PolyRing
from tightclosure.rings import (IntegerPresentation, is_parameter_system, jacobian_test_candidates,
                                parameter_system, present_ring, reduce_model_family, regular_sequence_check)

from conftest import cusp, fermat, toric

FERMAT_Z = IntegerPresentation(("x", "y", "z"), None, ({(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): -1},), True)


def test_presentation_basics():
    F = fermat(5)
    assert F.dim == 2
    x, y, z = F.gens()
    assert z**3 == x**3 + y**3
    assert present_ring(5, ["x", "y"]).dim == 2
    assert cusp().dim == 1
    assert toric().dim == 2


def test_presentation_errors():
    with pytest.raises(GradingError):
        present_ring(5, ["x", "y"], relations=[lambda x, y: x**2 - y])
    with pytest.raises(ZeroRing):
        present_ring(5, ["x"], relations=[lambda x: x**0])


def test_parameter_systems():
    F = fermat(7)
    x, y, z = F.gens()
    assert is_parameter_system(F, [x, y])
    assert not is_parameter_system(F, [x, x])
    assert not is_parameter_system(F, [x, y, z])
    assert parameter_system(F, [x, y]).full
    assert not parameter_system(F, [x]).full
    with pytest.raises(PreconditionError):
        is_parameter_system(F, [x + y**2])


def test_regular_sequences():
    F = fermat(7)
    x, y, _ = F.gens()
    assert regular_sequence_check(F, parameter_system(F, [x, y])).regular
    T = toric()
    a, b, c, d = T.gens()
    report = regular_sequence_check(T, parameter_system(T, [a, d]))
    assert report.flags == [True, False]
    with pytest.raises(PreconditionError):
        regular_sequence_check(T, parameter_system(T, [a, a]))


def test_jacobian_candidates():
    F = fermat(7)
    cands = [str(c) for c in jacobian_test_candidates(F)]
    assert sorted(cands) == ["x^2", "y^2", "z^2"]
    with pytest.raises(PreconditionError):
        jacobian_test_candidates(present_ring(7, ["x", "y"], relations=[lambda x, y: x * y]))
    with pytest.raises(SingularEverywhere):
        jacobian_test_candidates(fermat(3))
    assert [str(c) for c in jacobian_test_candidates(present_ring(5, ["x"]))] == ["1"]


def test_model_family():
    fam = reduce_model_family(FERMAT_Z, (2, 3, 5, 7, 11, 13))
    assert [f.prime for f in fam.fibers] == [2, 5, 7, 11, 13]
    assert [s.prime for s in fam.skipped] == [3]
    assert fam.fiber(3) is None
    with pytest.raises(EmptyFamily):
        reduce_model_family(FERMAT_Z, ())


def test_model_family_vanishing_relation():
    pres = IntegerPresentation(("x", "y"), None, ({(2, 0): 2, (0, 2): 4},))
    fam = reduce_model_family(pres, (2, 3))
    assert [s.reason for s in fam.skipped] == ["relation-vanishes"]
    assert [f.prime for f in fam.fibers] == [3]


def test_quotient_elements():
    R = present_ring(5, ["x", "y"], relations=[lambda x, y: x * y])
    x, y = R.gens()
    assert not (x * y)
    assert (x + y) ** 2 == x**2 + y**2
    amb = PolyRing(5, ["x", "y"])
    assert R.normal_form(amb.gens()[0] * amb.gens()[1]).is_zero()
