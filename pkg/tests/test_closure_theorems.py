import pytest

from tightclosure.closure import IN_PROVED, LIKELY_IN, OUT_EVIDENCE, UNDETERMINED
from tightclosure.errors import DegenerateJacobian, PreconditionError
from tightclosure.groebner import AmbientIdeal
from tightclosure.poly import PolyRing
from tightclosure.rings import parameter_system, present_ring
from tightclosure.theorems import (briancon_skoda_check, colon_capture_report, definitional_witness,
                                   f_rational_probe, f_regular_probe, mather_check,
                                   monomial_colon_check, monomial_integral_closure, worst_status)

from conftest import cusp, toric


def test_worst_status():
    assert worst_status([IN_PROVED, LIKELY_IN]) == LIKELY_IN
    assert worst_status([LIKELY_IN, OUT_EVIDENCE, UNDETERMINED]) == OUT_EVIDENCE
    assert worst_status([]) == IN_PROVED


def test_colon_capture_toric():
    T = toric()
    a, b, c, d = T.gens()
    xs = parameter_system(T, [a, d])
    assert colon_capture_report(T, xs, 0).outside == []
    rep = colon_capture_report(T, xs, 1)
    assert [str(g) for g, _ in rep.outside] == ["b^2"]
    assert rep.captured and rep.worst in (IN_PROVED, LIKELY_IN)
    with pytest.raises(PreconditionError):
        colon_capture_report(T, xs, 2)


def test_monomial_colon(fermat7):
    S = present_ring(7, ["x", "y", "z"])
    x, y, z = S.gens()
    summ = monomial_colon_check(S, parameter_system(S, [x, y, z]), 3)
    assert sorted(str(g) for g in summ.colon_generators) == ["x^2", "y^2", "z^2"]
    X, Y, _ = fermat7.gens()
    assert monomial_colon_check(fermat7, parameter_system(fermat7, [X, Y]), 2).worst != OUT_EVIDENCE
    with pytest.raises(PreconditionError):
        monomial_colon_check(S, parameter_system(S, [x, y, z]), 1)


def test_integral_closure():
    A = PolyRing(5, ["x", "y"])
    x, y = A.gens()
    res = monomial_integral_closure(AmbientIdeal(A, [x**3, y**3]))
    assert sorted(str(g) for g in res.ideal.generators) == sorted(["x^3", "x^2*y", "x*y^2", "y^3"])
    assert res.verified
    assert definitional_witness([(2, 0), (0, 2)], (1, 1), 4) == 2
    assert definitional_witness([(4, 0), (0, 4)], (3, 1), 4) == 4
    assert definitional_witness([(2, 0), (0, 2)], (1, 0), 6) is None


def test_briancon_skoda():
    A = PolyRing(3, ["x", "y"])
    x, y = A.gens()
    rep = briancon_skoda_check(AmbientIdeal(A, [x**2, x * y**3, y**4]))
    assert rep.mu == 3 and rep.holds


def test_mather():
    P = PolyRing(7, ["x", "y"])
    x, y = P.gens()
    res = mather_check(x**3 + y**3)
    assert res.holds and res.power == 2 and res.good_prime
    Q = PolyRing(3, ["x", "y"])
    u, v = Q.gens()
    with pytest.raises(DegenerateJacobian):
        mather_check(u**3 + v**3)
    with pytest.raises(PreconditionError):
        mather_check(P.one())


def test_probes(fermat7):
    C = cusp()
    a, b = C.gens()
    rep = f_regular_probe(C, [C.ideal([a])], 3)
    assert [str(g) for g in rep.counterexamples[0].hull.added] == ["b"]
    R = present_ring(5, ["x", "y"])
    x, y = R.gens()
    ok = f_rational_probe(R, [R.ideal([x]), R.ideal([x, y])], 2)
    assert ok.headline == "no counterexample found among samples"
    with pytest.raises(PreconditionError):
        f_rational_probe(R, [R.ideal([x, x + y, y])], 2)
    X, Y, _ = fermat7.gens()
    rep = f_rational_probe(fermat7, [fermat7.ideal([X, Y])], 2)
    assert [str(g) for g in rep.counterexamples[0].hull.added] == ["z^2"]
