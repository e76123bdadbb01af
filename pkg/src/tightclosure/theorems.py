"""Executable checks of the classical tight-closure theorems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .closure import (IN_PROVED, LIKELY_IN, OUT_EVIDENCE, UNDETERMINED, ClosureConfig,
                      HullResult, tc_hull, tc_membership)
from .errors import DegenerateJacobian, NotMonomial, PreconditionError
from .groebner import AmbientIdeal, _Reducer, colon_ideal, minimalize_monomials
from .newton import (NewtonRegion, integral_closure_exponents, monomial_exponents,
                     monomial_power_exponents, newton_region)
from .poly import Polynomial
from .rings import ParameterSystem, RingIdeal, RingPresentation, is_parameter_system

# worst first
_SEVERITY = {OUT_EVIDENCE: 3, UNDETERMINED: 2, LIKELY_IN: 1, IN_PROVED: 0}


def worst_status(statuses) -> str:
    statuses = list(statuses)
    if not statuses:
        return IN_PROVED
    return max(statuses, key=_SEVERITY.__getitem__)


def _colon_in_ring(R: RingPresentation, gens: Sequence[Polynomial], f: Polynomial) -> list[Polynomial]:
    col = colon_ideal(R.J.with_generators(gens), f)
    out = []
    for g in col.generators:
        r = R.normal_form(g)
        if r and r not in out:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# colon capturing

@dataclass
class ColonCaptureReport:
    parameters: tuple
    index: int
    colon_generators: list
    outside: list  # [(generator, ClosureVerdict)]

    @property
    def worst(self) -> str:
        return worst_status(v.status for _, v in self.outside)

    @property
    def captured(self) -> bool:
        return all(v.status != OUT_EVIDENCE for _, v in self.outside)

    def to_dict(self):
        return {
            "parameters": [str(x) for x in self.parameters],
            "index": self.index,
            "colon_generators": [str(g) for g in self.colon_generators],
            "outside": [{"generator": str(g), "verdict": v.to_dict()} for g, v in self.outside],
            "captured": self.captured,
        }


def colon_capture_report(R: RingPresentation, xs: ParameterSystem, i: int,
                         config: ClosureConfig | None = None) -> ColonCaptureReport:
    """Check ``(x_1..x_i) : x_{i+1} ⊆ (x_1..x_i)*`` for one index."""
    if not xs.verified:
        raise PreconditionError("parameter system is not verified")
    polys = xs.polys
    if not 0 <= i < len(polys):
        raise PreconditionError(f"index {i} outside 0..{len(polys) - 1}")
    base = list(polys[:i])
    colon = _colon_in_ring(R, base, polys[i])
    plain = RingIdeal(R, base)
    outside = []
    for g in colon:
        if plain.contains(g):
            continue
        # re-check: an outside generator must fail plain membership
        assert not R.J.with_generators(base).contains(g)
        outside.append((g, tc_membership(R, plain, g, config)))
    return ColonCaptureReport(tuple(polys), i, colon, outside)


@dataclass
class MonomialColonSummary:
    t: int
    colon_generators: list
    verdicts: list  # [(generator, ClosureVerdict)]

    @property
    def worst(self) -> str:
        return worst_status(v.status for _, v in self.verdicts)

    def to_dict(self):
        return {"t": self.t, "colon_generators": [str(g) for g in self.colon_generators],
                "worst": self.worst,
                "verdicts": [{"generator": str(g), "verdict": v.to_dict()} for g, v in self.verdicts]}


def monomial_colon_check(R: RingPresentation, xs: ParameterSystem, t: int,
                         config: ClosureConfig | None = None) -> MonomialColonSummary:
    """``(x_0^t..x_d^t) : (x_0...x_d)`` against ``(x_0^{t-1}..x_d^{t-1})*``."""
    if t < 2:
        raise PreconditionError("t must be at least 2")
    if not xs.full:
        raise PreconditionError("need a verified full parameter system")
    polys = xs.polys
    prod = R.ambient.one()
    for x in polys:
        prod = prod * x
    colon = _colon_in_ring(R, [x ** t for x in polys], prod)
    target = RingIdeal(R, [x ** (t - 1) for x in polys])
    verdicts = [(g, tc_membership(R, target, g, config)) for g in colon]
    return MonomialColonSummary(t, colon, verdicts)


# ---------------------------------------------------------------------------
# integral closure of monomial ideals

def definitional_witness(exps: Sequence[tuple], b: Sequence[int], k_max: int) -> int | None:
    """Smallest ``k <= k_max`` with ``x^(k b) in I^k`` (monomial case, c = 1)."""
    power = [tuple(0 for _ in b)]
    for k in range(1, k_max + 1):
        power = minimalize_monomials(tuple(x + y for x, y in zip(c, e)) for c in power for e in exps)
        kb = tuple(k * v for v in b)
        if any(all(x <= y for x, y in zip(g, kb)) for g in power):
            return k
    return None


@dataclass
class IntegralClosureResult:
    ideal: AmbientIdeal
    region: NewtonRegion
    witnesses: dict  # generator exponent -> k or None

    @property
    def verified(self) -> bool:
        return all(k is not None for k in self.witnesses.values())


def monomial_integral_closure(I: AmbientIdeal, k_max: int = 8) -> IntegralClosureResult:
    exps = monomial_exponents(I)
    ring = I.ring
    if not exps:
        raise NotMonomial("zero ideal has no Newton region")
    region = newton_region(exps)
    closed = integral_closure_exponents(exps)
    witnesses = {b: definitional_witness(exps, b, k_max) for b in closed}
    return IntegralClosureResult(AmbientIdeal(ring, [ring.monomial(b) for b in closed]), region, witnesses)


@dataclass
class BrianconSkodaReport:
    mu: int
    closure_generators: list
    violators: list

    @property
    def holds(self) -> bool:
        return not self.violators

    def to_dict(self):
        return {"mu": self.mu, "closure_generators": [str(g) for g in self.closure_generators],
                "violators": [str(g) for g in self.violators], "holds": self.holds}


def briancon_skoda_check(I: AmbientIdeal) -> BrianconSkodaReport:
    """Regular ambient ring: the closure of ``I^mu`` must sit inside ``I``."""
    exps = monomial_exponents(I)
    mu = len(exps)
    ring = I.ring
    closed = integral_closure_exponents(monomial_power_exponents(exps, mu))
    gens = [ring.monomial(b) for b in closed]
    violators = [g for g in gens if not I.contains(g)]
    return BrianconSkodaReport(mu, gens, violators)


# ---------------------------------------------------------------------------
# Mather's problem

class _CountingReducer(_Reducer):
    __slots__ = ("steps",)

    def __init__(self, ring):
        super().__init__(ring)
        self.steps = 0

    def divisor(self, m):
        idx = super().divisor(m)
        if idx >= 0:
            self.steps += 1
        return idx


@dataclass
class MatherResult:
    holds: bool
    power: int
    jacobian: list
    reduction_steps: int
    good_prime: bool

    def to_dict(self):
        return {"holds": self.holds, "power": self.power, "jacobian": [str(g) for g in self.jacobian],
                "reduction_steps": self.reduction_steps, "good_prime": self.good_prime}


def mather_check(f: Polynomial) -> MatherResult:
    """Whether ``f^n`` lies in the ideal of partial derivatives (n = number of variables)."""
    if f.is_constant():
        raise PreconditionError("f must be nonconstant")
    ring = f.ring
    partials = [f.derivative(i) for i in range(ring.nvars)]
    if not any(partials):
        raise DegenerateJacobian(f"every partial derivative of {f} vanishes mod {ring.p}")
    jac = AmbientIdeal(ring, [g for g in partials if g])
    n = ring.nvars
    gb = jac.gb
    reducer = _CountingReducer(gb.ring)
    for lm, poly in zip(gb.leading_monomials, gb.generators):
        reducer.add(lm, poly.terms)
    rem = reducer.reduce((f ** n).to_ring(gb.ring).terms)
    return MatherResult(not rem, n, list(jac.generators), reducer.steps, ring.p > f.degree())


# ---------------------------------------------------------------------------
# F-regularity probes

@dataclass
class ProbeSample:
    ideal: RingIdeal
    hull: HullResult

    @property
    def closed(self) -> bool:
        return not self.hull.added

    def to_dict(self):
        return {"ideal": [str(g) for g in self.ideal.generators], "closed": self.closed,
                "extra": [str(g) for g in self.hull.added], "fixed_point": self.hull.fixed_point}


@dataclass
class ProbeReport:
    kind: str
    samples: list = field(default_factory=list)

    @property
    def counterexamples(self):
        return [s for s in self.samples if not s.closed]

    @property
    def headline(self) -> str:
        if self.counterexamples:
            return f"{len(self.counterexamples)} sample(s) not tightly closed at the bound"
        return "no counterexample found among samples"

    def to_dict(self):
        return {"kind": self.kind, "headline": self.headline, "samples": [s.to_dict() for s in self.samples]}


def f_regular_probe(R: RingPresentation, samples: Sequence[RingIdeal], bound: int,
                    config: ClosureConfig | None = None) -> ProbeReport:
    report = ProbeReport("weakly-F-regular")
    for I in samples:
        b = max([bound] + [g.degree() for g in I.generators])
        report.samples.append(ProbeSample(I, tc_hull(R, I, b, config)))
    return report


def f_rational_probe(R: RingPresentation, samples: Sequence[RingIdeal], bound: int,
                     config: ClosureConfig | None = None) -> ProbeReport:
    for I in samples:
        if not is_parameter_system(R, I.generators):
            raise PreconditionError(f"{I} is not generated by part of a system of parameters")
    report = f_regular_probe(R, samples, bound, config)
    report.kind = "F-rational"
    return report
