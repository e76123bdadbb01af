"""Top local cohomology of graded rings through Cech fractions ``[z / x^t]``.

A class ``[z / (x_0...x_d)^t]`` vanishes iff ``x^s z`` lies in
``(x_0^(t+s), ..., x_d^(t+s))`` for some ``s``.  When the parameters form a
regular sequence the test collapses to ``s = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .closure import ClosureConfig, ClosureVerdict, OUT_EVIDENCE, tc_hull, tc_membership
from .errors import DegreeTooSmall, NotComputed, ParameterError, PreconditionError
from .groebner import degree_slice_basis, hilbert_numerator
from .poly import Polynomial
from .rings import (ParameterSystem, RingIdeal, RingPresentation, _as_poly, is_parameter_system,
                    parameter_system, regular_sequence_check)

ZERO = "ZERO"
NONZERO_PROVED = "NONZERO_PROVED"
NONZERO_UP_TO = "NONZERO_UP_TO"


def _cm_certified(S: RingPresentation, xs: ParameterSystem) -> bool:
    cache = S.__dict__.setdefault("_cm_cache", {})
    key = tuple(frozenset(f.terms.items()) for f in xs.polys)
    if key not in cache:
        cache[key] = xs.full and regular_sequence_check(S, xs).regular
    return cache[key]


@dataclass
class CechFraction:
    ring: RingPresentation
    numerator: Polynomial
    t: int
    params: ParameterSystem

    @property
    def degree(self) -> int:
        return self.numerator.degree() - self.t * sum(self.params.degrees())

    def bracket_ideal(self, extra: int = 0) -> RingIdeal:
        return self.params.ideal(self.t + extra)

    def __str__(self):
        xs = "".join(f"({x})" if len(x.terms) > 1 else str(x) for x in self.params.polys)
        den = f"({xs})" if len(self.params.polys) > 1 else xs
        return f"[{self.numerator} / {den}^{self.t}]"

    def to_dict(self):
        return {"fraction": str(self), "degree": self.degree, "t": self.t}


def lc_fraction(S: RingPresentation, z, t: int, xs) -> CechFraction:
    if not isinstance(xs, ParameterSystem):
        xs = parameter_system(S, xs)
    if t < 1:
        raise ParameterError("exponent t must be at least 1")
    if not xs.full:
        raise ParameterError("need a verified full system of parameters")
    if any(d != 1 for d in xs.degrees()):
        raise ParameterError("parameters must have degree 1")
    z = S.normal_form(_as_poly(S, z))
    if z and not z.is_homogeneous():
        raise PreconditionError("numerator must be homogeneous")
    return CechFraction(S, z, t, xs)


@dataclass
class LCZeroVerdict:
    status: str
    method: str
    s: int | None = None

    def to_dict(self):
        return {"status": self.status, "method": self.method, "s": self.s}


def _vanishes_at(eta: CechFraction, s: int) -> bool:
    S = eta.ring
    prod = S.ambient.one()
    for x in eta.params.polys:
        prod = prod * x
    lifted = eta.bracket_ideal(s).lift()
    return lifted.contains(prod ** s * eta.numerator)


def lc_zero_test(eta: CechFraction, s_max: int = 3) -> LCZeroVerdict:
    if s_max < 0:
        raise PreconditionError("s_max must be non-negative")
    if not eta.numerator:
        return LCZeroVerdict(ZERO, "numerator", 0)
    if _cm_certified(eta.ring, eta.params):
        if _vanishes_at(eta, 0):
            return LCZeroVerdict(ZERO, "cohen-macaulay", 0)
        return LCZeroVerdict(NONZERO_PROVED, "cohen-macaulay")
    for s in range(s_max + 1):
        if _vanishes_at(eta, s):
            return LCZeroVerdict(ZERO, "search", s)
    return LCZeroVerdict(NONZERO_UP_TO, "search", s_max)


def lc_frobenius(eta: CechFraction, e: int) -> CechFraction:
    if e < 0:
        raise PreconditionError("e must be non-negative")
    q = eta.ring.p ** e
    return CechFraction(eta.ring, eta.ring.normal_form(eta.numerator.frobenius(e)), eta.t * q, eta.params)


def zero_star_test(eta: CechFraction, config: ClosureConfig | None = None) -> ClosureVerdict:
    return tc_membership(eta.ring, eta.bracket_ideal(), eta.numerator, config)


# ---------------------------------------------------------------------------
# a-invariant

def find_parameter_system(S: RingPresentation) -> ParameterSystem | None:
    """A full homogeneous parameter system made of variables, if one exists."""
    gens = S.gens()
    for combo in combinations(range(len(gens)), S.dim):
        xs = [gens[i] for i in combo]
        if is_parameter_system(S, xs):
            return parameter_system(S, xs)
    return None


def a_invariant(S: RingPresentation, xs: ParameterSystem | None = None) -> int:
    xs = xs or find_parameter_system(S)
    if xs is None or not xs.full:
        raise NotComputed("no parameter system of variables found; pass one explicitly")
    if not _cm_certified(S, xs):
        raise NotComputed("the parameters are not a regular sequence, so the ring is not "
                          "certified Cohen-Macaulay; the Hilbert series does not give the a-invariant")
    num = hilbert_numerator(S.gb.leading_monomials, S.ambient.weights)
    return max(num) - sum(S.ambient.weights)


# ---------------------------------------------------------------------------
# Fujita probe

@dataclass
class FujitaClass:
    numerator: Polynomial
    witness: Polynomial | None
    star: ClosureVerdict | None = None

    def to_dict(self):
        return {"numerator": str(self.numerator),
                "witness": None if self.witness is None else str(self.witness),
                "zero_star": None if self.star is None else self.star.to_dict()}


@dataclass
class FujitaReport:
    n: int
    t: int
    classes: list
    kernel_dim: int
    dims: dict = field(default_factory=dict)  # t -> dimension of the degree -n slice
    requested_t: int | None = None

    @property
    def stable(self) -> bool:
        return self.dims.get(self.t) == self.dims.get(self.t + 1)

    @property
    def all_detected(self) -> bool:
        return self.kernel_dim == 0 and all(c.witness is not None for c in self.classes)

    @property
    def step_one_ok(self) -> bool:
        return all(c.star is None or c.star.status != OUT_EVIDENCE for c in self.classes)

    def to_dict(self):
        return {"degree": -self.n, "t": self.t, "requested_t": self.requested_t, "stable": self.stable,
                "classes": [c.to_dict() for c in self.classes],
                "kernel_dim": self.kernel_dim, "all_detected": self.all_detected,
                "step_one_ok": self.step_one_ok,
                "slice_dims": {str(k): v for k, v in sorted(self.dims.items())}}


def _slice_numerators(S: RingPresentation, xs: ParameterSystem, t: int, n: int) -> list[Polynomial]:
    deg = t * len(xs.polys) - n
    if deg < 0:
        return []
    lifted = xs.ideal(t).lift()
    return [S.ambient.monomial(m) for m in degree_slice_basis(lifted, deg)]


def fujita_probe(S: RingPresentation, n: int, t: int, xs: ParameterSystem | None = None,
                 config: ClosureConfig | None = None, auto_t: bool = True) -> FujitaReport:
    """Degree ``-n`` classes of top local cohomology and their multiples of degree ``-(d+1)``."""
    dim = S.dim
    if n <= dim:
        raise PreconditionError(f"need n > d+1 = {dim}")
    xs = xs or find_parameter_system(S)
    if xs is None or not xs.full or any(d != 1 for d in xs.degrees()):
        raise ParameterError("need a full degree-1 parameter system")
    if not _cm_certified(S, xs):
        raise PreconditionError("fujita_probe needs the Cohen-Macaulay fast path")
    if t * dim < n:
        raise PreconditionError(f"t = {t} too small for degree -{n}")
    requested = t
    dims = {t: len(_slice_numerators(S, xs, t, n))}
    if auto_t:
        # raise t until the slice model stops growing
        while t < 4 * n + 4:
            dims[t + 1] = len(_slice_numerators(S, xs, t + 1, n))
            if dims[t + 1] == dims[t]:
                break
            t += 1
    lifted = xs.ideal(t).lift()
    gb = lifted.gb
    nums = _slice_numerators(S, xs, t, n)
    mults = [S.ambient.monomial(m) for m in degree_slice_basis(S.J, n - dim, S.gb)]
    classes = []
    rows = []
    for z in nums:
        witness = None
        row = {}
        for j, s in enumerate(mults):
            r = gb.normal_form(s * z)
            if r and witness is None:
                witness = s
            for m, c in r.terms.items():
                row[(j, m)] = c
        rows.append(row)
        classes.append(FujitaClass(z, witness))
    # columns: (multiplier, monomial) pairs
    cols = sorted({k for r in rows for k in r}, key=lambda k: (k[0], k[1]))
    index = {k: i for i, k in enumerate(cols)}
    kernel = linalg.kernel([{index[k]: v for k, v in r.items()} for r in rows], S.p)
    for c in classes:
        if c.witness is None:
            c.star = zero_star_test(CechFraction(S, c.numerator, t, xs), config)
    dims.setdefault(t + 1, len(_slice_numerators(S, xs, t + 1, n)))
    return FujitaReport(n, t, classes, len(kernel), dims, requested)


# ---------------------------------------------------------------------------
# Kodaira-type containment

@dataclass
class KodairaReport:
    parameters: list
    D: int
    bound: int
    left: list
    right: list
    violations: list

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"parameters": [str(x) for x in self.parameters], "D": self.D, "bound": self.bound,
                "left_hull": [str(g) for g in self.left], "right_hull": [str(g) for g in self.right],
                "violations": [str(g) for g in self.violations], "holds": self.holds,
                "mode": "heuristic"}


def kodaira_tc_check(S: RingPresentation, xs, bound: int, config: ClosureConfig | None = None,
                     a: int | None = None) -> KodairaReport:
    """Slice-wise ``(x_0..x_k)* ⊆ Σ_i (x_0..x̂_i..x_k)*`` below degree ``D = Σ deg x_i``."""
    polys = [S.normal_form(_as_poly(S, x)) for x in xs]
    if not polys:
        raise PreconditionError("need at least one element")
    if len(polys) > S.dim or not is_parameter_system(S, polys):
        raise PreconditionError("elements must be part of a homogeneous system of parameters")
    a = a_invariant(S) if a is None else a
    for x in polys:
        if x.degree() <= a:
            raise DegreeTooSmall(f"deg({x}) = {x.degree()} is not larger than a = {a}")
    D = sum(x.degree() for x in polys)
    top = min(bound, D - 1)
    left_ideal = RingIdeal(S, polys)
    left = tc_hull(S, left_ideal, max(top, max(x.degree() for x in polys)), config).generators
    right: list[Polynomial] = []
    for i in range(len(polys)):
        rest = polys[:i] + polys[i + 1:]
        if rest:
            b = max(top, max(x.degree() for x in rest))
            right.extend(tc_hull(S, RingIdeal(S, rest), b, config).generators)
    rhs = RingIdeal(S, right)
    violations = [g for g in left if g.degree() < D and not rhs.contains(g)]
    return KodairaReport(polys, D, bound, left, right, violations)
