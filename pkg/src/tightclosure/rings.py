"""Graded quotient rings, parameter systems, test-element candidates, model families."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import (EmptyFamily, GradingError, PreconditionError, RingMismatch,
                     SingularEverywhere, ZeroRing)
from .field import PrimeChar
from .groebner import AmbientIdeal, GroebnerBasis, colon_ideal, krull_dimension
from .poly import MonomialOrder, Polynomial, PolyRing

log = logging.getLogger(__name__)

MAX_TEST_CANDIDATES = 20


class RingPresentation:
    """``F_p[x_1..x_n]/J`` with homogeneous relations under positive weights."""

    def __init__(self, ambient: PolyRing, relations: Sequence[Polynomial], asserted_domain=False):
        self.ambient = ambient
        self.char = ambient.char
        self.p = ambient.p
        self.names = ambient.names
        self.weights = ambient.weights
        self.nvars = ambient.nvars
        self.asserted_domain = bool(asserted_domain)
        rels = []
        for r in relations:
            r = r.to_ring(ambient) if r.ring != ambient else r
            if r and r not in rels:
                rels.append(r)
        self.relations = tuple(rels)
        for r in self.relations:
            if not r.is_homogeneous():
                raise GradingError(f"relation {r} is not homogeneous for weights {self.weights}")
        self.J = AmbientIdeal(ambient, self.relations)
        if self.J.is_unit():
            raise ZeroRing("relations generate the unit ideal")
        self.gb: GroebnerBasis = self.J.gb
        self.dim = krull_dimension(self.J)

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations) or "0"
        return f"F_{self.p}[{','.join(self.names)}]/({rels})"

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations

    def gens(self):
        return tuple(self.element(v) for v in self.ambient.gens())

    def var(self, name):
        return self.element(self.ambient.var(name))

    def element(self, f) -> "QuotientElement":
        if isinstance(f, QuotientElement):
            if f.ring is not self:
                raise RingMismatch("element of another presentation")
            return f
        if isinstance(f, int):
            f = self.ambient.const(f)
        return QuotientElement(self, f)

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = f.to_ring(self.ambient) if f.ring != self.ambient else f
        return self.gb.normal_form(f)

    def is_zero(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def ideal(self, gens: Iterable) -> "RingIdeal":
        return RingIdeal(self, gens)

    def adapted_order(self, polys: Iterable[Polynomial]) -> MonomialOrder:
        """Variables absent from ``polys`` become most significant.

        For a parameter-like ideal this puts the relations' leading terms in the
        remaining variables, which keeps bracket-power bases small.
        """
        used = set()
        for f in polys:
            used |= f.variables()
        base = self.ambient.order
        prio = tuple(range(self.nvars)) if base.priority is None else base.priority
        front = [i for i in prio if i not in used]
        back = [i for i in prio if i in used]
        return MonomialOrder(base.kind, tuple(front + back))

    def quotient(self, extra: Iterable[Polynomial]) -> "RingPresentation":
        extra = [e.to_ring(self.ambient) if e.ring != self.ambient else e for e in extra]
        return RingPresentation(self.ambient, self.relations + tuple(extra), self.asserted_domain)

    def hilbert_function(self, n: int) -> int:
        from .groebner import degree_slice_basis
        return len(degree_slice_basis(self.J, n))


class QuotientElement:
    """An element of a presentation, stored as its canonical normal form."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: RingPresentation, f: Polynomial):
        self.ring = ring
        self.rep = ring.normal_form(f)

    def _other(self, other):
        if isinstance(other, QuotientElement):
            if other.ring is not self.ring:
                raise RingMismatch("elements of different presentations")
            return other.rep
        if isinstance(other, int):
            return self.ring.ambient.const(other)
        if isinstance(other, Polynomial):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else QuotientElement(self.ring, self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else QuotientElement(self.ring, self.rep - o)

    def __neg__(self):
        return QuotientElement(self.ring, -self.rep)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else QuotientElement(self.ring, self.rep * o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QuotientElement(self.ring, self.ring.ambient.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, QuotientElement):
            return self.ring is other.ring and self.rep.terms == other.rep.terms
        if isinstance(other, (int, Polynomial)):
            return self == self.ring.element(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.rep.terms.items()))

    def __bool__(self):
        return bool(self.rep)

    def is_zero(self):
        return not self.rep

    def is_homogeneous(self):
        return self.rep.is_homogeneous()

    def degree(self):
        return self.rep.degree()

    def __repr__(self):
        return str(self.rep)


def _as_poly(R: RingPresentation, g) -> Polynomial:
    if isinstance(g, QuotientElement):
        return g.rep
    if isinstance(g, int):
        return R.ambient.const(g)
    return g.to_ring(R.ambient) if g.ring != R.ambient else g


class RingIdeal:
    """An ideal of a presentation; ``lift()`` is its preimage in the ambient ring."""

    def __init__(self, ring: RingPresentation, gens: Iterable):
        self.ring = ring
        out = []
        for g in gens:
            g = _as_poly(ring, g)
            if g and g not in out:
                out.append(g)
        self.generators = tuple(out)

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def lift(self, order: MonomialOrder | None = None) -> AmbientIdeal:
        amb = self.ring.ambient if order is None else self.ring.ambient.with_order(order)
        return AmbientIdeal(amb, [g.to_ring(amb) for g in self.generators + self.ring.relations])

    def contains(self, f) -> bool:
        return self.lift().contains(_as_poly(self.ring, f))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_unit(self) -> bool:
        return self.lift().is_unit()

    def is_m_primary(self) -> bool:
        return krull_dimension(self.lift()) == 0

    def with_generators(self, extra: Iterable) -> "RingIdeal":
        return RingIdeal(self.ring, self.generators + tuple(_as_poly(self.ring, e) for e in extra))

    def power(self, n: int) -> "RingIdeal":
        return RingIdeal(self.ring, _ambient_only(self.ring, AmbientIdeal(
            self.ring.ambient, self.generators).power(n)))

    def issubset(self, other: "RingIdeal") -> bool:
        gb = other.lift().gb
        return all(gb.contains(g) for g in self.generators)

    def equals(self, other: "RingIdeal") -> bool:
        return self.issubset(other) and other.issubset(self)

    def colon(self, f) -> "RingIdeal":
        f = _as_poly(self.ring, f)
        return RingIdeal(self.ring, _ambient_only(self.ring, colon_ideal(self.lift(), f)))

    def minimal_generators(self) -> "RingIdeal":
        """Drop generators already in the ideal of the others (greedy, homogeneous case)."""
        gens = sorted(self.generators, key=lambda g: (g.degree(), [self.ring.ambient.key(m) for m in g.terms]))
        keep: list[Polynomial] = []
        for g in gens:
            if not RingIdeal(self.ring, keep).contains(g):
                keep.append(g)
        return RingIdeal(self.ring, keep)


def _ambient_only(R: RingPresentation, I: AmbientIdeal) -> list[Polynomial]:
    """Generators of ``I`` reduced modulo the relations, zeros dropped."""
    out = []
    for g in I.generators:
        r = R.normal_form(g)
        if r and r not in out:
            out.append(r)
    return out


def present_ring(char, names: Sequence[str], weights: Sequence[int] | None = None,
                 relations: Iterable = (), domain: bool = False,
                 order: MonomialOrder | str = "grevlex") -> RingPresentation:
    ambient = PolyRing(char, names, weights, order)
    rels = []
    for r in relations:
        if callable(r):
            r = r(*ambient.gens())
        rels.append(r)
    return RingPresentation(ambient, rels, domain)


# ---------------------------------------------------------------------------
# parameter systems

@dataclass
class ParameterSystem:
    ring: RingPresentation
    elements: tuple
    verified: bool = False

    @property
    def polys(self) -> tuple[Polynomial, ...]:
        return tuple(_as_poly(self.ring, x) for x in self.elements)

    @property
    def full(self) -> bool:
        return self.verified and len(self.elements) == self.ring.dim

    def degrees(self) -> list[int]:
        return [f.degree() for f in self.polys]

    def ideal(self, t: int = 1) -> RingIdeal:
        return RingIdeal(self.ring, [f ** t for f in self.polys])


def is_parameter_system(R: RingPresentation, xs: Sequence) -> bool:
    polys = [_as_poly(R, x) for x in xs]
    if len(polys) > R.dim:
        return False
    for f in polys:
        if not f.is_homogeneous():
            raise PreconditionError(f"parameter {f} is not homogeneous")
    return krull_dimension(R.J.with_generators(polys)) == R.dim - len(polys)


def parameter_system(R: RingPresentation, xs: Sequence) -> ParameterSystem:
    ok = is_parameter_system(R, xs)
    return ParameterSystem(R, tuple(R.element(_as_poly(R, x)) for x in xs), ok)


@dataclass
class RegularSequenceReport:
    flags: list[bool]
    colon_generators: list[list[Polynomial]]

    @property
    def regular(self) -> bool:
        return all(self.flags)


def regular_sequence_check(R: RingPresentation, xs: ParameterSystem) -> RegularSequenceReport:
    """Entry i: whether ``((x_1..x_i) + J) : x_{i+1}`` collapses to ``(x_1..x_i) + J``."""
    if not xs.verified:
        raise PreconditionError("parameter system is not verified")
    polys = xs.polys
    flags, colons = [], []
    for i in range(len(polys)):
        base = R.J.with_generators(polys[:i])
        col = colon_ideal(base, polys[i])
        colons.append(list(col.generators))
        flags.append(col.issubset(base))
    return RegularSequenceReport(flags, colons)


# ---------------------------------------------------------------------------
# test-element candidates

def _det(rows: list[list[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    total = ring.zero()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(R: RingPresentation) -> list[Polynomial]:
    """Nonzero size-(n-d) minors of the relation Jacobian, as ambient polynomials."""
    amb = R.ambient
    codim = R.nvars - R.dim
    if codim == 0:
        return [amb.one()]
    rels = list(R.relations)
    if len(rels) < codim:
        rels = list(R.gb.generators)
    jac = [[r.derivative(i) for i in range(R.nvars)] for r in rels]
    out = []
    for rows in combinations(range(len(rels)), codim):
        for cols in combinations(range(R.nvars), codim):
            m = _det([[jac[r][c] for c in cols] for r in rows], amb)
            if m:
                out.append(m)
    return out


def jacobian_test_candidates(R: RingPresentation, require_domain: bool = True,
                             limit: int = MAX_TEST_CANDIDATES) -> list[QuotientElement]:
    if require_domain and not (R.asserted_domain or R.is_polynomial_ring):
        raise PreconditionError("test-element candidates need an asserted domain")
    seen = {}
    for m in jacobian_minors(R):
        r = R.normal_form(m)
        if not r:
            continue
        r = r.monic()
        seen.setdefault(frozenset(r.terms.items()), r)
    if not seen:
        raise SingularEverywhere(f"every Jacobian minor vanishes in {R}")
    key = R.ambient.key
    cands = sorted(seen.values(), key=lambda f: (f.degree(), len(f), [key(m) for m, _ in f.sorted_terms()]))
    return [R.element(f) for f in cands[:limit]]


# ---------------------------------------------------------------------------
# model families

@dataclass
class IntegerPresentation:
    """Relations with integer coefficients: ``{exponent tuple: int}`` dicts."""

    names: tuple
    weights: tuple | None
    relations: tuple
    domain: bool = False
    order: str = "grevlex"

    def __post_init__(self):
        self.names = tuple(self.names)
        self.weights = tuple(self.weights) if self.weights else (1,) * len(self.names)
        rels = []
        for r in self.relations:
            r = {tuple(m): c for m, c in dict(r).items() if c}
            den = 1
            for c in r.values():
                if isinstance(c, Fraction):
                    den = den * c.denominator // gcd(den, c.denominator)
            rels.append({m: int(c * den) for m, c in r.items()})
        self.relations = tuple(rels)

    def fiber(self, p: int) -> RingPresentation:
        amb = PolyRing(p, self.names, self.weights, self.order)
        return RingPresentation(amb, [amb.poly(r) for r in self.relations], self.domain)


@dataclass
class Fiber:
    prime: int
    ring: RingPresentation
    flags: list[str] = field(default_factory=list)


@dataclass
class SkipRecord:
    prime: int
    reason: str
    detail: str = ""


@dataclass
class ModelFamily:
    presentation: IntegerPresentation
    primes: tuple
    fibers: list[Fiber]
    skipped: list[SkipRecord]

    def fiber(self, p: int) -> Fiber | None:
        for f in self.fibers:
            if f.prime == p:
                return f
        return None


def reduce_model_family(pres: IntegerPresentation, primes: Sequence[int]) -> ModelFamily:
    primes = tuple(primes)
    if not primes:
        raise EmptyFamily("no primes given")
    fibers, skipped = [], []
    for p in primes:
        PrimeChar(p)
        dead = [r for r in pres.relations if all(c % p == 0 for c in r.values())]
        if dead:
            skipped.append(SkipRecord(p, "relation-vanishes", f"{len(dead)} relation(s) vanish mod {p}"))
            continue
        try:
            R = pres.fiber(p)
        except (ZeroRing, GradingError) as exc:
            skipped.append(SkipRecord(p, exc.code, str(exc)))
            continue
        flags = []
        try:
            jacobian_test_candidates(R, require_domain=False)
        except SingularEverywhere as exc:
            if R.asserted_domain:
                skipped.append(SkipRecord(p, "jacobian-degenerate", str(exc)))
                continue
            flags.append("jacobian-drop")
        fibers.append(Fiber(p, R, flags))
    return ModelFamily(pres, primes, fibers, skipped)
