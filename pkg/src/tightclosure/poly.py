"""Monomial orders and sparse multivariate polynomials over F_p.

Polynomials are immutable.  Terms live in a dict ``{exponent tuple: residue}``
with residues in ``[1, p)``; the descending term list under the ring's order
is produced on demand and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ExponentOverflow, RingMismatch
from .field import PrimeChar, inv_mod

# Exponents are bounded like 32-bit machine integers; exceeding this is a
# reported error rather than silently growing.
MAX_EXPONENT = (1 << 31) - 1

ORDER_KINDS = ("lex", "grlex", "grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    ``priority`` lists variable indices from most to least significant.
    ``eliminate`` names variables placed in a leading block (elimination order).
    """

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None
    eliminate: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key_function(self, nvars: int, weights: Sequence[int]):
        return self.key_functions(nvars, weights)[0]

    def key_functions(self, nvars: int, weights: Sequence[int]):
        """Return ``(key, negkey)``: sort keys for ascending and descending order."""
        prio = tuple(range(nvars)) if self.priority is None else self.priority
        if sorted(prio) != list(range(nvars)):
            raise ValueError(f"priority {prio} is not a permutation of {nvars} variables")
        w = tuple(weights)
        rev = tuple(reversed(prio))
        unit = all(x == 1 for x in w)

        def wdeg(e):
            return sum(e) if unit else sum([a * b for a, b in zip(e, w)])

        if self.kind == "lex":
            def base(e):
                return tuple([e[i] for i in prio])

            def nbase(e):
                return tuple([-e[i] for i in prio])
        elif self.kind == "grlex":
            def base(e):
                return (wdeg(e), tuple([e[i] for i in prio]))

            def nbase(e):
                return (-wdeg(e), tuple([-e[i] for i in prio]))
        else:
            def base(e):
                return (wdeg(e), tuple([-e[i] for i in rev]))

            def nbase(e):
                return (-wdeg(e), tuple([e[i] for i in rev]))

        if not self.eliminate:
            return base, nbase
        elim = self.eliminate

        def key(e):
            return (tuple([e[i] for i in elim]), base(e))

        def nkey(e):
            return (tuple([-e[i] for i in elim]), nbase(e))

        return key, nkey

    def with_priority(self, priority):
        return MonomialOrder(self.kind, tuple(priority), self.eliminate)


class PolyRing:
    """The ambient ring F_p[x_1..x_n] with grading weights and a monomial order."""

    def __init__(self, char, names: Sequence[str], weights: Sequence[int] | None = None,
                 order: MonomialOrder | str = "grevlex"):
        self.char = char if isinstance(char, PrimeChar) else PrimeChar(char)
        self.p = self.char.p
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.nvars = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers, one per variable")
        self.order = MonomialOrder(order) if isinstance(order, str) else order
        self.key, self.negkey = self.order.key_functions(self.nvars, self.weights)
        self._ident = (self.p, self.names, self.weights, self.order)
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._ident == other._ident

    def __hash__(self):
        return hash(self._ident)

    def __repr__(self):
        return f"PolyRing(F_{self.p}[{','.join(self.names)}], {self.order.kind})"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.char, self.names, self.weights, order)

    def extend(self, name: str, weight: int = 1, eliminate: bool = False) -> "PolyRing":
        """Append one variable; with ``eliminate`` it forms a leading block."""
        order = self.order
        prio = tuple(range(self.nvars)) if order.priority is None else order.priority
        new_order = MonomialOrder(order.kind, prio + (self.nvars,),
                                  (self.nvars,) if eliminate else ())
        return PolyRing(self.char, self.names + (name,), self.weights + (weight,), new_order)

    # construction helpers
    def poly(self, terms: Mapping[tuple, int] | None = None) -> "Polynomial":
        return Polynomial.from_dict(self, terms or {})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c: int):
        c %= self.p
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff: int = 1):
        return Polynomial.from_dict(self, {tuple(exps): coeff})

    def var(self, name_or_index):
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.var(i) for i in range(self.nvars))

    def wdeg(self, exps) -> int:
        return sum(a * b for a, b in zip(exps, self.weights))

    def monomials_of_degree(self, n: int) -> list[tuple]:
        """All exponent vectors of weighted degree ``n``, descending in the ring order."""
        out = []
        w = self.weights
        nv = self.nvars

        def rec(i, remaining, acc):
            if i == nv - 1:
                if remaining % w[i] == 0:
                    out.append(tuple(acc + [remaining // w[i]]))
                return
            for a in range(remaining // w[i] + 1):
                rec(i + 1, remaining - a * w[i], acc + [a])

        if nv == 0:
            return [()] if n == 0 else []
        if n >= 0:
            rec(0, n, [])
        out.sort(key=self.key, reverse=True)
        return out


def _check_exp(e: int):
    if e > MAX_EXPONENT:
        raise ExponentOverflow(e, MAX_EXPONENT)


class Polynomial:
    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring: PolyRing, terms: dict):
        # trusted constructor: residues already reduced and nonzero
        self.ring = ring
        self.terms = terms
        self._sorted = None

    @classmethod
    def from_dict(cls, ring: PolyRing, terms: Mapping[tuple, int]) -> "Polynomial":
        p = ring.p
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != ring.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {ring}")
            if isinstance(c, Fraction):
                c = c.numerator * inv_mod(c.denominator, p)
            c = (clean.get(m, 0) + int(c)) % p
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        return cls(ring, clean)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        if self._sorted is None:
            key = self.ring.key
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._sorted is not None:
            return self._sorted[0][0]
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        """Maximal weighted degree of a term (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get(self.ring.zero_exp, 0)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def homogeneous_part(self, n: int) -> "Polynomial":
        w = self.ring.wdeg
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if w(m) == n})

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.poly({self.ring.zero_exp: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: tuple, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {tuple([a + b for a, b in zip(m, mono)]): v * c % p
                                      for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = (get(m, 0) + ca * cb) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            for e in m:
                _check_exp(e * n)
            return Polynomial(self.ring, {tuple(e * n for e in m): pow(c, n, self.ring.p)})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, e: int = 1) -> "Polynomial":
        """``f^(p^e)``, computed termwise: F_p coefficients are Frobenius-fixed."""
        if e < 0:
            raise ValueError("negative Frobenius exponent")
        q = self.ring.p ** e
        out = {}
        for m, c in self.terms.items():
            mq = tuple(x * q for x in m)
            for x in mq:
                _check_exp(x)
            out[mq] = c
        return Polynomial(self.ring, out)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(inv_mod(self.leading_coefficient(), self.ring.p))

    def derivative(self, i: int) -> "Polynomial":
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                v = c * m[i] % p
                if v:
                    mm = list(m)
                    mm[i] -= 1
                    out[tuple(mm)] = v
        return Polynomial(self.ring, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Apply the ring map sending variable i to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        result = target.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    t = t * cache[key]
            result = result + t
        return result

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-home into a ring with the same variables (e.g. a different order)."""
        if ring.nvars != self.ring.nvars or ring.p != self.ring.p:
            raise RingMismatch(f"cannot move {self.ring} to {ring}")
        return Polynomial(ring, self.terms)

    def lift(self, ring: PolyRing, positions: Sequence[int] | None = None) -> "Polynomial":
        """Embed into a ring with more variables; ``positions[i]`` is the new index of var i."""
        if positions is None:
            positions = range(self.ring.nvars)
        pos = list(positions)
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, a in zip(pos, m):
                e[i] = a
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


def format_monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_terms(names: Sequence[str], terms: Iterable[tuple[tuple, int]]) -> str:
    """Canonical text for a descending term list with signed integer coefficients."""
    out = []
    for m, c in terms:
        mono = format_monomial(names, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


def format_polynomial(f: Polynomial) -> str:
    return format_terms(f.ring.names, f.sorted_terms())


def frobenius_power(f: Polynomial, e: int) -> Polynomial:
    return f.frobenius(e)
