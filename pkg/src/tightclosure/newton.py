"""Newton polyhedra of monomial ideals and their integral closures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .errors import NotMonomial
from .groebner import AmbientIdeal, minimalize_monomials
from .poly import Polynomial


def _nullspace_vector(rows: list[list[Fraction]], n: int):
    """A nonzero vector orthogonal to ``rows`` if the solution space is a line, else None."""
    m = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for i, c in enumerate(piv_cols):
        vec[c] = -m[i][fc]
    return vec


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in vec:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints) if g else tuple(ints)


@dataclass(frozen=True)
class NewtonRegion:
    """``conv(exponents) + R_{>=0}^n`` as exponents plus facet inequalities ``w.b >= c``."""

    exponents: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def nvars(self) -> int:
        return len(self.exponents[0]) if self.exponents else 0

    def contains(self, b: Sequence[int]) -> bool:
        return all(sum(wi * bi for wi, bi in zip(w, b)) >= c for w, c in self.facets)

    def scaled(self, k: int) -> "NewtonRegion":
        return NewtonRegion(tuple(tuple(k * a for a in e) for e in self.exponents),
                            tuple((w, k * c) for w, c in self.facets))


def newton_region(exponents: Sequence[Sequence[int]]) -> NewtonRegion:
    pts = tuple(minimalize_monomials(tuple(e) for e in exponents))
    if not pts:
        raise ValueError("empty monomial ideal")
    n = len(pts[0])
    if any(not any(e) for e in pts):
        # unit ideal: the whole orthant
        return NewtonRegion(pts, tuple((tuple(int(i == j) for i in range(n)), 0) for j in range(n)))
    rays = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    items = [("pt", p) for p in pts] + [("ray", r) for r in rays]
    facets = set()
    for combo in combinations(items, n):
        cpts = [v for kind, v in combo if kind == "pt"]
        crays = [v for kind, v in combo if kind == "ray"]
        if not cpts:
            continue
        base = cpts[0]
        rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in cpts[1:]]
        rows += [[Fraction(a) for a in r] for r in crays]
        w = _nullspace_vector(rows, n) if rows else (
            [Fraction(1)] if n == 1 else None)
        if w is None:
            continue
        w = _primitive(w)
        if any(x < 0 for x in w):
            w = tuple(-x for x in w)
        if any(x < 0 for x in w):
            continue
        c = sum(a * b for a, b in zip(w, base))
        if all(sum(a * b for a, b in zip(w, p)) >= c for p in pts):
            facets.add((w, c))
    return NewtonRegion(pts, tuple(sorted(facets)))


def monomial_exponents(I: AmbientIdeal) -> list[tuple]:
    out = []
    for g in I.generators:
        if not g.is_monomial():
            raise NotMonomial(f"generator {g} is not a monomial")
        out.append(next(iter(g.terms)))
    return minimalize_monomials(out)


def integral_closure_exponents(exponents: Sequence[Sequence[int]]) -> list[tuple]:
    """Minimal lattice points of the Newton region."""
    region = newton_region(exponents)
    pts = region.exponents
    n = region.nvars
    box = [range(max(p[j] for p in pts) + 1) for j in range(n)]
    members = [b for b in product(*box) if region.contains(b)]
    return sorted(minimalize_monomials(members), reverse=True)


def monomial_integral_closure(I: AmbientIdeal) -> AmbientIdeal:
    exps = monomial_exponents(I)
    ring = I.ring
    if not exps:
        return AmbientIdeal(ring, [])
    closed = integral_closure_exponents(exps)
    return AmbientIdeal(ring, [ring.monomial(b) for b in closed])


def in_monomial_closure(f: Polynomial, exponents: Sequence[Sequence[int]]) -> bool:
    """Every term of ``f`` lies in the integral closure of the monomial ideal."""
    if not f:
        return True
    region = newton_region(exponents)
    return all(region.contains(m) for m in f.terms)


def monomial_power_exponents(exponents: Sequence[Sequence[int]], k: int) -> list[tuple]:
    cur = [tuple(0 for _ in exponents[0])]
    for _ in range(k):
        cur = minimalize_monomials(tuple(a + b for a, b in zip(c, e)) for c in cur for e in exponents)
    return cur
