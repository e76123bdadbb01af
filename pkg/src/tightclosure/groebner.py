"""Buchberger's algorithm, normal forms, and ideal operations in the ambient ring."""

from __future__ import annotations

import heapq
import threading
from collections import OrderedDict
from itertools import combinations
from operator import ge
from typing import Iterable, Sequence

from .errors import DivisionByZero, NotZeroDimensional, RingMismatch
from .field import inv_mod
from .poly import MonomialOrder, Polynomial, PolyRing

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# dict-level kernels

def _divides(a: tuple, b: tuple) -> bool:
    return all(map(ge, b, a))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple([x if x > y else y for x, y in zip(a, b)])


class _Reducer:
    """Monic basis elements with leading monomials, plus a divisor memo."""

    __slots__ = ("ring", "elems", "memo")

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.elems: list[tuple[tuple, list[tuple[tuple, int]]]] = []
        self.memo: dict = {}

    def add(self, lm: tuple, terms: dict):
        tail = [(m, c) for m, c in terms.items() if m != lm]
        self.elems.append((lm, tail))
        self.memo.clear()

    def divisor(self, m: tuple):
        hit = self.memo.get(m)
        if hit is not None:
            return hit
        for idx, (lm, _) in enumerate(self.elems):
            if all(map(ge, m, lm)):
                self.memo[m] = idx
                return idx
        self.memo[m] = -1
        return -1

    def reduce(self, f: dict, tail_only_after: tuple | None = None) -> dict:
        """Full normal form of the term dict ``f``."""
        if not self.elems or not f:
            return dict(f)
        p = self.ring.p
        negkey = self.ring.negkey
        f = dict(f)
        heap = [(negkey(m), m) for m in f]
        heapq.heapify(heap)
        inheap = set(f)
        rem = {}
        elems = self.elems
        divisor = self.divisor
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            _, m = pop(heap)
            inheap.discard(m)
            c = f.pop(m, 0)
            if not c:
                continue
            idx = divisor(m)
            if idx < 0:
                rem[m] = c
                continue
            lm, tail = elems[idx]
            u = tuple([a - b for a, b in zip(m, lm)])
            for gm, gc in tail:
                mm = tuple([a + b for a, b in zip(u, gm)])
                v = (f.get(mm, 0) - c * gc) % p
                if v:
                    f[mm] = v
                    if mm not in inheap:
                        inheap.add(mm)
                        push(heap, (negkey(mm), mm))
                else:
                    f.pop(mm, None)
        return rem


def _leading(ring: PolyRing, terms: dict) -> tuple:
    return max(terms, key=ring.key)


def _monic(ring: PolyRing, terms: dict) -> tuple[tuple, dict]:
    lm = _leading(ring, terms)
    inv = inv_mod(terms[lm], ring.p)
    p = ring.p
    return lm, {m: c * inv % p for m, c in terms.items()}


def _spoly(ring: PolyRing, f: tuple, g: tuple) -> dict:
    (lf, tf), (lg, tg) = f, g
    lcm = _lcm(lf, lg)
    uf = tuple([a - b for a, b in zip(lcm, lf)])
    ug = tuple([a - b for a, b in zip(lcm, lg)])
    p = ring.p
    out = {}
    for m, c in tf.items():
        if m != lf:
            mm = tuple([a + b for a, b in zip(m, uf)])
            out[mm] = c
    for m, c in tg.items():
        if m != lg:
            mm = tuple([a + b for a, b in zip(m, ug)])
            v = (out.get(mm, 0) - c) % p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return out


def buchberger_terms(ring: PolyRing, inputs: Sequence[dict]) -> list[tuple[tuple, dict]]:
    """Reduced Groebner basis of term dicts; returns ``[(lm, monic terms)]`` descending."""
    wdeg = ring.wdeg
    key = ring.key
    basis: list[tuple[tuple, dict]] = []
    sugar: list[int] = []
    reducer = _Reducer(ring)
    pairs: list = []
    done: set = set()
    live: list[bool] = []

    def insert(terms: dict, sug: int):
        lm, terms = _monic(ring, terms)
        k = len(basis)
        basis.append((lm, terms))
        sugar.append(sug)
        live.append(True)
        reducer.add(lm, terms)
        for i in range(k):
            if not live[i]:
                continue
            li = basis[i][0]
            lcm = _lcm(li, lm)
            ds = max(sugar[i] + wdeg(lcm) - wdeg(li), sug + wdeg(lcm) - wdeg(lm))
            heapq.heappush(pairs, (ds, key(lcm), i, k, lcm))
        # elements whose leading monomial is now redundant stop spawning pairs
        for i in range(k):
            if live[i] and _divides(lm, basis[i][0]) and basis[i][0] != lm:
                live[i] = False

    for idx, f in enumerate(inputs):
        f = {m: c for m, c in f.items() if c % ring.p}
        if not f:
            continue
        r = reducer.reduce(f)
        if r:
            insert(r, max(wdeg(m) for m in f))

    while pairs:
        ds, _, i, j, lcm = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = basis[i][0], basis[j][0]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k, (lk, _) in enumerate(basis):
            if k in (i, j) or not _divides(lk, lcm):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        s = _spoly(ring, basis[i], basis[j])
        r = reducer.reduce(s)
        if r:
            insert(r, ds)

    # minimalize
    lms = [b[0] for b in basis]
    keep = []
    for idx, lm in enumerate(lms):
        redundant = False
        for jdx, other in enumerate(lms):
            if jdx == idx:
                continue
            if _divides(other, lm) and (other != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(idx)
    minimal = [basis[i] for i in keep]
    # interreduce tails
    out = []
    for idx, (lm, terms) in enumerate(minimal):
        red = _Reducer(ring)
        for jdx, (lm2, t2) in enumerate(minimal):
            if jdx != idx:
                red.add(lm2, t2)
        tail = {m: c for m, c in terms.items() if m != lm}
        tail = red.reduce(tail)
        tail[lm] = 1
        out.append((lm, tail))
    out.sort(key=lambda b: key(b[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public objects

class GroebnerBasis:
    """A reduced Groebner basis.  Generators are monic and sorted by leading term."""

    def __init__(self, ring: PolyRing, elems: Sequence[tuple[tuple, dict]], reduced=True):
        self.ring = ring
        self.order = ring.order
        self.reduced = reduced
        self._elems = list(elems)
        self.generators = tuple(Polynomial(ring, t) for _, t in self._elems)
        self.leading_monomials = tuple(lm for lm, _ in self._elems)
        self._reducer = _Reducer(ring)
        for lm, t in self._elems:
            self._reducer.add(lm, t)
        self._lock = threading.Lock()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"GroebnerBasis({list(self.generators)})"

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials)

    def reduce_terms(self, terms: dict) -> dict:
        with self._lock:
            return self._reducer.reduce(terms)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring.nvars != self.ring.nvars or f.ring.p != self.ring.p:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        return Polynomial(f.ring, self.reduce_terms(f.terms))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce_terms(f.terms)

    def is_standard(self, m: tuple) -> bool:
        return not any(_divides(lm, m) for lm in self.leading_monomials)


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring.nvars != ring.nvars or g.ring.p != ring.p:
            raise RingMismatch(f"{g.ring} vs {ring}")
    if order is not None:
        ring = ring.with_order(order)
    return GroebnerBasis(ring, buchberger_terms(ring, [g.terms for g in gens]))


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.normal_form(f)


_CACHE_LIMIT = 512
_cache: OrderedDict = OrderedDict()
_cache_lock = threading.Lock()


def _fingerprint(ring: PolyRing, gens: Sequence[Polynomial]):
    return (ring, tuple(sorted((tuple(sorted(g.terms.items())) for g in gens))))


def cached_groebner(ring: PolyRing, gens: Sequence[Polynomial]) -> GroebnerBasis:
    """Groebner basis memoised by (generator fingerprint, order); populate-once."""
    fp = _fingerprint(ring, gens)
    with _cache_lock:
        hit = _cache.get(fp)
        if hit is not None:
            _cache.move_to_end(fp)
            return hit
    gb = buchberger(gens, ring=ring)
    with _cache_lock:
        hit = _cache.setdefault(fp, gb)
        _cache.move_to_end(fp)
        while len(_cache) > _CACHE_LIMIT:
            _cache.popitem(last=False)
    return hit


def clear_cache():
    with _cache_lock:
        _cache.clear()


class AmbientIdeal:
    """An ideal of the ambient polynomial ring given by generators."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring.nvars != ring.nvars or g.ring.p != ring.p:
                raise RingMismatch(f"{g.ring} vs {ring}")
            g = g.to_ring(ring) if g.ring != ring else g
            if g and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)

    def __repr__(self):
        return f"AmbientIdeal({list(self.generators)})"

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        ring = self.ring if order is None else self.ring.with_order(order)
        return cached_groebner(ring, [g.to_ring(ring) for g in self.generators])

    @property
    def gb(self) -> GroebnerBasis:
        return self.groebner()

    def contains(self, f: Polynomial) -> bool:
        return self.gb.contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __add__(self, other: "AmbientIdeal") -> "AmbientIdeal":
        return AmbientIdeal(self.ring, self.generators + other.generators)

    def with_generators(self, extra: Iterable[Polynomial]) -> "AmbientIdeal":
        return AmbientIdeal(self.ring, self.generators + tuple(extra))

    def __mul__(self, other: "AmbientIdeal") -> "AmbientIdeal":
        return AmbientIdeal(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, n: int) -> "AmbientIdeal":
        """``I^n`` by iterated generator products, interreduced each step."""
        if n == 0:
            return AmbientIdeal(self.ring, [self.ring.one()])
        cur = self
        for _ in range(n - 1):
            cur = AmbientIdeal(self.ring, (cur * self).gb.generators)
        return AmbientIdeal(self.ring, cur.gb.generators) if n > 1 else cur

    def frobenius(self, e: int) -> "AmbientIdeal":
        return AmbientIdeal(self.ring, [g.frobenius(e) for g in self.generators])

    def issubset(self, other: "AmbientIdeal") -> bool:
        gb = other.gb
        return all(gb.contains(g) for g in self.generators)

    def equals(self, other: "AmbientIdeal") -> bool:
        return self.issubset(other) and other.issubset(self)

    # derived ideals
    def intersection(self, other: "AmbientIdeal") -> "AmbientIdeal":
        return ideal_intersection(self, other)

    def colon(self, f: Polynomial) -> "AmbientIdeal":
        return colon_ideal(self, f)

    def colon_ideal(self, other: "AmbientIdeal") -> "AmbientIdeal":
        return colon_ideal_ideal(self, other)

    # dimension theory
    def krull_dimension(self):
        return krull_dimension(self)

    def vspace_dimension(self) -> int:
        return vspace_dimension(self)

    def degree_slice_basis(self, n: int) -> list[tuple]:
        return degree_slice_basis(self, n)


def ideal_membership(f: Polynomial, ideal: AmbientIdeal) -> bool:
    if not f:
        return True
    return ideal.contains(f)


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """The quotient ``h / f``; raises ValueError if ``f`` does not divide ``h``."""
    if not f:
        raise DivisionByZero("division by the zero polynomial")
    ring = h.ring
    p = ring.p
    lf = f.leading_monomial()
    inv = inv_mod(f.terms[lf], p)
    rem = dict(h.terms)
    quot: dict = {}
    key = ring.key
    while rem:
        m = max(rem, key=key)
        if not _divides(lf, m):
            raise ValueError("not divisible")
        u = tuple(a - b for a, b in zip(m, lf))
        c = rem[m] * inv % p
        quot[u] = c
        for gm, gc in f.terms.items():
            mm = tuple(a + b for a, b in zip(u, gm))
            v = (rem.get(mm, 0) - c * gc) % p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(ring, quot)


def _elimination_ring(ring: PolyRing) -> PolyRing:
    # the auxiliary variable is appended last and placed in a leading block
    return ring.extend("_t", 1, eliminate=True)


def ideal_intersection(I: AmbientIdeal, J: AmbientIdeal) -> AmbientIdeal:
    """``I ∩ J`` by eliminating t from ``t*I + (1-t)*J``."""
    ring = I.ring
    if not I.generators or not J.generators:
        return AmbientIdeal(ring, [])
    ext = _elimination_ring(ring)
    n = ring.nvars
    t = ext.var(n)
    one = ext.one()
    gens = [t * g.lift(ext) for g in I.generators]
    gens += [(one - t) * g.lift(ext) for g in J.generators]
    gb = buchberger(gens, ring=ext)
    keep = []
    for g in gb.generators:
        if all(m[n] == 0 for m in g.terms):
            keep.append(Polynomial(ring, {m[:n]: c for m, c in g.terms.items()}))
    return AmbientIdeal(ring, keep)


def colon_ideal(I: AmbientIdeal, f: Polynomial) -> AmbientIdeal:
    """``I : f = {g : g*f in I}`` via ``(I ∩ (f)) / f``."""
    if not f:
        raise DivisionByZero("colon by the zero polynomial")
    ring = I.ring
    f = f.to_ring(ring) if f.ring != ring else f
    if I.contains(f):
        return AmbientIdeal(ring, [ring.one()])
    inter = ideal_intersection(I, AmbientIdeal(ring, [f]))
    quot = [divide_exact(h, f) for h in inter.generators]
    out = AmbientIdeal(ring, quot)
    return AmbientIdeal(ring, out.gb.generators)


def colon_ideal_ideal(I: AmbientIdeal, J: AmbientIdeal) -> AmbientIdeal:
    ring = I.ring
    result = None
    for g in J.generators:
        c = colon_ideal(I, g)
        result = c if result is None else ideal_intersection(result, c)
    if result is None:
        return AmbientIdeal(ring, [ring.one()])
    return AmbientIdeal(ring, result.gb.generators)


# ---------------------------------------------------------------------------
# dimension counting on leading-term ideals

def minimalize_monomials(monos: Iterable[tuple]) -> list[tuple]:
    monos = sorted(set(monos), key=sum)
    out: list[tuple] = []
    for m in monos:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_dimension(lms: Sequence[tuple], nvars: int):
    """Krull dimension of ``k[x]/(lms)``: largest set of variables avoiding all supports."""
    lms = minimalize_monomials(lms)
    if any(not any(m) for m in lms):
        return NEG_INF
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = frozenset(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def krull_dimension(I: AmbientIdeal):
    if not I.generators:
        return I.ring.nvars
    return monomial_dimension(I.gb.leading_monomials, I.ring.nvars)


def count_standard_monomials(lms: Sequence[tuple], nvars: int) -> int:
    """Number of monomials outside the monomial ideal ``(lms)``; must be finite."""
    gens = minimalize_monomials(lms)
    if any(not any(m) for m in gens):
        return 0
    return _count(tuple(gens), nvars)


def _count(gens: tuple, n: int) -> int:
    if n == 1:
        return min(g[0] for g in gens)
    last = n - 1
    pure = [g[last] for g in gens if not any(g[:last])]
    if not pure:
        raise NotZeroDimensional("quotient is not finite-dimensional")
    top = min(pure)
    levels = sorted({g[last] for g in gens if g[last] < top} | {0})
    total = 0
    for idx, lev in enumerate(levels):
        nxt = levels[idx + 1] if idx + 1 < len(levels) else top
        proj = minimalize_monomials(g[:last] for g in gens if g[last] <= lev)
        if not proj:
            raise NotZeroDimensional("quotient is not finite-dimensional")
        if any(not any(m) for m in proj):
            continue
        total += (nxt - lev) * _count(tuple(proj), last)
    return total


def vspace_dimension(I: AmbientIdeal) -> int:
    gb = I.gb
    if gb.is_unit():
        return 0
    dim = monomial_dimension(gb.leading_monomials, I.ring.nvars)
    if dim != 0:
        raise NotZeroDimensional(f"quotient has Krull dimension {dim}")
    return count_standard_monomials(gb.leading_monomials, I.ring.nvars)


def degree_slice_basis(I: AmbientIdeal, n: int, gb: GroebnerBasis | None = None) -> list[tuple]:
    """Standard monomials of weighted degree ``n``, descending in the ring order."""
    gb = gb or I.gb
    lms = gb.leading_monomials
    return [m for m in I.ring.monomials_of_degree(n)
            if not any(_divides(lm, m) for lm in lms)]


def hilbert_numerator(lms: Sequence[tuple], weights: Sequence[int]) -> dict[int, int]:
    """Numerator N(t) of the Hilbert series of ``k[x]/(lms)`` over ``prod(1 - t^w_i)``."""
    gens = minimalize_monomials(lms)

    def wdeg(m):
        return sum(a * b for a, b in zip(m, weights))

    def rec(gens):
        if not gens:
            return {0: 1}
        if len(gens) == 1:
            return {0: 1, wdeg(gens[0]): -1} if any(gens[0]) else {}
        last = gens[-1]
        rest = gens[:-1]
        n1 = rec(rest)
        quo = minimalize_monomials(tuple(max(a - b, 0) for a, b in zip(g, last)) for g in rest)
        n2 = rec(quo)
        out = dict(n1)
        d = wdeg(last)
        for k, v in n2.items():
            out[k + d] = out.get(k + d, 0) - v
        return {k: v for k, v in out.items() if v}

    if any(not any(m) for m in gens):
        return {}
    return rec(gens)
