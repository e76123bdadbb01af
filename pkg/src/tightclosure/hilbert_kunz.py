"""Hilbert-Kunz and Hilbert-Samuel length tables for m-primary ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .closure import tower
from .errors import NotCofinite, NotNested, PreconditionError
from .groebner import AmbientIdeal, vspace_dimension
from .rings import RingIdeal, RingPresentation


def decimal6(x: Fraction) -> str:
    """Six significant digits, computed without floats."""
    if x == 0:
        return "0"
    from decimal import Context, Decimal
    ctx = Context(prec=6)
    return format(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)), "g")


def _check_cofinite(R: RingPresentation, I: RingIdeal):
    if not I.is_homogeneous():
        raise PreconditionError("ideal must be homogeneous")
    if not I.is_m_primary():
        raise NotCofinite(f"{I} is not primary to the homogeneous maximal ideal")


@dataclass
class HKRow:
    e: int
    q: int
    length: int
    normalized: Fraction

    def to_dict(self):
        return {"e": self.e, "q": self.q, "length": self.length,
                "normalized": str(self.normalized), "decimal": decimal6(self.normalized)}


@dataclass
class HKTable:
    ideal: RingIdeal
    d: int
    rows: list

    @property
    def lengths(self) -> list[int]:
        return [r.length for r in self.rows]

    @property
    def delta(self) -> Fraction:
        if len(self.rows) < 2:
            return Fraction(0)
        return self.rows[-1].normalized - self.rows[-2].normalized

    def multiplicity_interval(self) -> tuple[Fraction, Fraction]:
        last = self.rows[-1].normalized
        d = abs(self.delta)
        return (last - d, last + d)

    def to_dict(self):
        lo, hi = self.multiplicity_interval()
        return {"ideal": [str(g) for g in self.ideal.generators], "d": self.d,
                "rows": [r.to_dict() for r in self.rows],
                "multiplicity_interval": [str(lo), str(hi)], "delta": str(self.delta)}


def hk_length(R: RingPresentation, I: RingIdeal, e: int) -> int:
    return vspace_dimension(tower(R, I).ideal(e))


def hk_table(R: RingPresentation, I: RingIdeal, e_max: int) -> HKTable:
    _check_cofinite(R, I)
    if e_max < 0:
        raise PreconditionError("e_max must be non-negative")
    d = R.dim
    rows = []
    for e in range(e_max + 1):
        q = R.p ** e
        length = hk_length(R, I, e)
        rows.append(HKRow(e, q, length, Fraction(length, q ** d)))
    lengths = [r.length for r in rows]
    assert all(a <= b for a, b in zip(lengths, lengths[1:])), "bracket powers must shrink"
    return HKTable(I, d, rows)


@dataclass
class HSRow:
    n: int
    length: int
    normalized: Fraction

    def to_dict(self):
        return {"n": self.n, "length": self.length, "normalized": str(self.normalized),
                "decimal": decimal6(self.normalized)}


@dataclass
class HSTable:
    ideal: RingIdeal
    d: int
    rows: list

    def to_dict(self):
        return {"ideal": [str(g) for g in self.ideal.generators], "d": self.d,
                "rows": [r.to_dict() for r in self.rows]}


def hs_table(R: RingPresentation, I: RingIdeal, n_max: int) -> HSTable:
    _check_cofinite(R, I)
    d = R.dim
    base = AmbientIdeal(R.ambient, I.generators)
    rows = []
    for n in range(1, n_max + 1):
        cur = base.power(n)
        lifted = cur.with_generators(R.relations)
        length = vspace_dimension(lifted)
        rows.append(HSRow(n, length, Fraction(factorial(d) * length, n ** d)))
    return HSTable(I, d, rows)


@dataclass
class HKComparison:
    small: HKTable
    big: HKTable

    @property
    def rows(self) -> list[dict]:
        return [{"e": a.e, "q": a.q, "length": a.length, "length_bigger": b.length,
                 "equal": a.length == b.length} for a, b in zip(self.small.rows, self.big.rows)]

    @property
    def all_equal(self) -> bool:
        return all(r["equal"] for r in self.rows)

    def to_dict(self):
        return {"ideal": [str(g) for g in self.small.ideal.generators],
                "bigger": [str(g) for g in self.big.ideal.generators],
                "rows": self.rows, "all_equal": self.all_equal}


def hk_compare(R: RingPresentation, I: RingIdeal, I_bigger: RingIdeal, e_max: int) -> HKComparison:
    if not I.issubset(I_bigger):
        raise NotNested(f"{I} is not contained in {I_bigger}")
    return HKComparison(hk_table(R, I, e_max), hk_table(R, I_bigger, e_max))
