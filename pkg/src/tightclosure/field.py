"""Prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CharMismatch, DivisionByZero, WorkbenchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class NotPrime(WorkbenchError):
    code = "not-prime"


@dataclass(frozen=True)
class PrimeChar:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NotPrime(f"{self.p!r} is not a prime")

    def __int__(self):
        return self.p

    def __call__(self, value: int) -> "FpScalar":
        return FpScalar(value, self)


@lru_cache(maxsize=None)
def inverse_table(p: int) -> tuple[int, ...] | None:
    """Full inverse table for small p, None when p is too large to tabulate."""
    if p > 1 << 16:
        return None
    inv = [0] * p
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return tuple(inv)


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"inverse of 0 mod {p}")
    return pow(a, -1, p)


class FpScalar:
    __slots__ = ("residue", "char")

    def __init__(self, value: int, char: PrimeChar | int):
        if not isinstance(char, PrimeChar):
            char = PrimeChar(char)
        self.char = char
        self.residue = value % char.p

    @property
    def p(self):
        return self.char.p

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.char != self.char:
                raise CharMismatch(f"F_{self.p} vs F_{other.p}")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FpScalar(self.residue + b, self.char)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FpScalar(self.residue - b, self.char)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FpScalar(b - self.residue, self.char)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FpScalar(self.residue * b, self.char)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.residue, self.char)

    def inverse(self) -> "FpScalar":
        return FpScalar(inv_mod(self.residue, self.p), self.char)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FpScalar(b, self.char).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpScalar(pow(self.residue, n, self.p), self.char)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.char == other.char and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.char.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} mod {self.p}"
