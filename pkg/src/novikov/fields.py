"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Rational scalars are plain :class:`fractions.Fraction` values (always reduced,
positive denominator).  Prime-field scalars are :class:`Fp` values with the
residue stored in ``[0, p)``.  Mixing scalars from different fields raises
:class:`~novikov.errors.FieldMismatch`; exact zero division raises
:class:`~novikov.errors.DivisionByZero`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import DivisionByZero, FieldMismatch

Scalar = Union[Fraction, "Fp"]


class Fp:
    """An element of the prime field F_p, normalized to ``0 <= val < p``."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            raise FieldMismatch(f"F_{self.p} vs Q")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.val + other.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.val - other.val, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(other.val - self.val, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.val * other.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return Fp(-self.val, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.val == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return Fp(pow(self.val, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"Fp({self.val}, {self.p})"

    def __str__(self):
        return str(self.val)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


@dataclass(frozen=True)
class Field:
    """Descriptor for the scalar field: Q (``p is None``) or F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p >= 2**31:
                raise ValueError("prime fields limited to p < 2^31")
            if not _is_probable_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else Fp(0, self.p)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else Fp(1, self.p)

    def from_int(self, k: int) -> Scalar:
        return Fraction(k) if self.p is None else Fp(k, self.p)

    def scalar(self, x) -> Scalar:
        """Coerce ``x`` (int, Fraction, Fp or decimal/ratio string) into this field."""
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.p is None:
                return x
            den = Fp(x.denominator, self.p)
            return Fp(x.numerator, self.p) / den
        if isinstance(x, Fp):
            if self.p != x.p:
                raise FieldMismatch(f"{self.name} vs F_{x.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar literal {text!r}") from exc
        if frac.denominator != 1 and self.p is None:
            return frac
        return self.scalar(frac)

    def format(self, x: Scalar) -> str:
        return str(x)

    def elements(self) -> Iterator[Scalar]:
        """All field elements, in order 0, 1, ..., p-1 (prime fields only)."""
        if self.p is None:
            raise ValueError("cannot enumerate Q")
        return (Fp(v, self.p) for v in range(self.p))

    def random(self, rng: random.Random) -> Scalar:
        if self.p is None:
            return Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        return Fp(rng.randrange(self.p), self.p)

    def __str__(self):
        return self.name


QQ = Field()


def prime_field(p: int, *, allow_small_char: bool = False) -> Field:
    """F_p.  p in {2, 3} needs ``allow_small_char`` (several constructions in
    this library degenerate below characteristic 5); callers that permit it
    should surface a warning to the user."""
    if p in (2, 3) and not allow_small_char:
        raise ValueError(
            f"F_{p} degenerates several checks (division by 2, char-3 form collapse); "
            "pass allow_small_char=True to proceed anyway"
        )
    return Field(p)


def parse_field(name: str) -> Field:
    """Parse a field spec such as ``Q``, ``F5`` or ``F_7``."""
    name = name.strip()
    if name in ("Q", "QQ", "ℚ"):
        return QQ
    if name.startswith("F"):
        digits = name[1:].lstrip("_")
        if digits.isdigit():
            return prime_field(int(digits), allow_small_char=True)
    raise ValueError(f"unknown field {name!r}")
