"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Raw field elements are plain Python objects: :class:`fractions.Fraction` for
the rationals and ``int`` residues in ``[0, p)`` for GF(p).  The linear-algebra
and algebra layers work on raw elements for speed and carry the
:class:`FieldSpec` alongside; :class:`FieldScalar` is the boxed, self-describing
scalar for callers that want operator syntax.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Optional

from .errors import (
    CharacteristicTwoError,
    DivisionByZero,
    InfiniteFieldError,
    MixedFieldError,
    ParseError,
)


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    PRIME = "GF"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("the rationals take no modulus")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    # -- descriptors -----------------------------------------------------
    @property
    def is_prime(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def char_ne_2(self) -> bool:
        return self.kind is FieldKind.RATIONALS or self.p != 2

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.p

    def require_char_ne_2(self, what: str = "this operation") -> None:
        if not self.char_ne_2:
            raise CharacteristicTwoError(f"{what} requires characteristic different from 2")

    def __str__(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"GF({self.p})"

    # -- raw element arithmetic -----------------------------------------
    @property
    def zero(self):
        return Fraction(0) if self.kind is FieldKind.RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind is FieldKind.RATIONALS else 1

    def coerce(self, x: Any):
        """Turn an int, Fraction, string or FieldScalar into a raw element."""
        if isinstance(x, FieldScalar):
            if x.spec != self:
                raise MixedFieldError(f"scalar over {x.spec} used with {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.kind is FieldKind.RATIONALS:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} into Q")
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        if isinstance(x, int) or hasattr(x, "__index__"):
            return int(x) % self.p
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def add(self, a, b):
        if self.kind is FieldKind.RATIONALS:
            return a + b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.kind is FieldKind.RATIONALS:
            return a - b
        return (a - b) % self.p

    def mul(self, a, b):
        if self.kind is FieldKind.RATIONALS:
            return a * b
        return (a * b) % self.p

    def neg(self, a):
        if self.kind is FieldKind.RATIONALS:
            return -a
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.kind is FieldKind.RATIONALS:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def square(self, a):
        return self.mul(a, a)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or ``None`` when there is none.

        Over GF(p) the smaller of the two residues is returned.
        """
        if self.kind is FieldKind.RATIONALS:
            if a < 0:
                return None
            num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
            if num is None or den is None:
                return None
            return Fraction(num, den)
        p = self.p
        a %= p
        if a == 0 or p == 2:
            return a
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        r = _tonelli_shanks(a, p)
        return min(r, p - r)

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    # -- enumeration -----------------------------------------------------
    def elements(self) -> range:
        if self.kind is FieldKind.RATIONALS:
            raise InfiniteFieldError("Q has infinitely many elements")
        return range(self.p)

    def nonzero_elements(self) -> range:
        if self.kind is FieldKind.RATIONALS:
            raise InfiniteFieldError("Q has infinitely many elements")
        return range(1, self.p)

    # -- text ------------------------------------------------------------
    def format(self, a) -> str:
        if self.kind is FieldKind.RATIONALS:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a) % self.p)

    def parse(self, text: Any):
        if isinstance(text, int) and not isinstance(text, bool):
            return self.coerce(text)
        if not isinstance(text, str):
            raise ParseError(f"expected a scalar string or integer, got {text!r}")
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ParseError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if self.kind is FieldKind.PRIME and den % self.p == 0:
            raise ParseError(f"denominator of {text!r} vanishes in {self}")
        return self.coerce(Fraction(num, den))

    def scalar(self, x: Any) -> "FieldScalar":
        return FieldScalar(self.coerce(x), self)


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.gf(p)


def _isqrt_exact(n: int) -> Optional[int]:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class FieldScalar:
    """A field element that knows which field it lives in."""

    value: Any
    spec: FieldSpec = field(compare=True)

    def __post_init__(self):
        object.__setattr__(self, "value", self.spec.coerce(self.value))

    def _other(self, other) -> Any:
        if isinstance(other, FieldScalar):
            if other.spec != self.spec:
                raise MixedFieldError(f"cannot combine {self.spec} with {other.spec}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.spec.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldScalar(self.spec.add(self.value, b), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldScalar(self.spec.sub(self.value, b), self.spec)

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldScalar(self.spec.sub(b, self.value), self.spec)

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldScalar(self.spec.mul(self.value, b), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldScalar(self.spec.div(self.value, b), self.spec)

    def __neg__(self):
        return FieldScalar(self.spec.neg(self.value), self.spec)

    def inv(self) -> "FieldScalar":
        return FieldScalar(self.spec.inv(self.value), self.spec)

    def sqrt(self) -> Optional["FieldScalar"]:
        r = self.spec.sqrt(self.value)
        return None if r is None else FieldScalar(r, self.spec)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.spec.format(self.value)

    def __repr__(self) -> str:
        return f"FieldScalar({self}, {self.spec})"


def all_nonzero_scalars(spec: FieldSpec) -> Iterator[FieldScalar]:
    """Every nonzero element of a prime field, ascending."""
    for v in spec.nonzero_elements():
        yield FieldScalar(v, spec)
