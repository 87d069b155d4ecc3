"""Coefficient rings for truncated expansions.

Coefficient values are plain Python objects with arithmetic operators
(``Fraction``, :class:`~siegelq.polyring.SparsePolynomial`,
:class:`CoeffVector`, :class:`Residue`, ...).  A ring descriptor records
which kind of value an expansion holds, creates zeros, checks membership,
decides which products are defined, and encodes values for the JSON
interchange format.  Descriptors for symmetric-form and de Rham
coefficients live next to those types in :mod:`siegelq.nearcalc` and
:mod:`siegelq.derham`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import IntegralityError, InterchangeError
from .polyring import SparsePolynomial, nvars


def as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def encode_fraction(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def decode_fraction(obj) -> Fraction:
    if (not isinstance(obj, list) or len(obj) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj)):
        raise InterchangeError(f"rational must be [numerator, denominator], got {obj!r}")
    if obj[1] <= 0:
        raise InterchangeError(f"denominator must be positive, got {obj[1]}")
    f = Fraction(obj[0], obj[1])
    if f.denominator != obj[1]:
        raise InterchangeError(f"rational {obj!r} is not in lowest terms")
    return f


class Ring:
    """Base class for ring descriptors."""

    kind: str = "?"

    def zero(self):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def coerce(self, x):
        if self.contains(x):
            return x
        raise TypeError(f"{x!r} is not an element of {self}")

    def encode(self, x):
        raise NotImplementedError

    def decode(self, obj):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def product_ring(self, other: "Ring") -> "Ring | None":
        """Ring of products ``a * b`` for ``a`` in self and ``b`` in other, or None."""
        if isinstance(other, RationalRing):
            return self
        return None


@dataclass(frozen=True)
class RationalRing(Ring):
    kind = "QQ"

    def zero(self):
        return Fraction(0)

    def contains(self, x):
        return isinstance(x, Fraction)

    def coerce(self, x):
        return as_fraction(x)

    def encode(self, x):
        return encode_fraction(x)

    def decode(self, obj):
        return decode_fraction(obj)

    def to_json(self):
        return {"type": "QQ"}

    def product_ring(self, other):
        return other

    def __str__(self):
        return "QQ"


QQ = RationalRing()


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """Q[r_ij : 1 <= i <= j <= genus]."""

    genus: int
    kind = "poly"

    def zero(self):
        return SparsePolynomial.zero(self.genus)

    def contains(self, x):
        return isinstance(x, SparsePolynomial) and x.genus == self.genus

    def coerce(self, x):
        if isinstance(x, SparsePolynomial):
            if x.genus != self.genus:
                raise TypeError("polynomial genus mismatch")
            return x
        return SparsePolynomial.constant(self.genus, as_fraction(x))

    def encode(self, x):
        return [[list(e), c.numerator, c.denominator] for e, c in x.items()]

    def decode(self, obj):
        if not isinstance(obj, list):
            raise InterchangeError("polynomial must be a list of [exponents, num, den]")
        terms = {}
        n = nvars(self.genus)
        for t in obj:
            if not isinstance(t, list) or len(t) != 3 or not isinstance(t[0], list):
                raise InterchangeError(f"bad polynomial term {t!r}")
            exp = t[0]
            if len(exp) != n or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in exp):
                raise InterchangeError(f"bad exponent vector {exp!r} for genus {self.genus}")
            c = decode_fraction([t[1], t[2]])
            if c == 0:
                raise InterchangeError("stored zero coefficient in polynomial")
            if tuple(exp) in terms:
                raise InterchangeError(f"duplicate exponent {exp!r}")
            terms[tuple(exp)] = c
        return SparsePolynomial(self.genus, terms)

    def to_json(self):
        return {"type": "poly", "genus": self.genus}

    def product_ring(self, other):
        if isinstance(other, (RationalRing, PolynomialRing)) and getattr(other, "genus", self.genus) == self.genus:
            return self
        if isinstance(other, VectorRing) and other.base.product_ring(self) is not None:
            return VectorRing(other.base.product_ring(self), other.dim)
        return None

    def __str__(self):
        return f"QQ[r; g={self.genus}]"


class CoeffVector:
    """Fixed-length vector of coefficients (componentwise arithmetic)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence):
        self.entries = tuple(entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __bool__(self):
        return any(bool(x) for x in self.entries)

    def __eq__(self, other):
        if isinstance(other, CoeffVector):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def _check(self, other):
        if len(other.entries) != len(self.entries):
            raise ValueError("vector length mismatch")

    def __add__(self, other):
        if not isinstance(other, CoeffVector):
            return NotImplemented
        self._check(other)
        return CoeffVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        if not isinstance(other, CoeffVector):
            return NotImplemented
        self._check(other)
        return CoeffVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return CoeffVector(-a for a in self.entries)

    def __mul__(self, c):
        if isinstance(c, CoeffVector):
            return NotImplemented
        return CoeffVector(a * c for a in self.entries)

    def __rmul__(self, c):
        return self.__mul__(c)

    def map(self, fn):
        return CoeffVector(fn(a) for a in self.entries)

    def __repr__(self):
        return "(" + ", ".join(repr(a) for a in self.entries) + ")"


@dataclass(frozen=True)
class VectorRing(Ring):
    """Vectors of a fixed length ``dim`` over a base ring."""

    base: Ring
    dim: int
    kind = "vec"

    def zero(self):
        return CoeffVector([self.base.zero()] * self.dim)

    def contains(self, x):
        return isinstance(x, CoeffVector) and len(x) == self.dim and all(self.base.contains(a) for a in x)

    def coerce(self, x):
        if not isinstance(x, CoeffVector):
            x = CoeffVector(x)
        if len(x) != self.dim:
            raise TypeError(f"vector of length {len(x)} in a ring of dimension {self.dim}")
        return CoeffVector(self.base.coerce(a) for a in x)

    def encode(self, x):
        return [self.base.encode(a) for a in x]

    def decode(self, obj):
        if not isinstance(obj, list) or len(obj) != self.dim:
            raise InterchangeError(f"vector coefficient must be a list of length {self.dim}")
        return CoeffVector(self.base.decode(a) for a in obj)

    def to_json(self):
        return {"type": "vec", "dim": self.dim, "base": self.base.to_json()}

    def product_ring(self, other):
        if isinstance(other, VectorRing):
            return None
        b = self.base.product_ring(other)
        return VectorRing(b, self.dim) if b is not None else None

    def __str__(self):
        return f"{self.base}^{self.dim}"


class Residue:
    """Residue class modulo ``p**m``, kept in ``[0, p**m)``."""

    __slots__ = ("value", "p", "m", "modulus")

    def __init__(self, value: int, p: int, m: int):
        self.p = p
        self.m = m
        self.modulus = p ** m
        self.value = value % self.modulus

    @classmethod
    def from_rational(cls, x, p: int, m: int) -> "Residue":
        x = as_fraction(x)
        if x.denominator % p == 0:
            raise IntegralityError(f"{x} is not {p}-integral", witness=x)
        mod = p ** m
        return cls(x.numerator * pow(x.denominator, -1, mod), p, m)

    def _lift(self, other) -> "Residue | None":
        if isinstance(other, Residue):
            if (other.p, other.m) != (self.p, self.m):
                raise ValueError("residues modulo different prime powers")
            return other
        if is_scalar(other):
            return Residue.from_rational(other, self.p, self.m)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o.value, self.p, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o.value, self.p, self.m)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Residue(o.value - self.value, self.p, self.m)

    def __neg__(self):
        return Residue(-self.value, self.p, self.m)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o.value, self.p, self.m)

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return (self.value, self.p, self.m) == (other.value, other.p, other.m)
        if is_scalar(other):
            try:
                return self == Residue.from_rational(other, self.p, self.m)
            except IntegralityError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p, self.m))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.p}^{self.m}"


@dataclass(frozen=True)
class ResidueRing(Ring):
    """Z / p^m Z."""

    p: int
    m: int
    kind = "Zmod"

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError("precision m must be positive")

    def zero(self):
        return Residue(0, self.p, self.m)

    def contains(self, x):
        return isinstance(x, Residue) and (x.p, x.m) == (self.p, self.m)

    def coerce(self, x):
        if isinstance(x, Residue):
            if (x.p, x.m) != (self.p, self.m):
                raise TypeError("residue modulus mismatch")
            return x
        return Residue.from_rational(x, self.p, self.m)

    def encode(self, x):
        return {"p": self.p, "m": self.m, "value": x.value}

    def decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"p", "m", "value"}:
            raise InterchangeError("residue coefficient must be {p, m, value}")
        if (obj["p"], obj["m"]) != (self.p, self.m):
            raise InterchangeError("residue coefficient modulus differs from the ring")
        v = obj["value"]
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.p ** self.m:
            raise InterchangeError(f"residue value {v!r} is not a canonical representative")
        return Residue(v, self.p, self.m)

    def to_json(self):
        return {"type": "Zmod", "p": self.p, "m": self.m}

    def product_ring(self, other):
        if isinstance(other, (RationalRing, ResidueRing)):
            if isinstance(other, ResidueRing) and other != self:
                return None
            return self
        return None

    def __str__(self):
        return f"Z/{self.p}^{self.m}"
