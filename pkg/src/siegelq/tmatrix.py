"""Half-integral symmetric index matrices.

A Fourier index ``T`` is stored through its double ``S = 2T``, an integer
symmetric matrix with even diagonal.  Matrices are immutable and ordered
lexicographically on the row-major flattening of ``S``; that order is the
canonical order used for enumeration, convolution and serialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import GenusMismatch, ResourceLimitError

#: default cap on the number of matrices produced by :func:`enumerate_psd`
ENUMERATION_CAP = 2_000_000


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True, order=True)
class HalfIntegralMatrix:
    """Half-integral symmetric ``g x g`` matrix ``T``, stored as ``S = 2T``.

    ``doubled`` is the row-major flattening of ``S``.  Use the constructors
    :meth:`from_doubled`, :meth:`from_entries`, :meth:`diag` and :meth:`zero`
    rather than building the flat tuple by hand.
    """

    doubled: tuple[int, ...]

    def __post_init__(self):
        g = math.isqrt(len(self.doubled))
        if g < 1 or g * g != len(self.doubled):
            raise ValueError(f"doubled matrix has {len(self.doubled)} entries, not a positive square")
        s = self.doubled
        for i in range(g):
            if s[i * g + i] % 2:
                raise ValueError(f"odd diagonal entry S[{i}][{i}] = {s[i * g + i]}; t_ii must be an integer")
            for j in range(i + 1, g):
                if s[i * g + j] != s[j * g + i]:
                    raise ValueError(f"S is not symmetric at ({i}, {j})")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_doubled(cls, rows: Sequence[Sequence[int]]) -> "HalfIntegralMatrix":
        g = len(rows)
        flat = []
        for r in rows:
            if len(r) != g:
                raise ValueError("doubled matrix must be square")
            for x in r:
                if isinstance(x, bool) or int(x) != x:
                    raise ValueError(f"doubled entries must be integers, got {x!r}")
                flat.append(int(x))
        return cls(tuple(flat))

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> "HalfIntegralMatrix":
        """Build from the entries of ``T`` itself (integers, halves allowed off the diagonal)."""
        doubled = []
        for r in rows:
            row = []
            for x in r:
                x2 = Fraction(x) * 2
                if x2.denominator != 1:
                    raise ValueError(f"entry {x} is not half-integral")
                row.append(int(x2))
            doubled.append(row)
        return cls.from_doubled(doubled)

    @classmethod
    def diag(cls, *entries: int) -> "HalfIntegralMatrix":
        g = len(entries)
        return cls.from_doubled([[2 * entries[i] if i == j else 0 for j in range(g)] for i in range(g)])

    @classmethod
    def zero(cls, genus: int) -> "HalfIntegralMatrix":
        return cls((0,) * (genus * genus))

    @classmethod
    def scalar(cls, n: int) -> "HalfIntegralMatrix":
        """Genus-1 index ``[n]``."""
        return cls((2 * n,))

    # -- accessors --------------------------------------------------------

    @property
    def genus(self) -> int:
        return math.isqrt(len(self.doubled))

    def doubled_rows(self) -> list[list[int]]:
        g = self.genus
        return [list(self.doubled[i * g:(i + 1) * g]) for i in range(g)]

    def doubled_entry(self, i: int, j: int) -> int:
        """Entry ``S[i][j]`` with 1-based indices."""
        g = self.genus
        return self.doubled[(i - 1) * g + (j - 1)]

    def entry(self, i: int, j: int) -> Fraction:
        """Entry ``t_ij`` with 1-based indices."""
        return Fraction(self.doubled_entry(i, j), 2)

    @property
    def trace(self) -> int:
        g = self.genus
        return sum(self.doubled[i * g + i] for i in range(g)) // 2

    def det(self) -> Fraction:
        return det_rational(self)

    def is_psd(self) -> bool:
        return is_psd(self)

    def __add__(self, other: "HalfIntegralMatrix") -> "HalfIntegralMatrix":
        return add(self, other)

    def scaled(self, k: int) -> "HalfIntegralMatrix":
        return HalfIntegralMatrix(tuple(k * x for x in self.doubled))

    def __repr__(self):
        g = self.genus
        if g == 1:
            return f"T[{self.doubled[0] // 2}]"
        rows = []
        for i in range(1, g + 1):
            rows.append("[" + ", ".join(str(self.entry(i, j)) for j in range(1, g + 1)) + "]")
        return "T[" + ", ".join(rows) + "]"


def is_psd(T: HalfIntegralMatrix) -> bool:
    """Exact positive semi-definiteness: every principal minor is nonnegative."""
    g = T.genus
    rows = T.doubled_rows()
    for i in range(g):
        if rows[i][i] < 0:
            return False
    for k in range(2, g + 1):
        for idx in combinations(range(g), k):
            if _int_det([[rows[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def det_rational(T: HalfIntegralMatrix) -> Fraction:
    """``det(T)`` as an exact rational; the denominator divides ``2**g``."""
    return Fraction(_int_det(T.doubled_rows()), 2 ** T.genus)


def add(T1: HalfIntegralMatrix, T2: HalfIntegralMatrix) -> HalfIntegralMatrix:
    if len(T1.doubled) != len(T2.doubled):
        raise GenusMismatch(f"cannot add index matrices of genus {T1.genus} and {T2.genus}")
    return HalfIntegralMatrix(tuple(a + b for a, b in zip(T1.doubled, T2.doubled)))


def enumerate_psd(g: int, max_trace: int, *, cap: int = ENUMERATION_CAP) -> list[HalfIntegralMatrix]:
    """All PSD half-integral ``T`` of genus ``g`` with ``tr(T) <= max_trace``.

    The result is sorted lexicographically on the flattened doubled matrix.
    Off-diagonal entries are searched in ``S_ij**2 <= S_ii * S_jj``, which
    every PSD matrix satisfies.  Raises :class:`ResourceLimitError` once more
    than ``cap`` matrices would be returned.
    """
    if g < 1:
        raise ValueError("genus must be positive")
    if max_trace < 0:
        return []
    pairs = [(i, j) for i in range(g) for j in range(i + 1, g)]
    out: list[HalfIntegralMatrix] = []

    def diagonals(k: int, budget: int) -> Iterable[tuple[int, ...]]:
        if k == 0:
            yield ()
            return
        for t in range(budget + 1):
            for rest in diagonals(k - 1, budget - t):
                yield (t,) + rest

    for diag in diagonals(g, max_trace):
        ranges = []
        for i, j in pairs:
            bound = math.isqrt(4 * diag[i] * diag[j])
            ranges.append(range(-bound, bound + 1))
        for offs in product(*ranges):
            s = [[0] * g for _ in range(g)]
            for i in range(g):
                s[i][i] = 2 * diag[i]
            for (i, j), v in zip(pairs, offs):
                s[i][j] = s[j][i] = v
            T = HalfIntegralMatrix(tuple(x for r in s for x in r))
            if is_psd(T):
                out.append(T)
                if len(out) > cap:
                    raise ResourceLimitError(
                        f"enumerate_psd(g={g}, max_trace={max_trace}) exceeds the cap of {cap} matrices")
    out.sort()
    return out
