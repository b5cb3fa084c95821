"""Small square matrices over a :class:`~nilorbits.gf.Field`.

Matrices are immutable and hashable, stored as a flat row-major tuple of
field elements. Only sizes 2 and 3 are enumerated.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .gf import Fe, Field, FieldError

MAX_N = 3


class MatrixError(ValueError):
    pass


class Mat:
    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries: Iterable[Fe]):
        entries = tuple(entries)
        if len(entries) != n * n:
            raise MatrixError(f"expected {n * n} entries, got {len(entries)}")
        self.n = n
        self.entries = entries
        self._hash = None

    @classmethod
    def of(cls, F: Field, rows: Sequence[Sequence[int]]) -> Mat:
        """Build from nested rows of integers coerced into ``F``."""
        n = len(rows)
        return cls(n, (F(x) for row in rows for x in row))

    @classmethod
    def from_codes(cls, F: Field, codes: Sequence[int]) -> Mat:
        n = round(len(codes) ** 0.5)
        return cls(n, (F.from_code(c) for c in codes))

    @classmethod
    def zero(cls, F: Field, n: int = 2) -> Mat:
        return cls(n, [F.zero] * (n * n))

    @classmethod
    def identity(cls, F: Field, n: int = 2) -> Mat:
        return cls(n, (F.one if i == j else F.zero for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, F: Field, i: int, j: int, n: int = 2) -> Mat:
        """Matrix unit E_ij with 1-based indices."""
        return cls(n, (F.one if (r, c) == (i - 1, j - 1) else F.zero for r in range(n) for c in range(n)))

    @property
    def field(self) -> Field:
        return self.entries[0].field

    def __getitem__(self, ij: tuple[int, int]) -> Fe:
        i, j = ij
        return self.entries[i * self.n + j]

    def rows(self) -> list[list[Fe]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def codes(self) -> list[int]:
        return [x.code for x in self.entries]

    def _check(self, other: Mat) -> None:
        if self.n != other.n:
            raise MatrixError(f"shape mismatch: {self.n} vs {other.n}")
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self.n, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self.n, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat:
        return Mat(self.n, (-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, Mat):
            self._check(other)
            n, a, b = self.n, self.entries, other.entries
            out = []
            for i in range(n):
                row = a[i * n:(i + 1) * n]
                for j in range(n):
                    acc = row[0] * b[j]
                    for k in range(1, n):
                        acc = acc + row[k] * b[k * n + j]
                    out.append(acc)
            return Mat(n, out)
        if isinstance(other, (Fe, int)):
            return Mat(self.n, (a * other for a in self.entries))
        return NotImplemented

    def __rmul__(self, scalar):
        if isinstance(scalar, (Fe, int)):
            return Mat(self.n, (scalar * a for a in self.entries))
        return NotImplemented

    def __pow__(self, e: int) -> Mat:
        result = Mat.identity(self.field, self.n)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.entries))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.entries)

    def __repr__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(repr, r)) + "]" for r in self.rows()) + "]"

    def trace(self) -> Fe:
        return sum((self[i, i] for i in range(1, self.n)), self[0, 0])

    def det(self) -> Fe:
        e = self.entries
        if self.n == 2:
            return e[0] * e[3] - e[1] * e[2]
        if self.n == 3:
            a, b, c, d, f, g, h, i, j = e
            return a * (f * j - g * i) - b * (d * j - g * h) + c * (d * i - f * h)
        raise MatrixError("det only for n <= 3")

    def inverse(self) -> Mat:
        d = self.det()
        if not d:
            raise MatrixError("singular matrix")
        e, dinv = self.entries, d.inv()
        if self.n == 2:
            a, b, c, dd = e
            return Mat(2, (dd * dinv, -b * dinv, -c * dinv, a * dinv))
        a, b, c, d_, f, g, h, i, j = e
        adj = (
            f * j - g * i, c * i - b * j, b * g - c * f,
            g * h - d_ * j, a * j - c * h, c * d_ - a * g,
            d_ * i - f * h, b * h - a * i, a * f - b * d_,
        )
        return Mat(3, (x * dinv for x in adj))


Mat2 = Mat


def trace(A: Mat) -> Fe:
    return A.trace()


def det2(A: Mat) -> Fe:
    if A.n != 2:
        raise MatrixError("det2 needs a 2x2 matrix")
    return A.det()


def is_nilpotent(A: Mat) -> bool:
    if A.n == 2:
        return not A.trace() and not A.det()
    return not A**A.n


def is_nilpotent_by_power(A: Mat) -> bool:
    return not A**A.n


def D(F: Field, b, c, d) -> Mat:
    """Traceless matrix [[b, c], [d, -b]]."""
    b, c, d = F(b), F(c), F(d)
    return Mat(2, (b, c, d, -b))


def _check_enumerable(F: Field, n: int) -> None:
    if not F.is_finite:
        raise FieldError("cannot enumerate matrices over the rationals")
    if n not in (2, 3):
        raise MatrixError(f"enumeration supports n in (2, 3), got {n}")


def enumerate_matrices(F: Field, n: int = 2) -> Iterable[Mat]:
    """All n x n matrices in base-q lexicographic order of row-major entries."""
    _check_enumerable(F, n)
    for entries in itertools.product(F.elements(), repeat=n * n):
        yield Mat(n, entries)


def enumerate_nilpotent(F: Field, n: int = 2) -> list[Mat]:
    _check_enumerable(F, n)
    if n == 2:
        # a11 is forced to satisfy a11^2 = -a12 a21; cheaper than filtering q^4.
        els = F.elements()
        out = []
        for a, b, c in itertools.product(els, repeat=3):
            if a * a + b * c == 0:
                out.append(Mat(2, (a, b, c, -a)))
        out.sort(key=lambda A: A.codes())
        return out
    return [A for A in enumerate_matrices(F, n) if is_nilpotent(A)]


def enumerate_gl(F: Field, n: int = 2) -> list[Mat]:
    return [A for A in enumerate_matrices(F, n) if A.det()]


def gl_order(q: int, n: int) -> int:
    return prod(q**n - q**i for i in range(n))


def conjugate(g: Mat, A: Mat, g_inv: Mat | None = None) -> Mat:
    if g_inv is None:
        g_inv = g.inverse()
    return g * A * g_inv


def conjugate_tuple(g: Mat, T: Sequence[Mat], g_inv: Mat | None = None) -> tuple[Mat, ...]:
    """Simultaneous conjugation ``(g A_1 g^-1, ..., g A_m g^-1)``."""
    if g_inv is None:
        g_inv = g.inverse()
    return tuple(g * A * g_inv for A in T)


def is_nil_tuple(T: Sequence[Mat]) -> bool:
    return len(T) >= 1 and all(A.n == 2 and is_nilpotent(A) for A in T)


def enumerate_nil_tuples(F: Field, m: int, n: int = 2) -> Iterable[tuple[Mat, ...]]:
    """All of N_n(F)^m in lexicographic order of the entry tuples."""
    return itertools.product(enumerate_nilpotent(F, n), repeat=m)


def tuple_to_json(T: Sequence[Mat]) -> list[list[int | str]]:
    """Row-major element codes per matrix; rationals serialise as strings."""
    return [[x.code if x.field.is_finite else str(x.v) for x in A.entries] for A in T]


def tuple_from_json(F: Field, data: Sequence[Sequence[int | str]]) -> tuple[Mat, ...]:
    out = []
    for entries in data:
        n = round(len(entries) ** 0.5)
        if F.is_finite:
            out.append(Mat(n, (F.from_code(int(c)) for c in entries)))
        else:
            out.append(Mat(n, (F(Fraction(c)) for c in entries)))
    return tuple(out)
