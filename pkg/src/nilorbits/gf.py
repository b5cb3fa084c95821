"""Exact arithmetic in GF(p), GF(p^k) and the rationals.

Finite field elements are encoded as integers ``0..q-1``: the element
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` has code ``c_0 + c_1 p + ... ``.
Integer order of codes is the canonical enumeration order, so every field
lists ``0, 1`` first and then the remaining coefficient vectors
lexicographically (highest coefficient most significant).
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

MAX_ORDER = 128

# Moduli listed highest degree first, monic.
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 0, 1, 1),
    9: (1, 0, 1),
    16: (1, 0, 0, 1, 1),
    25: (1, 1, 1),
    27: (1, 0, 2, 1),
    49: (1, 1, 3),
    64: (1, 0, 0, 0, 0, 1, 1),
    81: (1, 0, 0, 1, 2),
    121: (1, 1, 7),
    128: (1, 0, 0, 0, 0, 0, 1, 1),
}


class FieldError(ValueError):
    """Raised for malformed field specs, unsupported sizes and bad arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


# -- polynomials over GF(p), lists of coefficients lowest degree first -------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def is_irreducible(coeffs_high_first: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test by trial division with monic polynomials."""
    f = list(reversed(coeffs_high_first))
    k = len(f) - 1
    if k < 1 or f[-1] % p == 0:
        return False
    for d in range(1, k // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            divisor = list(lower) + [1]
            if not _poly_mod(f, divisor, p):
                return False
    return True


class Field:
    """A finite field GF(p^k) or the rational field.

    Build instances with :func:`field_make`; fields compare equal when they
    share characteristic, degree and modulus.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus) if modulus is not None else None
        if p == 0:
            self.kind = "rational"
            self.q = None
            return
        self.kind = "finite"
        self.q = p**k
        self._build_tables()
        self._elements = tuple(Fe(self, v) for v in range(self.q))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def spec(self) -> str:
        if not self.is_finite:
            return "rational"
        if self.k == 1:
            return f"q={self.p}"
        return f"q={self.p}^{self.k};poly=" + ",".join(map(str, self.modulus))

    def __repr__(self) -> str:
        if not self.is_finite:
            return "Field(rational)"
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            vecs = [self._digits(v) for v in range(q)]
            self._add = [
                [self._undigits([(x + y) % p for x, y in zip(va, vb)]) for vb in vecs]
                for va in vecs
            ]
            mod_low = list(reversed(self.modulus))
            self._mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(a, q):
                    prod = [0] * (2 * k - 1)
                    for i, x in enumerate(vecs[a]):
                        if x:
                            for j, y in enumerate(vecs[b]):
                                prod[i + j] += x * y
                    r = _poly_mod(prod, mod_low, p)
                    c = self._undigits(r + [0] * (k - len(r)))
                    self._mul[a][b] = self._mul[b][a] = c
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [0] + [next(b for b in range(1, q) if self._mul[a][b] == 1) for a in range(1, q)]

    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.k):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    # -- element construction ------------------------------------------------

    def __call__(self, value: int | Fraction | Fe) -> Fe:
        """Coerce an integer (or fraction, in rational mode) into the field.

        Integers land in the prime subfield, so ``F(-1)`` is ``-1`` in every
        field. Use :meth:`from_code` to decode the integer serialization.
        """
        if isinstance(value, Fe):
            if value.field != self:
                raise FieldError(f"element of {value.field!r} used in {self!r}")
            return value
        if not self.is_finite:
            return Fe(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError("division by zero")
            return self(value.numerator) / self(value.denominator)
        return self._elements[int(value) % self.p]

    def from_code(self, code: int) -> Fe:
        if not self.is_finite:
            return Fe(self, Fraction(code))
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self!r}")
        return self._elements[code]

    @property
    def zero(self) -> Fe:
        return self(0)

    @property
    def one(self) -> Fe:
        return self(1)

    def gen(self) -> Fe:
        """The class of ``x`` in GF(p^k); for k = 1 the element 1."""
        return self.from_code(self.p if self.k > 1 else 1)

    def elements(self, nonzero: bool = False) -> list[Fe]:
        if not self.is_finite:
            raise FieldError("the rational field cannot be enumerated")
        return list(self._elements[1:] if nonzero else self._elements)

    def __iter__(self) -> Iterator[Fe]:
        return iter(self.elements())

    def primitive_element(self) -> Fe:
        """Smallest-code generator of the multiplicative group."""
        for x in self.elements(nonzero=True):
            seen, y = set(), self.one
            for _ in range(self.q - 1):
                y = y * x
                seen.add(y.code)
            if len(seen) == self.q - 1:
                return x
        raise AssertionError("multiplicative group is not cyclic")


class Fe:
    """An element of a :class:`Field`."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v: int | Fraction):
        self.field = field
        self.v = v

    @property
    def code(self) -> int:
        """Integer serialization (finite fields only)."""
        if not self.field.is_finite:
            raise FieldError("rational elements have no integer code")
        return self.v

    def _other(self, other: object) -> Fe | None:
        if isinstance(other, Fe):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.is_finite:
            return F._elements[F._add[self.v][o.v]]
        return Fe(F, self.v + o.v)

    __radd__ = __add__

    def __neg__(self) -> Fe:
        F = self.field
        if F.is_finite:
            return F._elements[F._neg[self.v]]
        return Fe(F, -self.v)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.is_finite:
            return F._elements[F._mul[self.v][o.v]]
        return Fe(F, self.v * o.v)

    __rmul__ = __mul__

    def inv(self) -> Fe:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        F = self.field
        if F.is_finite:
            return F._elements[F._inv[self.v]]
        return Fe(F, 1 / self.v)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int) -> Fe:
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fe):
            return self.v == other.v and self.field == other.field
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.v)

    def __lt__(self, other: Fe) -> bool:
        return self.v < other.v

    def __repr__(self) -> str:
        F = self.field
        if not F.is_finite:
            return str(self.v)
        if F.k == 1:
            return str(self.v)
        terms = []
        for i, c in reversed(list(enumerate(F._digits(self.v)))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = "" if (c == 1 and i) else str(c)
            terms.append(coef + mono)
        return "+".join(terms) or "0"


_SPEC_RE = re.compile(r"^q=(\d+)(?:\^(\d+))?(?:;poly=([\d,\s]+))?$")


@lru_cache(maxsize=None)
def field_make(spec: str) -> Field:
    """Parse ``q=<p>``, ``q=<p>^<k>``, ``q=<p>^<k>;poly=<coeffs>`` or ``rational``.

    ``poly`` lists the monic modulus coefficients from the leading one down,
    e.g. ``q=3^2;poly=1,0,1`` is GF(9) modulo ``x^2 + 1``.
    """
    spec = spec.strip().replace(" ", "")
    if spec.lower() in ("rational", "q=0", "qq"):
        return Field(0)
    match = _SPEC_RE.match(spec)
    if not match:
        raise FieldError(f"malformed field spec {spec!r}")
    p = int(match.group(1))
    k = int(match.group(2) or 1)
    if not is_prime(p):
        raise FieldError(f"{p} is not prime; write prime powers as q=<p>^<k>")
    if k < 1:
        raise FieldError("extension degree must be positive")
    q = p**k
    if q > MAX_ORDER:
        raise FieldError(f"unsupported field size q={q} (max {MAX_ORDER})")
    if match.group(3) is not None:
        modulus = tuple(int(c) for c in match.group(3).split(","))
        if len(modulus) != k + 1 or modulus[0] != 1 or any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus must be monic of degree {k} with coefficients in 0..{p - 1}")
    elif k == 1:
        modulus = None
    elif q in BUILTIN_MODULI:
        modulus = BUILTIN_MODULI[q]
    else:
        raise FieldError(f"no built-in modulus for q={q}; pass one with ;poly=")
    if k == 1:
        if modulus is not None and modulus != (1, 0):
            raise FieldError("prime fields take no modulus other than x")
        return Field(p)
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return Field(p, k, modulus)


def field_elements(F: Field, nonzero: bool = False) -> list[Fe]:
    return F.elements(nonzero)


RATIONAL = Field(0)
