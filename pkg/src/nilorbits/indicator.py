"""Indicator functions over GF(q) and the gamma-element separating set.

Any function on a finite set of points of GF(q)^n is a polynomial with all
exponents below q. The point indicator

    f_w = prod_i ( -prod_{a != w_i} (y_i - a) )

is 1 at ``w`` and 0 elsewhere; summing them over an orbit gives the orbit
indicator, and combining orbit indicators with the columns of a matrix
whose columns are pairwise distinct gives a separating set with exactly
``ceil(log_q kappa)`` members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .canonical import CanonicalForm, canonical_form, orbit_representatives
from .counting import ceil_log, kappa
from .gf import Fe, Field, FieldError
from .matrices import Mat, enumerate_nil_tuples

Exps = tuple[int, ...]
Point = tuple[Fe, ...]


def _reduce_exp(e: int, q: int) -> int:
    # x^q = x as functions on GF(q)
    return e if e < q else (e - 1) % (q - 1) + 1


class ReducedPoly:
    """Polynomial over GF(q) in ``n`` variables with every exponent below q."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, F: Field, terms: Mapping[Exps, Fe] | None = None):
        if not F.is_finite:
            raise FieldError("reduced polynomials live over finite fields")
        self.n = n
        self.field = F
        self.terms: dict[Exps, Fe] = {}
        for exps, c in (terms or {}).items():
            if c:
                self.terms[tuple(exps)] = c

    @classmethod
    def constant(cls, n: int, F: Field, c) -> ReducedPoly:
        return cls(n, F, {(0,) * n: F(c)})

    @classmethod
    def var(cls, n: int, F: Field, i: int) -> ReducedPoly:
        exps = [0] * n
        exps[i] = 1
        return cls(n, F, {tuple(exps): F.one})

    def _coerce(self, other) -> ReducedPoly:
        if isinstance(other, ReducedPoly):
            if other.n != self.n or other.field != self.field:
                raise ValueError("polynomials over different rings")
            return other
        return ReducedPoly.constant(self.n, self.field, other)

    def __add__(self, other) -> ReducedPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return ReducedPoly(self.n, self.field, out)

    __radd__ = __add__

    def __neg__(self) -> ReducedPoly:
        return ReducedPoly(self.n, self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> ReducedPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> ReducedPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> ReducedPoly:
        if isinstance(other, (Fe, int)):
            c = self.field(other)
            return ReducedPoly(self.n, self.field, {e: a * c for e, a in self.terms.items()})
        other = self._coerce(other)
        q = self.field.q
        out: dict[Exps, Fe] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(_reduce_exp(a + b, q) for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return ReducedPoly(self.n, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ReducedPoly:
        result = ReducedPoly.constant(self.n, self.field, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedPoly):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __call__(self, point: Sequence[Fe]) -> Fe:
        F = self.field
        total = F.zero
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.field.q,
            "terms": [{"exps": list(e), "coeff": self.terms[e].code} for e in sorted(self.terms)],
        }


def poly_degree(P: ReducedPoly) -> int:
    return P.degree()


@lru_cache(maxsize=None)
def _lagrange_basis(F: Field) -> dict[int, tuple[Fe, ...]]:
    """Coefficients (lowest first) of L_a(y) = -prod_{b != a} (y - b), keyed by code of a."""
    basis = {}
    for a in F.elements():
        coeffs = [F.one]
        for b in F.elements():
            if b == a:
                continue
            # multiply by (y - b)
            shifted = [F.zero] + coeffs
            scaled = [-b * c for c in coeffs] + [F.zero]
            coeffs = [s + t for s, t in zip(shifted, scaled)]
        basis[a.code] = tuple(-c for c in coeffs)
    return basis


def point_indicator(w: Sequence[Fe]) -> ReducedPoly:
    """The product form of the indicator of ``w``, expanded factor by factor."""
    if not w:
        raise ValueError("empty point")
    F = w[0].field
    if not F.is_finite:
        raise FieldError("point indicators need a finite field")
    n = len(w)
    result = ReducedPoly.constant(n, F, (-1) ** n)
    for i, wi in enumerate(w):
        y = ReducedPoly.var(n, F, i)
        factor = ReducedPoly.constant(n, F, 1)
        for a in F.elements():
            if a != wi:
                factor = factor * (y - a)
        result = result * factor
    return result


def interpolate(F: Field, n: int, values: Mapping[Point, Fe]) -> ReducedPoly:
    """Reduced polynomial equal to ``values`` on its keys and 0 elsewhere.

    Computes sum_w values[w] * f_w one coordinate at a time: each coordinate
    value ``a`` is traded for the coefficients of its univariate indicator.
    """
    basis = _lagrange_basis(F)
    layer: dict[tuple, Fe] = {tuple(x.code for x in w): c for w, c in values.items() if c}
    for i in range(n):
        nxt: dict[tuple, Fe] = {}
        for key, c in layer.items():
            head, a, rest = key[:i], key[i], key[i + 1:]
            for e, b in enumerate(basis[a]):
                if not b:
                    continue
                k = head + (e,) + rest
                v = c * b
                nxt[k] = nxt[k] + v if k in nxt else v
        layer = nxt
    return ReducedPoly(n, F, layer)


def tuple_point(T: Sequence[Mat]) -> Point:
    """Coordinates of a matrix tuple: row-major entries, matrices in order."""
    return tuple(x for A in T for x in A.entries)


def orbit_indicator(orbit: Iterable[Sequence[Fe]], n: int | None = None) -> ReducedPoly:
    """Indicator of a point set, as the sum of its point indicators."""
    points = [tuple(u) for u in orbit]
    if not points:
        raise ValueError("empty orbit")
    F = points[0][0].field
    return interpolate(F, n or len(points[0]), {u: F.one for u in points})


# -- the gamma-element separating set ------------------------------------------


class HSetError(ValueError):
    pass


@dataclass
class HSet:
    """Functions h_1..h_gamma on N_2(F)^m, constant on orbits.

    ``alpha[i][j]`` is the value of ``h_i`` on the orbit of ``reps[j]``.
    """

    field: Field
    m: int
    reps: list[CanonicalForm]
    alpha: list[list[Fe]]
    _index: dict[CanonicalForm, int] = field(default_factory=dict, repr=False)
    _polys: dict[int, ReducedPoly] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {c: j for j, c in enumerate(self.reps)}

    @property
    def kappa(self) -> int:
        return len(self.reps)

    @property
    def size(self) -> int:
        return len(self.alpha)

    def columns(self, rows: Sequence[int] | None = None) -> list[tuple[Fe, ...]]:
        rows = range(self.size) if rows is None else rows
        return [tuple(self.alpha[i][j] for i in rows) for j in range(self.kappa)]

    def orbit_index(self, T: Sequence[Mat]) -> int:
        return self._index[canonical_form(T)]

    def value(self, i: int, T: Sequence[Mat]) -> Fe:
        return self.alpha[i][self.orbit_index(T)]

    def poly(self, i: int) -> ReducedPoly:
        """h_i as a reduced polynomial in the 4m matrix-entry coordinates."""
        if i not in self._polys:
            values = {
                tuple_point(T): self.alpha[i][self.orbit_index(T)]
                for T in enumerate_nil_tuples(self.field, self.m)
            }
            self._polys[i] = interpolate(self.field, 4 * self.m, values)
        return self._polys[i]

    def to_json(self, with_polys: bool = False) -> dict:
        out = {
            "field": self.field.spec,
            "q": self.field.q,
            "m": self.m,
            "kappa": self.kappa,
            "gamma": self.size,
            "orbits": [
                {"rep": c.to_json(), "values": [x.code for x in col]}
                for c, col in zip(self.reps, self.columns())
            ],
        }
        if with_polys:
            out["polys"] = [self.poly(i).to_json() for i in range(self.size)]
        return out


def default_alpha(F: Field, gamma: int, kappa_value: int) -> list[list[Fe]]:
    cols = list(itertools.islice(itertools.product(F.elements(), repeat=gamma), kappa_value))
    if len(cols) < kappa_value:
        raise HSetError(f"only {len(cols)} vectors in GF({F.q})^{gamma}, need {kappa_value}")
    return [[col[i] for col in cols] for i in range(gamma)]


def build_h_set(F: Field, m: int, alpha: Sequence[Sequence[Fe]] | None = None, strict: bool = True) -> HSet:
    """h_i = sum_j alpha[i][j] f_j over the orbit indicators f_j.

    Orbits are indexed in the order of :func:`orbit_representatives`.
    """
    if not F.is_finite:
        raise FieldError("the indicator construction needs a finite field")
    reps = orbit_representatives(F, m)
    k = len(reps)
    assert k == kappa(F.q, m)
    if alpha is None:
        alpha = default_alpha(F, ceil_log(F.q, k), k)
    alpha = [[F(x) for x in row] for row in alpha]
    if any(len(row) != k for row in alpha):
        raise HSetError(f"alpha must have {k} columns")
    H = HSet(F, m, reps, alpha)
    if strict and len(set(H.columns())) != k:
        raise HSetError("alpha has duplicate columns")
    return H


def columns_distinct(H: HSet, rows: Sequence[int] | None = None) -> bool:
    return len(set(H.columns(rows))) == H.kappa


def verify_h_separating(H: HSet) -> bool:
    """Orbit value-vectors pairwise distinct, and no (gamma-1)-subset separates."""
    if not columns_distinct(H):
        return False
    gamma = ceil_log(H.field.q, H.kappa)
    if gamma == 0:
        return True
    return not any(
        columns_distinct(H, rows) for rows in itertools.combinations(range(H.size), gamma - 1)
    )
