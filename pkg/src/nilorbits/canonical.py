"""Orbit canonical forms for tuples of nilpotent 2x2 matrices.

Every GL_2-orbit on m-tuples of nilpotent 2x2 matrices holds exactly one
tuple of one of three shapes:

* ``Zero``:  ``(0, ..., 0)``
* ``Line``:  ``(a_1 E12, ..., a_m E12)`` with the first nonzero ``a_v = 1``
* ``Split``: ``(a_1 E12, ..., a_r E12, b E21, D_1, ..., D_s)`` with the first
  nonzero prefix coefficient equal to 1, ``b != 0`` and arbitrary nilpotent
  tail matrices ``D_i``.

:func:`canonicalize` reaches the representative constructively and returns
the conjugating matrix as a certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .gf import Fe, Field, FieldError
from .matrices import (
    Mat,
    conjugate_tuple,
    enumerate_gl,
    enumerate_nilpotent,
    is_nilpotent,
    tuple_from_json,
)

MAX_M = 6


class CanonicalError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    tag: str  # "Zero" | "Line" | "Split"
    field: Field
    m: int
    alphas: tuple[Fe, ...] = ()
    pivot: Fe | None = None
    tail: tuple[Mat, ...] = ()

    @property
    def r(self) -> int:
        return len(self.alphas) if self.tag == "Split" else 0

    def materialize(self) -> tuple[Mat, ...]:
        F = self.field
        E12, E21 = Mat.unit(F, 1, 2), Mat.unit(F, 2, 1)
        if self.tag == "Zero":
            return (Mat.zero(F),) * self.m
        if self.tag == "Line":
            return tuple(a * E12 for a in self.alphas)
        return tuple(a * E12 for a in self.alphas) + (self.pivot * E21,) + self.tail

    def to_json(self) -> dict:
        def enc(x: Fe):
            return x.code if x.field.is_finite else str(x.v)

        return {
            "tag": self.tag,
            "m": self.m,
            "alphas": [enc(a) for a in self.alphas],
            "pivot": None if self.pivot is None else enc(self.pivot),
            "tail": [[enc(x) for x in D.entries] for D in self.tail],
        }

    @classmethod
    def from_json(cls, F: Field, data: dict) -> CanonicalForm:
        dec = F.from_code if F.is_finite else (lambda s: F(Fraction(s)))
        return cls(
            tag=data["tag"],
            field=F,
            m=data["m"],
            alphas=tuple(dec(a) for a in data["alphas"]),
            pivot=None if data["pivot"] is None else dec(data["pivot"]),
            tail=tuple_from_json(F, data["tail"]),
        )

    def __str__(self) -> str:
        if self.tag == "Zero":
            return "Zero"
        if self.tag == "Line":
            return "Line(" + ",".join(map(repr, self.alphas)) + ")"
        tail = "".join(f";{D!r}" for D in self.tail)
        return "Split(" + ",".join(map(repr, self.alphas)) + f"|{self.pivot!r}{tail})"


@dataclass(frozen=True)
class Witness:
    """Invertible ``g`` with ``g . input == materialize(form)``."""

    g: Mat


def standardize_nilpotent(A: Mat) -> tuple[Mat, Mat]:
    """Return ``(g, E12)`` with ``g A g^-1 = E12`` for nonzero nilpotent ``A``.

    With ``v`` the first basis vector not killed by ``A``, ``P = (Av | v)``
    sends ``E12`` to ``A``, so ``g = P^-1``.
    """
    if A.n != 2 or not A or not is_nilpotent(A):
        raise CanonicalError("standardize_nilpotent needs a nonzero nilpotent 2x2 matrix")
    F = A.field
    if A[0, 0] or A[1, 0]:
        v = (F.one, F.zero)
    else:
        v = (F.zero, F.one)
    Av = (A[0, 0] * v[0] + A[0, 1] * v[1], A[1, 0] * v[0] + A[1, 1] * v[1])
    P = Mat(2, (Av[0], v[0], Av[1], v[1]))
    return P.inverse(), Mat.unit(F, 1, 2)


def _validate(T: Sequence[Mat]) -> Field:
    if not T:
        raise CanonicalError("empty tuple")
    F = T[0].field
    for A in T:
        if A.n != 2 or A.field != F:
            raise CanonicalError("tuple entries must be 2x2 matrices over one field")
        if not is_nilpotent(A):
            raise CanonicalError(f"{A!r} is not nilpotent")
    return F


def canonicalize(T: Sequence[Mat]) -> tuple[CanonicalForm, Witness]:
    F = _validate(T)
    m = len(T)
    nonzero = [i for i, A in enumerate(T) if A]
    if not nonzero:
        return CanonicalForm("Zero", F, m), Witness(Mat.identity(F))
    v = nonzero[0]
    g, _ = standardize_nilpotent(T[v])
    cur = conjugate_tuple(g, T)

    # Entries with zero (2,1) slot are multiples of E12: a21 = 0 forces a11 = 0.
    j = next((i for i in range(v + 1, m) if cur[i][1, 0]), None)
    if j is None:
        return CanonicalForm("Line", F, m, tuple(A[0, 1] for A in cur)), Witness(g)

    a1, a3 = cur[j][0, 0], cur[j][1, 0]
    u = Mat(2, (F.one, -a1 / a3, F.zero, F.one))
    cur = conjugate_tuple(u, cur)
    g = u * g
    form = CanonicalForm(
        "Split",
        F,
        m,
        alphas=tuple(A[0, 1] for A in cur[:j]),
        pivot=cur[j][1, 0],
        tail=tuple(cur[j + 1:]),
    )
    return form, Witness(g)


def canonical_form(T: Sequence[Mat]) -> CanonicalForm:
    return canonicalize(T)[0]


def are_similar(T1: Sequence[Mat], T2: Sequence[Mat]) -> bool:
    if len(T1) != len(T2):
        raise CanonicalError("tuples of different length")
    if T1 and T2 and T1[0].field != T2[0].field:
        raise FieldError("tuples over different fields")
    return canonical_form(T1) == canonical_form(T2)


def similar_by_search(T1: Sequence[Mat], T2: Sequence[Mat], group: Sequence[Mat] | None = None) -> Mat | None:
    """Brute-force oracle: some ``g`` in GL_2 with ``g . T1 == T2``, or None."""
    T2 = tuple(T2)
    if group is None:
        group = enumerate_gl(T1[0].field, 2)
    for g in group:
        if conjugate_tuple(g, T1) == T2:
            return g
    return None


def normalized_vectors(F: Field, length: int) -> Iterator[tuple[Fe, ...]]:
    """Nonzero vectors whose first nonzero entry is 1, in lexicographic order."""
    els = F.elements()
    for v in reversed(range(length)):
        head = (F.zero,) * v + (F.one,)
        for rest in itertools.product(els, repeat=length - v - 1):
            yield head + rest


def iter_orbit_representatives(F: Field, m: int) -> Iterator[CanonicalForm]:
    if m < 1:
        raise CanonicalError("m must be at least 1")
    if not F.is_finite:
        raise FieldError("orbit representatives need a finite field")
    yield CanonicalForm("Zero", F, m)
    for alphas in normalized_vectors(F, m):
        yield CanonicalForm("Line", F, m, alphas)
    nil = enumerate_nilpotent(F, 2)
    for r in range(1, m):
        for prefix in normalized_vectors(F, r):
            for pivot in F.elements(nonzero=True):
                for tail in itertools.product(nil, repeat=m - r - 1):
                    yield CanonicalForm("Split", F, m, prefix, pivot, tail)


def orbit_representatives(F: Field, m: int, max_m: int = MAX_M) -> list[CanonicalForm]:
    if m > max_m:
        raise CanonicalError(f"m={m} exceeds the representative cap {max_m}")
    return list(iter_orbit_representatives(F, m))
