"""Invariant functions on tuples of nilpotent 2x2 matrices and their checks.

Supported functions: pair and triple trace words, the zero indicator
``zeta(A)`` and the proportionality indicator ``eta_a(A, B) = [a A == B]``.
Over GF(q) the two indicators have explicit polynomial forms of degree
``q - 1`` and ``4(q - 1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from .canonical import CanonicalForm, canonical_form, orbit_representatives
from .gf import Fe, Field, FieldError
from .indicator import HSet, ReducedPoly, interpolate, tuple_point
from .matrices import Mat, D, enumerate_nil_tuples, tuple_to_json

KINDS = ("S2", "S", "H2", "H")


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantFn:
    """A class function on m-tuples; indices are 1-based.

    kind is one of ``TrPair``, ``TrTriple``, ``Zeta``, ``Eta``, ``Indicator``.
    ``Indicator`` wraps a table keyed by canonical form.
    """

    kind: str
    indices: tuple[int, ...]
    alpha: Fe | None = None
    table: Callable[[CanonicalForm], Fe] | None = field(default=None, compare=False)
    label: str = ""

    @property
    def name(self) -> str:
        ys = ["Y%d" % i for i in self.indices]
        if self.kind in ("TrPair", "TrTriple"):
            return "tr(" + "".join(ys) + ")"
        if self.kind == "Zeta":
            return f"zeta({ys[0]})"
        if self.kind == "Eta":
            return f"eta_{self.alpha!r}({ys[0]},{ys[1]})"
        return self.label or "indicator"

    def __str__(self) -> str:
        return self.name


def tr_pair(i: int, j: int) -> InvariantFn:
    return InvariantFn("TrPair", (i, j))


def tr_triple(i: int, j: int, k: int) -> InvariantFn:
    return InvariantFn("TrTriple", (i, j, k))


def zeta(i: int) -> InvariantFn:
    return InvariantFn("Zeta", (i,))


def eta(alpha: Fe, i: int, j: int) -> InvariantFn:
    return InvariantFn("Eta", (i, j), alpha)


def h_functions(H: HSet) -> list[InvariantFn]:
    """Wrap the rows of an :class:`HSet` as indicator-kind invariants."""
    out = []
    for i in range(H.size):
        row, index = H.alpha[i], H._index
        out.append(InvariantFn("Indicator", (), table=lambda c, row=row, index=index: row[index[c]], label=f"h{i + 1}"))
    return out


def eval_invariant(f: InvariantFn, T: Sequence[Mat]) -> Fe:
    m = len(T)
    if any(not 1 <= i <= m for i in f.indices):
        raise InvariantError(f"{f.name} needs indices within 1..{m}")
    F = T[0].field
    A = [T[i - 1] for i in f.indices]
    if f.kind == "TrPair":
        return (A[0] * A[1]).trace()
    if f.kind == "TrTriple":
        return (A[0] * A[1] * A[2]).trace()
    if f.kind == "Zeta":
        return F.zero if A[0] else F.one
    if f.kind == "Eta":
        return F.one if f.alpha * A[0] == A[1] else F.zero
    if f.kind == "Indicator":
        return f.table(canonical_form(T))
    raise InvariantError(f"unknown invariant kind {f.kind!r}")


def zeta_poly(A: Mat, q: int) -> Fe:
    """a11^(q-1) - a12^(q-1) - a21^(q-1) + 1."""
    F = A.field
    if not F.is_finite or F.q != q:
        raise FieldError("zeta_poly needs the matrix over GF(q)")
    a1, a2, a3 = A[0, 0], A[0, 1], A[1, 0]
    return a1 ** (q - 1) - a2 ** (q - 1) - a3 ** (q - 1) + 1


def eta_poly(alpha: Fe, A: Mat, B: Mat, q: int) -> Fe:
    """prod over entries (u, v) of ((alpha a_uv - b_uv)^(q-1) - 1)."""
    F = A.field
    if not F.is_finite or F.q != q:
        raise FieldError("eta_poly needs matrices over GF(q)")
    out = F.one
    for a, b in zip(A.entries, B.entries):
        out = out * ((alpha * a - b) ** (q - 1) - 1)
    return out


def _y(F: Field, m: int, k: int, u: int, v: int) -> ReducedPoly:
    """Coordinate y_uv(k) (1-based k, 0-based u, v) on N_2(F)^m."""
    return ReducedPoly.var(4 * m, F, 4 * (k - 1) + 2 * u + v)


def as_reduced_poly(f: InvariantFn, F: Field, m: int) -> ReducedPoly:
    """A polynomial representative of ``f`` in the 4m entry coordinates."""
    if not F.is_finite:
        raise FieldError("reduced polynomials need a finite field")
    n, q = 4 * m, F.q
    if f.kind == "TrPair":
        i, j = f.indices
        return sum(
            (_y(F, m, i, u, v) * _y(F, m, j, v, u) for u in range(2) for v in range(2)),
            ReducedPoly(n, F),
        )
    if f.kind == "TrTriple":
        i, j, k = f.indices
        return sum(
            (_y(F, m, i, u, v) * _y(F, m, j, v, w) * _y(F, m, k, w, u)
             for u in range(2) for v in range(2) for w in range(2)),
            ReducedPoly(n, F),
        )
    if f.kind == "Zeta":
        (i,) = f.indices
        return _y(F, m, i, 0, 0) ** (q - 1) - _y(F, m, i, 0, 1) ** (q - 1) - _y(F, m, i, 1, 0) ** (q - 1) + 1
    if f.kind == "Eta":
        i, j = f.indices
        out = ReducedPoly.constant(n, F, 1)
        for u, v in itertools.product(range(2), repeat=2):
            out = out * ((f.alpha * _y(F, m, i, u, v) - _y(F, m, j, u, v)) ** (q - 1) - 1)
        return out
    if f.kind == "Indicator":
        values = {tuple_point(T): f.table(canonical_form(T)) for T in enumerate_nil_tuples(F, m)}
        return interpolate(F, n, values)
    raise InvariantError(f"unknown invariant kind {f.kind!r}")


@dataclass
class InvariantSet:
    kind: str
    field: Field
    m: int
    functions: list[InvariantFn]

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def names(self) -> list[str]:
        return [f.name for f in self.functions]

    def values(self, T: Sequence[Mat]) -> tuple[Fe, ...]:
        return tuple(eval_invariant(f, T) for f in self.functions)

    def without(self, f: InvariantFn) -> InvariantSet:
        return InvariantSet("custom", self.field, self.m, [g for g in self.functions if g != f])


def build_set(kind: str, F: Field, m: int) -> InvariantSet:
    """S2 pair traces; S adds triple traces; H2/H add zeta and eta_a, a not in {0, 1}."""
    if kind not in KINDS:
        raise InvariantError(f"unknown set kind {kind!r}; expected one of {KINDS}")
    if m < 1:
        raise InvariantError("m must be positive")
    idx = range(1, m + 1)
    fns = [tr_pair(i, j) for i, j in itertools.combinations(idx, 2)]
    if kind in ("S", "H"):
        fns += [tr_triple(i, j, k) for i, j, k in itertools.combinations(idx, 3)]
    if kind in ("H2", "H"):
        if not F.is_finite:
            raise FieldError(f"{kind} is defined over finite fields only")
        fns += [zeta(i) for i in idx]
        alphas = [a for a in F.elements() if a != 0 and a != 1]
        fns += [eta(a, i, j) for i, j in itertools.combinations(idx, 2) for a in alphas]
    return InvariantSet(kind, F, m, fns)


def expected_size(kind: str, q: int, m: int) -> int:
    h2 = m + comb(m, 2) * (q - 1)
    return {"S2": comb(m, 2), "S": comb(m, 2) + comb(m, 3), "H2": h2, "H": h2 + comb(m, 3)}[kind]


def separated_by(S: InvariantSet, T1: Sequence[Mat], T2: Sequence[Mat]) -> bool:
    return S.values(T1) != S.values(T2)


# -- verification over orbit representatives ----------------------------------


Pair = tuple[CanonicalForm, CanonicalForm]


@dataclass
class SeparationReport:
    set_kind: str
    q: int
    m: int
    separating: bool
    witness: Pair | None = None
    minimal: bool | None = None
    minimality_witnesses: dict[str, Pair | None] = field(default_factory=dict)

    def to_json(self) -> dict:
        def pair(p):
            return None if p is None else [tuple_to_json(c.materialize()) for c in p]

        witnesses = []
        if self.witness is not None:
            witnesses.append({"element": None, "kind": "not-separated", "pair": pair(self.witness)})
        for name, p in self.minimality_witnesses.items():
            witnesses.append({"element": name, "kind": "needed-by", "pair": pair(p)})
        return {
            "set": self.set_kind,
            "q": self.q,
            "m": self.m,
            "separating": self.separating,
            "minimal": self.minimal,
            "witnesses": witnesses,
        }


def _reps_and_vectors(S: InvariantSet, F: Field, m: int):
    if not F.is_finite:
        raise FieldError("separation is decided by enumeration over finite fields only")
    reps = orbit_representatives(F, m)
    return reps, [S.values(c.materialize()) for c in reps]


def check_separating(S: InvariantSet, F: Field, m: int) -> SeparationReport:
    """Compare value vectors on all orbit representatives.

    The witness is the first colliding pair met when scanning
    representatives in order: (earliest partner, first repeat).
    """
    reps, vecs = _reps_and_vectors(S, F, m)
    first: dict[tuple, int] = {}
    for j, v in enumerate(vecs):
        if v in first:
            return SeparationReport(S.kind, F.q, m, False, (reps[first[v]], reps[j]))
        first[v] = j
    return SeparationReport(S.kind, F.q, m, True)


def colliding_pairs(S: InvariantSet, F: Field, m: int) -> list[Pair]:
    """All pairs of distinct orbits that ``S`` does not separate."""
    reps, vecs = _reps_and_vectors(S, F, m)
    groups: dict[tuple, list[int]] = {}
    for j, v in enumerate(vecs):
        groups.setdefault(v, []).append(j)
    index_pairs = sorted(p for g in groups.values() for p in itertools.combinations(g, 2))
    return [(reps[a], reps[b]) for a, b in index_pairs]


def check_minimality(S: InvariantSet, F: Field, m: int) -> SeparationReport:
    """For each element find an orbit pair separated by it and by nothing else in S."""
    report = check_separating(S, F, m)
    reps, vecs = _reps_and_vectors(S, F, m)
    for pos, f in enumerate(S.functions):
        best = None
        groups: dict[tuple, list[int]] = {}
        for j, v in enumerate(vecs):
            groups.setdefault(v[:pos] + v[pos + 1:], []).append(j)
        for members in groups.values():
            pair = next(
                ((a, b) for a, b in itertools.combinations(members, 2) if vecs[a][pos] != vecs[b][pos]),
                None,
            )
            if pair is not None and (best is None or pair < best):
                best = pair
        report.minimality_witnesses[f.name] = None if best is None else (reps[best[0]], reps[best[1]])
    report.minimal = report.separating and all(p is not None for p in report.minimality_witnesses.values())
    return report


def verify(kind: str, F: Field, m: int) -> SeparationReport:
    return check_minimality(build_set(kind, F, m), F, m)


def separating_kind(F: Field) -> str:
    """The set that is minimal separating over GF(q): H2 in characteristic 2, else H."""
    return "H2" if F.p == 2 else "H"


def needed_pairs(F: Field, beta: Fe | None = None) -> dict[str, tuple[tuple[Mat, ...], tuple[Mat, ...], InvariantFn]]:
    """Tuple pairs that a single element of H tells apart: name -> (A, B, element).

    The ``eta`` pair needs ``beta`` outside {0, 1}; the ``triple-trace`` pair needs odd characteristic
    (its pair coincides in characteristic 2).
    """
    E12, E21 = Mat.unit(F, 1, 2), Mat.unit(F, 2, 1)
    out = {
        "zeta": ((Mat.zero(F),), (E12,), zeta(1)),
        "pair-trace": ((E12, E12), (E12, E21), tr_pair(1, 2)),
    }
    if beta is not None:
        out["eta"] = ((E12, E12), (E12, beta * E12), eta(beta, 1, 2))
    if F.p != 2:
        out["triple-trace"] = ((E12, E21, D(F, 1, 1, -1)), (E12, E21, D(F, -1, 1, -1)), tr_triple(1, 2, 3))
    return out
