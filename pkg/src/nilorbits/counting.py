"""Orbit counts: closed forms, integer polynomial presentation and brute force."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .canonical import canonical_form, orbit_representatives
from .gf import Field, FieldError
from .matrices import (
    Mat,
    conjugate_tuple,
    enumerate_gl,
    enumerate_nilpotent,
    gl_order,
)

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in one variable, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __add__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + IntPoly(tuple(-c for c in other.coeffs))

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def in_square(self) -> IntPoly:
        """Substitute q -> q^2."""
        out = [0] * (2 * len(self.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return IntPoly(tuple(out))

    def __str__(self) -> str:
        terms = []
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            coef = str(c) if (abs(c) != 1 or k == 0) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def s_geom(q: int, k: int) -> int:
    """1 + q + ... + q^k, and 0 for negative k."""
    if k < 0:
        return 0
    return (q ** (k + 1) - 1) // (q - 1)


def s_geom_poly(k: int) -> IntPoly:
    if k < 0:
        return IntPoly((0,))
    return IntPoly((1,) * (k + 1))


def kappa(q: int, m: int) -> int:
    """Number of GL_2-orbits on m-tuples of nilpotent 2x2 matrices over GF(q)."""
    if m < 1 or q < 2:
        raise ValueError("kappa needs q >= 2 and m >= 1")
    num = (q**m - 1) * (q ** (m - 1) + q)
    den = q * q - 1
    quot, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"inexact division in kappa({q}, {m})")
    return 1 + quot


def kappa_by_types(q: int, m: int) -> tuple[int, int, int]:
    """Orbit counts per type (Zero, Line, Split) summed term by term."""
    line = s_geom(q, m - 1)
    split = sum(s_geom(q, r - 1) * (q - 1) * q ** (2 * (m - r - 1)) for r in range(1, m))
    return 1, line, split


def kappa_poly(m: int) -> IntPoly:
    if m < 1:
        raise ValueError("m must be positive")
    base = 1 + s_geom_poly(m - 1)
    if m % 2 == 0:
        return base + (IntPoly.monomial(m - 1) - 1) * s_geom_poly((m - 2) // 2).in_square()
    return base + (IntPoly.monomial(m) - 1) * s_geom_poly((m - 3) // 2).in_square()


def ceil_log(q: int, kappa_value: int) -> int:
    """Least g with q**g >= kappa_value, in exact integers."""
    g, power = 0, 1
    while power < kappa_value:
        g += 1
        power *= q
    return g


def gamma_formula(q: int, m: int) -> int:
    if m == 1:
        return 1
    if m == 2 and q == 2:
        return 3
    return 2 * m - 2


def gamma(q: int, m: int) -> int:
    """Least size of a separating set; case formula cross-checked against ceil(log_q kappa)."""
    by_cases = gamma_formula(q, m)
    by_log = ceil_log(q, kappa(q, m))
    if by_cases != by_log:
        raise AssertionError(f"gamma mismatch at q={q}, m={m}: {by_cases} != {by_log}")
    return by_cases


# -- brute force -------------------------------------------------------------


@dataclass
class OrbitCensus:
    field_spec: str
    n: int
    m: int
    count: int
    method: str
    orbit_sizes: list[int] = field(default_factory=list, repr=False)


def brute_force_cost(q: int, n: int, m: int) -> int:
    return q ** (n * (n - 1) * m) * gl_order(q, n)


def _check_budget(F: Field, n: int, m: int, budget: int) -> None:
    if not F.is_finite:
        raise FieldError("brute force needs a finite field")
    if m < 1:
        raise ValueError("m must be positive")
    cost = brute_force_cost(F.q, n, m)
    if cost > budget:
        raise BudgetExceeded(f"q={F.q}, n={n}, m={m} needs ~{cost} matrix ops (budget {budget})")


def orbit_partition(F: Field, m: int, n: int = 2, budget: int = DEFAULT_BUDGET) -> list[frozenset]:
    """Orbits of GL_n(F) on N_n(F)^m, found by sweeping the whole group.

    Orbits are listed in order of their lexicographically first tuple.
    """
    _check_budget(F, n, m, budget)
    group = [(g, g.inverse()) for g in enumerate_gl(F, n)]
    seen: set[tuple[Mat, ...]] = set()
    orbits = []
    for T in itertools.product(enumerate_nilpotent(F, n), repeat=m):
        if T in seen:
            continue
        orbit = frozenset(conjugate_tuple(g, T, gi) for g, gi in group)
        seen |= orbit
        orbits.append(orbit)
    return orbits


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)

    def count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if i == p)


def gl_generators(F: Field, n: int) -> list[Mat]:
    """Transvections I + b E_ij (b running over a prime-field basis) and diag(w, 1, ..)."""
    basis = [F.gen() ** i for i in range(F.k)]
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for b in basis:
                entries = list(Mat.identity(F, n).entries)
                entries[i * n + j] = b
                gens.append(Mat(n, entries))
    diag = list(Mat.identity(F, n).entries)
    diag[0] = F.primitive_element()
    gens.append(Mat(n, diag))
    return gens


def orbit_count_union_find(F: Field, m: int, n: int = 2, budget: int = DEFAULT_BUDGET) -> int:
    """Connected components of the action graph under a generating set of GL_n."""
    _check_budget(F, n, m, budget)
    tuples = list(itertools.product(enumerate_nilpotent(F, n), repeat=m))
    index = {T: i for i, T in enumerate(tuples)}
    uf = UnionFind(len(tuples))
    for g in gl_generators(F, n):
        gi = g.inverse()
        for i, T in enumerate(tuples):
            uf.union(i, index[conjugate_tuple(g, T, gi)])
    return uf.count()


def brute_force_orbit_count(
    F: Field, n: int, m: int, budget: int = DEFAULT_BUDGET, method: str = "sweep"
) -> OrbitCensus:
    if method == "sweep":
        orbits = orbit_partition(F, m, n, budget)
        return OrbitCensus(F.spec, n, m, len(orbits), "brute-force", [len(o) for o in orbits])
    if method == "union-find":
        return OrbitCensus(F.spec, n, m, orbit_count_union_find(F, m, n, budget), "brute-force")
    raise ValueError(f"unknown method {method!r}")


def census(F: Field, m: int, n: int = 2, check: str = "formula", budget: int = DEFAULT_BUDGET) -> dict:
    """One census row: q, n, m, kappa_formula, kappa_bruteforce, gamma (+ match)."""
    if not F.is_finite:
        raise FieldError("orbit census needs a finite field")
    row: dict = {"q": F.q, "n": n, "m": m, "kappa_formula": None, "kappa_bruteforce": None, "gamma": None}
    if n == 2:
        row["kappa_formula"] = kappa(F.q, m)
        row["gamma"] = gamma(F.q, m)
    observed = None
    if check == "representatives":
        if n != 2:
            raise ValueError("representatives exist only for n = 2")
        observed = len(orbit_representatives(F, m))
        row["kappa_representatives"] = observed
    elif check == "brute-force":
        observed = brute_force_orbit_count(F, n, m, budget).count
        row["kappa_bruteforce"] = observed
        if n != 2:
            row["gamma"] = ceil_log(F.q, observed)
    elif check != "formula":
        raise ValueError(f"unknown check {check!r}")
    if observed is not None and row["kappa_formula"] is not None:
        row["match"] = observed == row["kappa_formula"]
    return row


def canonical_orbit_count(F: Field, m: int) -> int:
    """Orbit count by hashing canonical forms of every tuple (n = 2 only)."""
    return len({canonical_form(T) for T in itertools.product(enumerate_nilpotent(F, 2), repeat=m)})


def conjecture_scan(n: int, m: int, fields: Sequence[Field], budget: int = DEFAULT_BUDGET) -> dict:
    """Raw orbit counts of GL_n on N_n^m for each field; no polynomial is fitted."""
    rows = [
        {"q": F.q, "n": n, "m": m, "count": brute_force_orbit_count(F, n, m, budget).count}
        for F in fields
    ]
    note = "data only"
    if len(rows) >= 2:
        note = f"{len(rows)} points; a polynomial fit in q is under-determined"
    return {"rows": rows, "note": note}
