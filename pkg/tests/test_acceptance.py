"""End-to-end acceptance checks, one test per criterion.

Each test runs under a wall-clock limit and records a PASS/FAIL line that is
printed in the pytest terminal summary.
"""

import itertools
import time
from collections import defaultdict
from contextlib import contextmanager

from nilorbits.canonical import canonicalize, orbit_representatives
from nilorbits.counting import (
    brute_force_orbit_count,
    ceil_log,
    gamma,
    gamma_formula,
    kappa,
    kappa_poly,
    orbit_partition,
)
from nilorbits.gf import field_make
from nilorbits.indicator import build_h_set, columns_distinct, tuple_point
from nilorbits.invariants import (
    as_reduced_poly,
    build_set,
    check_minimality,
    needed_pairs,
    eta,
    eta_poly,
    eval_invariant,
    tr_pair,
    tr_triple,
    zeta,
    zeta_poly,
)
from nilorbits.matrices import (
    conjugate_tuple,
    enumerate_gl,
    enumerate_nil_tuples,
    enumerate_nilpotent,
)

from conftest import ACCEPTANCE_RESULTS

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]


@contextmanager
def criterion(number: int, limit: float, detail: str):
    key = f"criterion {number}"
    ACCEPTANCE_RESULTS[key] = (False, detail + " (did not finish)")
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    ACCEPTANCE_RESULTS[key] = (ok, f"{detail} [{elapsed:.2f}s < {limit:g}s]" if ok else f"{detail} [{elapsed:.2f}s exceeds {limit:g}s]")
    assert ok, f"{key} took {elapsed:.2f}s, limit {limit}s"


def F(spec):
    return field_make(spec)


def test_criterion_1_orbit_counts():
    cases = [("q=2", 1), ("q=2", 2), ("q=2", 3), ("q=3", 1), ("q=3", 2), ("q=3", 3), ("q=2^2", 2), ("q=5", 2)]
    with criterion(1, 60, "kappa = brute force = |representatives| on 8 (q, m) cases"):
        for spec, m in cases:
            K = F(spec)
            k = kappa(K.q, m)
            assert brute_force_orbit_count(K, 2, m).count == k
            assert len(orbit_representatives(K, m)) == k
        assert (kappa(2, 2), kappa(2, 3), kappa(3, 3)) == (5, 15, 40)
        assert all(kappa(q, 3) == q**3 + q**2 + q + 1 for q in PRIME_POWERS)


def test_criterion_2_polynomial_presentation():
    with criterion(2, 1, "kappa_poly(m), m <= 8: nonnegative integer coefficients, matches kappa"):
        for m in range(1, 9):
            P = kappa_poly(m)
            assert all(isinstance(c, int) and c >= 0 for c in P.coeffs)
            assert all(P(q) == kappa(q, m) for q in PRIME_POWERS)
        assert kappa_poly(4).coeffs == (1, 1, 0, 2, 0, 1)
        assert kappa_poly(5).coeffs == (1, 1, 0, 1, 1, 1, 0, 1)


def test_criterion_3_gamma():
    with criterion(3, 1, "gamma case formula = ceil(log_q kappa) for q <= 9, m <= 8"):
        for q in PRIME_POWERS:
            for m in range(1, 9):
                assert gamma_formula(q, m) == ceil_log(q, kappa(q, m))
        assert (gamma(2, 2), gamma(2, 3), gamma(3, 2)) == (3, 4, 2)


def test_criterion_4_canonicalization():
    with criterion(4, 120, "canonical partition = brute-force partition at (2,2), (3,2), (2,3)"):
        for spec, m in [("q=2", 2), ("q=3", 2), ("q=2", 3)]:
            K = F(spec)
            brute = {frozenset(o) for o in orbit_partition(K, m)}
            classes = defaultdict(set)
            for T in enumerate_nil_tuples(K, m):
                form, w = canonicalize(T)
                assert conjugate_tuple(w.g, T) == form.materialize()
                classes[form].add(T)
            assert {frozenset(c) for c in classes.values()} == brute
            assert sum(map(len, brute)) == K.q ** (2 * m)
            for c in orbit_representatives(K, m):
                assert canonicalize(c.materialize())[0] == c


def test_criterion_5_separating_sets():
    with criterion(5, 60, "H2 over GF(2), GF(4) and H over GF(3), GF(5) separating and minimal, m <= 3; single-element pairs"):
        for spec, kind in [("q=2", "H2"), ("q=2^2", "H2"), ("q=3", "H"), ("q=5", "H")]:
            K = F(spec)
            for m in (1, 2, 3):
                S = build_set(kind, K, m)
                report = check_minimality(S, K, m)
                assert report.separating and report.minimal, (spec, m)
            beta = next((a for a in K.elements() if a != 0 and a != 1), None)
            for name, (A, B, f) in needed_pairs(K, beta).items():
                S = build_set(kind, K, len(A))
                rest = S.without(f)
                assert f in S.functions
                assert rest.values(A) == rest.values(B), (spec, name)
                assert eval_invariant(f, A) != eval_invariant(f, B), (spec, name)
        for spec in ("q=3", "q=5"):
            K = F(spec)
            A, B, f = needed_pairs(K)["triple-trace"]
            assert (eval_invariant(f, A), eval_invariant(f, B)) == (K(1), K(-1))
        QQ = F("rational")
        A, B, f = needed_pairs(QQ)["triple-trace"]
        assert (eval_invariant(f, A), eval_invariant(f, B)) == (QQ(1), QQ(-1))
        A, B, f = needed_pairs(QQ)["pair-trace"]
        assert (eval_invariant(f, A), eval_invariant(f, B)) == (QQ(0), QQ(1))


def test_criterion_6_polynomial_identities():
    with criterion(6, 60, "zeta/eta polynomial forms, eta_1 case table, triple trace from pair traces, antisymmetry"):
        for spec in ("q=2", "q=3", "q=2^2", "q=5"):
            K = F(spec)
            nil = enumerate_nilpotent(K)
            for A in nil:
                assert zeta_poly(A, K.q) == eval_invariant(zeta(1), (A,))
            for a in K.elements(nonzero=True):
                for A, B in itertools.product(nil, repeat=2):
                    assert eta_poly(a, A, B, K.q) == eval_invariant(eta(a, 1, 2), (A, B))

        for spec in ("q=2", "q=3", "q=5"):
            K = F(spec)
            others = [a for a in K.elements() if a != 0 and a != 1]
            for A1, A2 in itertools.product(enumerate_nilpotent(K), repeat=2):
                if A1 and A2 and not (A1 * A2).trace():
                    expected = K.one - sum((eval_invariant(eta(a, 1, 2), (A1, A2)) for a in others), K.zero)
                elif not A1 and not A2:
                    expected = K.one
                else:
                    expected = K.zero
                assert eval_invariant(eta(K.one, 1, 2), (A1, A2)) == expected

        pairs = [tr_pair(1, 2), tr_pair(1, 3), tr_pair(2, 3)]
        for spec in ("q=2", "q=2^2"):
            seen = {}
            for T in enumerate_nil_tuples(F(spec), 3):
                key = tuple(eval_invariant(f, T) for f in pairs)
                t = eval_invariant(tr_triple(1, 2, 3), T)
                assert seen.setdefault(key, t) == t

        for spec in ("q=2", "q=3"):
            nil = enumerate_nilpotent(F(spec))
            for A, B, C in itertools.product(nil, repeat=3):
                assert (A * B * C).trace() == -(A * C * B).trace()


def test_criterion_7_indicator_construction():
    with criterion(7, 60, "build_h_set over GF(2) m=1,2 and GF(3) m=2: gamma functions, distinct columns, degree bound"):
        for spec, m in [("q=2", 1), ("q=2", 2), ("q=3", 2)]:
            K = F(spec)
            H = build_h_set(K, m)
            k = kappa(K.q, m)
            g = ceil_log(K.q, k)
            assert H.size == g == gamma(K.q, m)
            assert columns_distinct(H)
            for i in range(H.size):
                P = H.poly(i)
                assert P.degree() <= 4 * m * (K.q - 1)
                for T in enumerate_nil_tuples(K, m):
                    assert P(tuple_point(T)) == H.value(i, T)
            assert k > K.q ** (g - 1)
            for i in range(H.size):
                rest = [r for r in range(H.size) if r != i]
                assert not columns_distinct(H, rest)


def test_criterion_8_degree_bounds():
    with criterion(8, 30, "max reduced degree: H2 at q=2 is <= 2; H at q=3,5 is 4(q-1), attained by eta"):
        for m in (2, 3):
            K = F("q=2")
            degrees = [as_reduced_poly(f, K, m).degree() for f in build_set("H2", K, m)]
            assert max(degrees) <= 2
        for spec, ms in [("q=3", (2, 3)), ("q=5", (2,))]:
            K = F(spec)
            for m in ms:
                S = build_set("H", K, m)
                degrees = {f: as_reduced_poly(f, K, m).degree() for f in S}
                top = max(degrees.values())
                assert top == 4 * (K.q - 1)
                assert all(f.kind == "Eta" for f, d in degrees.items() if d == top)


def test_criterion_9_counting_primitives():
    with criterion(9, 10, "|N2(Fq)| = q^2, |N3(F2)| = 64, |GL2(F2)| = 6, |GL3(F2)| = 168"):
        for spec in ("q=2", "q=3", "q=2^2", "q=5", "q=7", "q=2^3", "q=3^2"):
            K = F(spec)
            assert len(enumerate_nilpotent(K, 2)) == K.q**2
        F2 = F("q=2")
        assert len(enumerate_nilpotent(F2, 3)) == 64
        assert len(enumerate_gl(F2, 2)) == 6
        assert len(enumerate_gl(F2, 3)) == 168


def test_criterion_10_conjecture_scan():
    with criterion(10, 600, "GL3 census: m=1 gives 3 for q=2,3; m=2, q=2 gives 37, stable across runs and methods"):
        for spec in ("q=2", "q=3"):
            assert brute_force_orbit_count(F(spec), 3, 1).count == 3
        F2 = F("q=2")
        first = brute_force_orbit_count(F2, 3, 2).count
        second = brute_force_orbit_count(F2, 3, 2, method="union-find").count
        assert first == second == 37
