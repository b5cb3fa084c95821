import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilorbits.gf import BUILTIN_MODULI, FieldError, field_elements, field_make, is_irreducible

SMALL_SPECS = ["q=2", "q=3", "q=5", "q=7", "q=2^2", "q=2^3", "q=3^2", "q=2^4", "q=5^2"]
TABLE_SPECS = [f"q={p}^{k}" for p, k in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 6), (3, 4), (11, 2), (2, 7)]]


def test_prime_field():
    F = field_make("q=2")
    assert F.q == 2 and F.p == 2 and F.k == 1


def test_gf4_default_modulus():
    F = field_make("q=2^2")
    assert F.modulus == (1, 1, 1)
    assert F.q == 4


def test_gf9_user_modulus_has_no_root():
    # x^2 + 1 has no root in GF(3): 0 -> 1, 1 -> 2, 2 -> 5 = 2
    assert all((x * x + 1) % 3 != 0 for x in range(3))
    F = field_make("q=3^2;poly=1,0,1")
    assert F.q == 9 and F.modulus == (1, 0, 1)


@pytest.mark.parametrize("spec", ["q=6", "q=1", "q=4", "q=2^2;poly=1,0,1", "q=2^8", "q=3^5", "q=2^5", "bogus", "q=3^2;poly=2,0,1"])
def test_field_make_errors(spec):
    with pytest.raises(FieldError):
        field_make(spec)


def test_user_modulus_allows_sizes_without_table_entry():
    F = field_make("q=2^5;poly=1,0,0,1,0,1")
    assert F.q == 32


@pytest.mark.parametrize("q", sorted(BUILTIN_MODULI))
def test_builtin_table_irreducible(q):
    p = next(p for p in (2, 3, 5, 7, 11) if q % p == 0)
    assert is_irreducible(BUILTIN_MODULI[q], p)


def test_irreducibility_catches_quadratic_factor():
    # (x^2 + x + 1)^2 = x^4 + x^2 + 1 over GF(2): no roots, still reducible
    assert not is_irreducible((1, 0, 1, 0, 1), 2)


def test_arith_examples(F3, F4, F5):
    assert F3(2) + F3(2) == F3(1)
    x = F4.gen()
    assert x * x == x + 1
    assert F5(2).inv() == F5(3)


def test_division_by_zero(F5):
    with pytest.raises(ZeroDivisionError):
        F5(0).inv()
    with pytest.raises(ZeroDivisionError):
        F5(1) / F5(0)


def test_field_mismatch(F3, F5):
    with pytest.raises(FieldError):
        F3(1) + F5(1)


def test_enumeration_examples(F2, F3, F4):
    assert [x.code for x in field_elements(F2)] == [0, 1]
    assert [x.code for x in field_elements(F3, nonzero=True)] == [1, 2]
    x = F4.gen()
    assert field_elements(F4) == [F4(0), F4(1), x, x + 1]


def test_rational_cannot_enumerate(QQ):
    with pytest.raises(FieldError):
        QQ.elements()


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_axioms_exhaustive(spec):
    F = field_make(spec)
    els = F.elements()
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
        assert (a - b) + b == a
        if b:
            assert (a / b) * b == a
    for a, b, c in itertools.product(els[: min(len(els), 9)], repeat=3):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("spec", TABLE_SPECS + ["q=2", "q=3", "q=5", "q=7", "q=11", "q=13"])
def test_global_identities(spec):
    F = field_make(spec)
    els = F.elements()
    assert len(els) == F.q == len(set(els))
    nonzero = F.elements(nonzero=True)
    assert all(x ** (F.q - 1) == 1 for x in nonzero)
    if F.q > 2:
        assert sum(els, F.zero) == 0
    prod = F.one
    for x in nonzero:
        prod = prod * x
    assert prod == -1


@pytest.mark.parametrize("spec", ["q=2^3", "q=3^2", "q=5^2", "q=3^3"])
def test_frobenius(spec):
    F = field_make(spec)
    p = F.p
    for a, b in itertools.product(F.elements(), repeat=2):
        assert (a + b) ** p == a**p + b**p


def test_enumeration_stable_and_encoded():
    a = [x.code for x in field_make("q=3^3").elements()]
    assert a == list(range(27))
    F = field_make("q=3^2")
    # x + 2 encodes as 2 + 1*3
    assert F.from_code(5) == F.gen() + 2


@settings(max_examples=200, deadline=None)
@given(spec=st.sampled_from(TABLE_SPECS), a=st.integers(0, 127), b=st.integers(0, 127), c=st.integers(0, 127))
def test_axioms_random(spec, a, b, c):
    F = field_make(spec)
    x, y, z = (F.from_code(v % F.q) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inv() == 1


@given(st.fractions(), st.fractions())
def test_rational_arithmetic(a, b):
    Q = field_make("rational")
    x, y = Q(a), Q(b)
    assert (x + y).v == a + b and (x * y).v == a * b
    if b:
        assert (x / y).v == Fraction(a) / b


def test_pow(F5):
    assert F5(2) ** 0 == 1
    assert F5(2) ** 4 == 1
    assert F5(2) ** -1 == F5(3)
