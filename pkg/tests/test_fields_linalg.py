from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_rank
from swisscheese import linalg
from swisscheese.fields import DEFAULT_PRIME, QQ, Field, field_from_string, is_prime

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_is_prime_small_range():
    assert [n for n in range(50) if is_prime(n)] == SMALL_PRIMES


def test_default_prime():
    assert is_prime(DEFAULT_PRIME)
    assert not is_prime(32767)  # 7 * 31 * 151
    assert all(not is_prime(n) for n in range(DEFAULT_PRIME + 1, 2**15))


def test_composite_field_rejected():
    with pytest.raises(ValueError):
        Field(32767)


@pytest.mark.parametrize(
    "spec, expected",
    [("Q", QQ), ("rational", QQ), ("p", Field(DEFAULT_PRIME)), ("F_7", Field(7)), ("101", Field(101))],
)
def test_field_from_string(spec, expected):
    assert field_from_string(spec) == expected


def test_field_from_environment(monkeypatch):
    monkeypatch.setenv("SWISSCHEESE_FIELD", "F_5")
    assert field_from_string(None) == Field(5)
    monkeypatch.delenv("SWISSCHEESE_FIELD")
    assert field_from_string(None) == QQ


@given(st.integers(1, 10**6), st.sampled_from([Field(7), Field(DEFAULT_PRIME), QQ]))
def test_inverse(x, f):
    a = f(x)
    if a:
        assert f.norm(a * f.inv(a)) == f.one


def test_fraction_coercion_mod_p():
    f = Field(7)
    assert f(Fraction(1, 2)) == 4
    assert f("3/2") == 5


sparse_matrices = st.integers(1, 6).flatmap(
    lambda rows: st.lists(
        st.dictionaries(st.integers(0, rows - 1), st.integers(-3, 3).filter(bool), max_size=rows),
        min_size=1,
        max_size=6,
    ).map(lambda cols: (rows, cols))
)


def _dense(rows, cols):
    return [[c.get(i, 0) for c in cols] for i in range(rows)]


@settings(max_examples=200)
@given(sparse_matrices)
def test_rank_matches_dense_elimination(m):
    rows, cols = m
    cols = [{i: Fraction(v) for i, v in c.items()} for c in cols]
    assert linalg.rank(QQ, cols) == dense_rank(_dense(rows, cols))


@settings(max_examples=200)
@given(sparse_matrices)
def test_nullspace(m):
    rows, cols = m
    cols = [{i: Fraction(v) for i, v in c.items()} for c in cols]
    null = linalg.nullspace(QQ, cols)
    assert len(null) == len(cols) - dense_rank(_dense(rows, cols))
    for v in null:
        assert linalg.apply(QQ, cols, v) == {}
    assert dense_rank([[v.get(j, 0) for j in range(len(cols))] for v in null] or [[0]]) == len(null)


@settings(max_examples=200)
@given(sparse_matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_reaches_image_vectors(m, x):
    rows, cols = m
    cols = [{i: Fraction(v) for i, v in c.items()} for c in cols]
    x = {j: Fraction(x[j]) for j in range(len(cols)) if x[j]}
    b = linalg.apply(QQ, cols, x)
    sol = linalg.solve(QQ, cols, b)
    assert sol is not None and linalg.apply(QQ, cols, sol) == b


def test_solve_reports_unreachable():
    cols = [{0: Fraction(1)}]
    assert linalg.solve(QQ, cols, {1: Fraction(1)}) is None


def test_rank_depends_on_characteristic():
    cols = [{0: 1, 1: 1}, {0: 1, 1: -1}]
    assert linalg.rank(QQ, [{k: Fraction(v) for k, v in c.items()} for c in cols]) == 2
    f = Field(2)
    assert linalg.rank(f, [{k: f(v) for k, v in c.items()} for c in cols]) == 1


def test_complement_spans_quotient():
    e = [{i: Fraction(1)} for i in range(3)]
    sub = [{0: Fraction(1), 1: Fraction(1)}]
    comp = linalg.complement(QQ, sub, e)
    assert len(comp) == 2
    assert dense_rank([[v.get(i, 0) for i in range(3)] for v in sub + comp]) == 3
