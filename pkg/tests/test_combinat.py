import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swisscheese.combinat import (
    MonotoneMap,
    TwoTree,
    TwoTreeMap,
    compositions,
    count_monotone_maps,
    enumerate_pruned,
    fiber,
    fn_dimension,
    is_morphism,
    monotone_maps,
    restrict,
)
from swisscheese.errors import ValidationError


@pytest.mark.parametrize("source, target", [(0, 0), (0, 3), (2, 0), (1, 1), (3, 2), (4, 3), (2, 5)])
def test_monotone_map_count(source, target):
    brute = sum(
        1 for v in itertools.product(range(target), repeat=source) if all(a <= b for a, b in zip(v, v[1:]))
    )
    assert count_monotone_maps(source, target) == brute == len(list(monotone_maps(source, target)))


def test_non_monotone_rejected():
    with pytest.raises(ValidationError):
        MonotoneMap((1, 0), 2)
    with pytest.raises(ValidationError):
        MonotoneMap((0, 2), 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cosimplicial_identities(n):
    d, s = MonotoneMap.coface, MonotoneMap.codegeneracy
    # d(n, i): size n -> n + 1; s(n, i): size n + 1 -> n
    for i, j in itertools.combinations(range(n + 2), 2):
        assert d(n + 1, j).compose(d(n, i)) == d(n + 1, i).compose(d(n, j - 1))
    for i in range(n):
        assert s(n, i).compose(d(n, i)) == MonotoneMap.identity(n)
        assert s(n, i).compose(d(n, i + 1)) == MonotoneMap.identity(n)


@pytest.mark.parametrize("n", range(0, 6))
def test_compositions_count(n):
    got = list(compositions(n))
    assert len(got) == (2 ** (n - 1) if n else 1)
    assert all(sum(c) == n and min(c, default=1) >= 1 for c in got)


@pytest.mark.parametrize("n", range(0, 5))
def test_pruned_object_count(n):
    # total orders times ordered set partitions into consecutive columns
    assert len(enumerate_pruned(n)) == math.factorial(n) * (2 ** (n - 1) if n else 1)


@pytest.mark.parametrize("n_alg, n_coch", [(0, 0), (1, 0), (2, 0), (0, 2), (1, 2), (2, 1), (2, 2)])
def test_pruned_sc_object_count(n_alg, n_coch):
    objs = enumerate_pruned(n_alg + n_coch, sc=True, algebra=tuple(range(n_alg)))
    cols = 2 ** (n_coch - 1) if n_coch else 1
    assert len(objs) == math.factorial(n_alg) * math.factorial(n_coch) * cols
    for order, tree in objs:
        assert tree.is_pruned() and tree.sc
        assert {order[s] for s in tree.algebra_inputs} == set(range(n_alg))


def test_two_labels_give_four_objects():
    objs = enumerate_pruned(2)
    assert len(objs) == 4
    assert len(enumerate_pruned(2, sc=True, algebra=(0, 1))) == 2


def test_pruning():
    tau = TwoTree((0, 2, 2), 4)
    assert not tau.is_pruned()
    assert tau.pruned() == TwoTree((0, 1, 1), 2)
    sc = TwoTree((2,), 3, sc=True)
    assert sc.pruned() == TwoTree((1,), 2, sc=True)


def test_sc_target_nonempty():
    with pytest.raises(ValidationError):
        TwoTree((), 0, sc=True)


def test_fn_dimension_examples():
    assert fn_dimension(TwoTree((0, 0, 1, 1, 1), 2)) == 7
    # merging two columns drops the dimension by one
    assert fn_dimension(TwoTree((0, 1), 2)) - fn_dimension(TwoTree((0, 0), 1)) == 1
    # one height per point and one position per column off the boundary
    assert fn_dimension(TwoTree((0, 1), 2, sc=True)) == 3
    assert fn_dimension(TwoTree((0, 0), 1, sc=True)) == 2


def test_morphisms_form_a_poset():
    objs = enumerate_pruned(3)
    for a, b, c in itertools.product(objs, repeat=3):
        if is_morphism(a, b) and is_morphism(b, c):
            assert is_morphism(a, c)
    for a in objs:
        assert is_morphism(a, a)
    for a, b in itertools.combinations(objs, 2):
        assert not (is_morphism(a, b) and is_morphism(b, a))


def test_merge_may_reorder_within_column():
    two_cols = ((1, 0), TwoTree((0, 1), 2))
    assert is_morphism(two_cols, ((0, 1), TwoTree((0, 0), 1)))
    assert is_morphism(two_cols, ((1, 0), TwoTree((0, 0), 1)))
    # but never the other direction, and never against a column order
    assert not is_morphism(((0, 1), TwoTree((0, 0), 1)), ((1, 0), TwoTree((0, 0), 1)))


def test_map_axioms_enforced():
    dom, cod = TwoTree((0, 1), 2), TwoTree((0, 0), 1)
    TwoTreeMap(dom, cod, (0, 1), (0, 0))
    with pytest.raises(ValidationError):
        TwoTreeMap(TwoTree((0, 0), 1), cod, (1, 0), (0,))  # reverses a fiber
    with pytest.raises(ValidationError):
        TwoTreeMap(dom, TwoTree((0, 1), 2), (1, 0), (0, 1))  # square fails


def _random_map(rng, dom_target: int, cod: TwoTree):
    """A random map ``dom -> cod`` built from a random monotone ``P_T`` and fiber-wise choices."""
    p_t = tuple(sorted(rng.randrange(cod.target) for _ in range(dom_target)))
    values, p_s = [], []
    for t in range(dom_target):
        avail = list(cod.fiber(p_t[t]))
        k = rng.randint(0, len(avail))
        chosen = sorted(rng.sample(avail, k))
        values += [t] * k
        p_s += chosen
    return TwoTreeMap(TwoTree(tuple(values), dom_target), cod, tuple(p_s), p_t)


def test_fiber_example():
    P = TwoTreeMap(TwoTree((0, 1), 2), TwoTree((0,), 1), (0, 0), (0, 0))
    assert fiber(P, 0, prune=False) == TwoTree((0, 1), 2)
    assert fiber(P, 0) == TwoTree((0, 1), 2)
    Q = TwoTreeMap(TwoTree((1,), 2), TwoTree((0,), 1), (0,), (0, 0))
    assert fiber(Q, 0, prune=False) == TwoTree((1,), 2)
    assert fiber(Q, 0) == TwoTree((0,), 1)


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_fiber_restriction_coherence(seed):
    """``restrict(P, Q)`` maps the raw fiber of ``Q o P`` to that of ``Q`` and agrees
    with ``P`` on sources."""
    rng = random.Random(seed)
    base = TwoTree(tuple(sorted(rng.randrange(2) for _ in range(rng.randint(1, 3)))), 2)
    Q = _random_map(rng, rng.randint(1, 3), base)
    P = _random_map(rng, rng.randint(1, 3), Q.dom)
    QP = Q.compose(P)
    for s2 in range(base.source):
        R = restrict(P, Q, s2)
        assert R.dom == fiber(QP, s2, prune=False)
        assert R.cod == fiber(Q, s2, prune=False)
        big = QP.fiber_sources(s2)
        small = Q.fiber_sources(s2)
        assert [small[v] for v in R.p_s] == [P.p_s[s] for s in big]


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_restriction_is_functorial(seed):
    """Restricting along ``P2 o P1`` equals restricting along ``P2`` after ``P1``."""
    rng = random.Random(seed)
    base = TwoTree(tuple(sorted(rng.randrange(2) for _ in range(rng.randint(1, 3)))), 2)
    Q = _random_map(rng, rng.randint(1, 3), base)
    P2 = _random_map(rng, rng.randint(1, 3), Q.dom)
    P1 = _random_map(rng, rng.randint(1, 3), P2.dom)
    for s2 in range(base.source):
        lhs = restrict(P2.compose(P1), Q, s2)
        rhs = restrict(P2, Q, s2).compose(restrict(P1, Q.compose(P2), s2))
        assert lhs == rhs
