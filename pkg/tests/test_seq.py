import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swisscheese import seq
from swisscheese.combinat import enumerate_pruned, monotone_maps
from swisscheese.dsets import tree_compatible
from swisscheese.errors import ColorMismatch, ValidationError
from swisscheese.seq import SeqElem, from_labels
from swisscheese.trees import graft, interleaving_quadruple, nu_ord, nu_tree


def rand_elem(rng, n, J, alg=frozenset(), sc=False, max_block=3):
    blocks = [1 if s in alg else rng.randint(1, max_block) for s in range(n)]
    return seq.random_element(rng, blocks, J, alg, sc)


def random_inners(rng, outer: SeqElem, max_inputs: int = 2, max_block: int = 2) -> list:
    out = []
    for t in range(outer.n_inputs):
        k = rng.randint(0, max_inputs)
        if t in outer.algebra:
            a2 = frozenset(x for x in range(k) if rng.random() < 0.5)
            out.append(rand_elem(rng, k, 1, a2, True, max_block))
        else:
            out.append(rand_elem(rng, k, outer.blocks[t], max_block=max_block))
    return out


def random_outer(rng, max_inputs=3):
    sc = rng.random() < 0.5
    n = rng.randint(0, max_inputs)
    alg = frozenset(s for s in range(n) if sc and rng.random() < 0.4)
    return rand_elem(rng, n, 1 if sc else rng.randint(1, 3), alg, sc)


def tree_compose(outer: SeqElem, inners: list) -> SeqElem:
    """Composition computed by grafting minimal trees and reading the boundary word."""
    off, rel = 0, {}
    for t, v in enumerate(inners):
        rel[t] = {lab: off + lab for lab in range(v.n_inputs)}
        off += v.n_inputs
    T = graft(
        nu_tree(seq.to_word(outer), outer.sc),
        {t: nu_tree(seq.to_word(v), v.sc) for t, v in enumerate(inners)},
        rel,
    )
    return seq.from_word(nu_ord(T, outer.sc).tokens, outer.sc)


def test_doc_example():
    e = SeqElem((2,), 2, ((0, 0), (0, 1)), (0, 1))
    assert seq.to_word(e) == (("s", 0, 0), ("j", 0), ("s", 0, 1))
    assert seq.elementary_classes(e) == ((0, 2),)
    assert e.degree() == 0


@pytest.mark.parametrize(
    "labels, q, J, algebra, sc, level",
    [
        ((0, 1, 0), (0, 0, 0), 1, (), False, 1),
        ((0, 0, 1, 1), (0, 1, 1, 2), 3, (), False, 0),
        ((0, 1, 0, 2, 0), (0,) * 5, 1, (1, 2), True, 2),
        ((1, 0, 2, 0), (0,) * 4, 1, (1, 2), True, 1),
    ],
)
def test_filtration_level(labels, q, J, algebra, sc, level):
    e = from_labels(labels, q, J, algebra, sc)
    assert seq.filtration_level(e) == level


def test_algebra_tokens_split_into_singleton_classes():
    e = from_labels((1, 0, 1), (0, 0, 0), 1, (0,), True)
    assert seq.elementary_classes(e) == ((1, 1), (0, 1), (1, 1))


@pytest.mark.parametrize(
    "kwargs, err",
    [
        (dict(blocks=(2, 2), J=1, arrangement=((0, 0), (1, 0), (0, 1), (1, 1)), q=(0, 0, 0, 0)), ValidationError),
        (dict(blocks=(2,), J=1, arrangement=((0, 1), (0, 0)), q=(0, 0)), ValidationError),
        (dict(blocks=(1,), J=2, arrangement=((0, 0),), q=(2,)), ValidationError),
        (dict(blocks=(1,), J=1, arrangement=((0, 0),), q=(0,), algebra=frozenset({0})), ColorMismatch),
        (dict(blocks=(2,), J=1, arrangement=((0, 0), (0, 1)), q=(0, 0), algebra=frozenset({0}), sc=True), ValidationError),
        (dict(blocks=(1,), J=2, arrangement=((0, 0),), q=(0,), sc=True), ValidationError),
    ],
)
def test_invalid_elements_rejected(kwargs, err):
    with pytest.raises(err):
        SeqElem(**kwargs)


def _brute_arrangements(blocks, algebra=frozenset()):
    tokens = [s for s, n in enumerate(blocks) for _ in range(n)]
    out = set()
    for perm in set(itertools.permutations(tokens)):
        masked = [l if l not in algebra else None for l in perm]
        if interleaving_quadruple(masked) is None:
            out.add(perm)
    return out


@pytest.mark.parametrize(
    "blocks, J, algebra, sc",
    [((2, 1), 2, (), False), ((2, 2), 1, (), False), ((1, 2, 1), 2, (), False), ((3,), 3, (), False),
     ((1, 2), 1, (0,), True), ((1, 1, 2), 1, (0, 1), True), ((), 2, (), False)],
)
def test_element_count_matches_brute_force(blocks, J, algebra, sc):
    arr = _brute_arrangements(blocks, frozenset(algebra))
    got = list(seq.enumerate_elements(blocks, J, frozenset(algebra), sc))
    assert {e.labels() for e in got} == arr
    assert len(got) == len(arr) * math.comb(sum(blocks) + J - 1, sum(blocks))


def test_two_algebra_inputs_in_either_order():
    assert sum(1 for _ in seq.enumerate_elements((1, 1), 1, frozenset({0, 1}), True)) == 2


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_word_round_trip(seed):
    rng = random.Random(seed)
    e = random_outer(rng)
    assert seq.from_word(seq.to_word(e), e.sc) == e


@settings(max_examples=300)
@given(st.integers(0, 10**6))
def test_compose_matches_tree_grafting(seed):
    rng = random.Random(seed)
    outer = random_outer(rng)
    inners = random_inners(rng, outer)
    assert seq.compose(outer, inners) == tree_compose(outer, inners)


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_compose_is_associative(seed):
    rng = random.Random(seed)
    w = random_outer(rng, 2)
    vs = random_inners(rng, w)
    us = [random_inners(rng, v, 1) for v in vs]
    flat = [x for group in us for x in group]
    lhs = seq.compose(seq.compose(w, vs), flat)
    rhs = seq.compose(w, [seq.compose(v, u) for v, u in zip(vs, us)])
    assert lhs == rhs


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_compose_units(seed):
    rng = random.Random(seed)
    e = random_outer(rng)
    ids = [seq.algebra_unit() if s in e.algebra else seq.unit(e.blocks[s]) for s in range(e.n_inputs)]
    assert seq.compose(e, ids) == e
    if not e.sc:
        assert seq.compose(seq.unit(e.J), [e]) == e


def test_color_mismatch():
    outer = SeqElem((2,), 1, ((0, 0), (0, 1)), (0, 0))
    with pytest.raises(ColorMismatch):
        seq.compose(outer, [seq.unit(3)])
    with pytest.raises(ColorMismatch):
        seq.compose(outer, [seq.algebra_unit()])
    with pytest.raises(ColorMismatch):
        seq.compose(outer, [])


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_simplicial_and_cosimplicial_actions_are_functorial(seed):
    rng = random.Random(seed)
    e = rand_elem(rng, rng.randint(1, 2), rng.randint(1, 3))
    s = rng.randrange(e.n_inputs)
    theta = rng.choice(list(monotone_maps(rng.randint(1, 3), e.blocks[s])))
    phi = rng.choice(list(monotone_maps(rng.randint(1, 3), theta.source)))
    assert seq.act_input(seq.act_input(e, s, theta), s, phi) == seq.act_input(e, s, theta.compose(phi))
    a = rng.choice(list(monotone_maps(e.J, rng.randint(1, 3))))
    b = rng.choice(list(monotone_maps(a.target, rng.randint(1, 3))))
    assert seq.act_output(seq.act_output(e, a), b) == seq.act_output(e, b.compose(a))


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_seq_tau_membership_matches_surjection_rule(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    sc = rng.random() < 0.5
    n_alg = rng.randint(0, n) if sc else 0
    objs = enumerate_pruned(n, sc, tuple(range(n_alg)))
    tau = rng.choice(objs)[1]
    alg = frozenset(tau.algebra_inputs)
    e = rand_elem(rng, n, 1 if sc else rng.randint(1, 2), alg, sc, max_block=3)
    assert seq.in_seq_tau(e, tau) == tree_compatible(e.labels(), tau)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_subadditivity(seed):
    r = seq.subadditivity_check(samples=200, seed=seed)
    assert r["violations"] == 0 and 0 < r["tight"] <= 200


def test_json_round_trip():
    e = from_labels((1, 0, 1), (0, 0, 0), 1, (0,), True)
    assert SeqElem.from_json(e.to_json()) == e
