import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import inflate, random_minimal_tree
from swisscheese import trees
from swisscheese.action import example_trees
from swisscheese.errors import ValidationError
from swisscheese.trees import Profile, TotalOrderWord, Vertex, a, j, s, u


def test_unary_root_is_dropped():
    t = u(s(0, u(j(0))))
    assert trees.to_minimal(t) == s(0, j(0))
    assert trees.nu_ord(t).tokens == (("s", 0, 0), ("j", 0), ("s", 0, 1))


def test_unmarked_edges_contract():
    assert trees.to_minimal(u(u(j(0), j(1)), j(2))) == u(j(0), j(1), j(2))
    # a unit under an unmarked vertex is absorbed; under a marked one it stays
    assert trees.to_minimal(u(j(0), u(), j(1))) == u(j(0), j(1))
    assert trees.is_minimal(s(0, j(0), u(), j(1)))


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_minimal_form_is_confluent(seed):
    rng = random.Random(seed)
    t, sc = random_minimal_tree(rng)
    big = inflate(t, rng)
    assert trees.to_minimal(big) == t
    assert trees.to_minimal_random(big, rng) == t
    assert trees.nu_ord(big, sc) == trees.nu_ord(t, sc)


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_word_tree_round_trip(seed):
    rng = random.Random(seed)
    t, sc = random_minimal_tree(rng)
    w = trees.nu_ord(t, sc)
    assert trees.nu_tree(w) == t
    assert trees.nu_ord(trees.nu_tree(w.tokens, sc), sc) == w


def _all_tokens(prof: Profile) -> list:
    toks = [("s", lab, k) for lab, n in prof.arities for k in range(n + 1)]
    toks += [("j", k) for k in range(prof.n_outputs)]
    toks += [("a", lab) for lab in prof.algebra]
    return toks


def _brute_words(prof: Profile) -> set:
    out = set()
    for perm in itertools.permutations(_all_tokens(prof)):
        try:
            TotalOrderWord(perm, prof.sc)
        except ValidationError:
            continue
        out.add(perm)
    return out


@pytest.mark.parametrize(
    "prof",
    [
        Profile(((0, 1),), 1),
        Profile(((0, 2),), 2),
        Profile(((0, 1), (1, 1)), 1),
        Profile(((0, 0), (1, 2)), 1),
        Profile(((0, 1), (1, 0)), 0),
        Profile(((0, 1),), 0, (1,), True),
        Profile(((0, 2),), 0, (1, 2), True),
        Profile((), 0, (0, 1, 2), True),
    ],
    ids=repr,
)
def test_word_generator_matches_brute_force(prof):
    assert set(trees.words(prof)) == _brute_words(prof)


@pytest.mark.parametrize("n, m", [(0, 0), (1, 0), (1, 2), (2, 1), (3, 2)])
def test_single_input_word_count(n, m):
    # m ordered outputs distributed among the n + 2 gaps around n + 1 sectors
    prof = Profile(((0, n),), m)
    assert sum(1 for _ in trees.words(prof)) == math.comb(m + n + 1, m)


def test_minimal_trees_match_words():
    for prof in trees.profiles(5, False):
        ts = list(trees.minimal_trees(prof))
        assert all(trees.is_minimal(t) for t in ts)
        assert {trees.boundary_word(t) for t in ts} == set(trees.words(prof))


def test_roundtrip_small():
    r = trees.roundtrip_check(5)
    assert r["failures"] == [] and r["words"] == r["trees"] > 0


@pytest.mark.parametrize(
    "tokens",
    [
        (("s", 0, 0), ("s", 1, 0), ("s", 0, 1), ("s", 1, 1)),  # interleaving
        (("s", 0, 1), ("s", 0, 0)),  # sectors reversed
        (("j", 1), ("j", 0)),  # outputs reversed
        (("a", 0), ("a", 0)),  # repeated algebra input
        (("x", 0),),
    ],
)
def test_invalid_words_rejected(tokens):
    with pytest.raises(ValidationError):
        TotalOrderWord(tokens, any(t[0] == "a" for t in tokens))


def test_invalid_trees_rejected():
    with pytest.raises(ValidationError):
        trees.validate_tree(u(j(1), j(0)))
    with pytest.raises(ValidationError):
        trees.validate_tree(Vertex("j", 0, (j(1),)))
    with pytest.raises(ValidationError):
        trees.validate_tree(u(j(0), a(1)), sc=True)  # outputs on an algebra-colored tree


def test_example_trees_share_minimal_form():
    ex = example_trees()
    assert {trees.to_minimal(t) for t in ex.values()} == {ex["T3"]}
    assert trees.is_minimal(ex["T3"]) and not trees.is_minimal(ex["T"])


def test_graft_fills_outputs_in_order():
    outer = s(0, j(0), s(1, j(1)))
    inner = u(j(0), s(5), j(1))
    got = trees.graft(outer, {0: inner}, {0: {5: 7}})
    assert got == u(j(0), s(7), s(1, j(1)))
    trees.validate_tree(got)


def test_graft_arity_mismatch():
    with pytest.raises(ValidationError):
        trees.graft(s(0, j(0)), {0: u(j(0), j(1))}, {0: {}})


def test_json_round_trip():
    t = example_trees()["T"]
    assert Vertex.from_json(t.to_json()) == t
    w = trees.nu_ord(t)
    assert TotalOrderWord.from_json(w.to_json()) == w
