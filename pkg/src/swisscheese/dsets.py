"""The surjection sets ``D(tau, N)`` and ``D(S, N)``, by brute force over all maps.

A surjection ``sigma: {0..N+|S|-1} -> S`` is written as the tuple of its values.
This module deliberately does not use the operad code: it is the independent
side of the graded-piece comparison.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .combinat import TwoTree


def _surjections(n_labels: int, length: int) -> Iterator[tuple[int, ...]]:
    for sigma in itertools.product(range(n_labels), repeat=length):
        if len(set(sigma)) == n_labels:
            yield sigma


def no_repeats(sigma: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(sigma, sigma[1:]))


def no_interleaving(sigma: Sequence[int]) -> bool:
    """No ``i<j<k<l`` with ``sigma(i)=sigma(k) != sigma(j)=sigma(l)``."""
    n = len(sigma)
    for i, j, k, l in itertools.combinations(range(n), 4):
        if sigma[i] == sigma[k] != sigma[j] == sigma[l]:
            return False
    return True


def nested_pairs(sigma: Sequence[int]) -> set[tuple[int, int]]:
    """Pairs ``(s, t)`` with a value ``s`` strictly between two values ``t``."""
    out = set()
    for j1, i, j2 in itertools.combinations(range(len(sigma)), 3):
        if sigma[j1] == sigma[j2] != sigma[i]:
            out.add((sigma[i], sigma[j1]))
    return out


def tree_compatible(sigma: Sequence[int], tau: TwoTree) -> bool:
    """Nested values sit in strictly lower columns; values in one column appear
    one after another in the order of the column."""
    for s, t in nested_pairs(sigma):
        if not tau(s) < tau(t):
            return False
    last = {}
    first = {}
    for k, v in enumerate(sigma):
        first.setdefault(v, k)
        last[v] = k
    for s in range(tau.source):
        for t in range(s + 1, tau.source):
            if tau(s) == tau(t) and s in last and t in first and not last[s] < first[t]:
                return False
    return True


def enumerate_D_tree(tau: TwoTree, N: int) -> list[tuple[int, ...]]:
    """``D(tau, N)``."""
    n = tau.source
    return [
        sigma
        for sigma in _surjections(n, N + n)
        if no_repeats(sigma) and tree_compatible(sigma, tau)
    ]


def enumerate_D_set(n: int, N: int, algebra: Sequence[int] = ()) -> list[tuple[int, ...]]:
    """``D(S, N)`` for ``S = {0..n-1}``; algebra labels are hit exactly once."""
    alg = set(algebra)
    return [
        sigma
        for sigma in _surjections(n, N + n)
        if no_repeats(sigma)
        and no_interleaving(sigma)
        and all(sigma.count(a) == 1 for a in alg)
    ]


def relabel(sigma: Sequence[int], labels: Sequence[int]) -> tuple[int, ...]:
    """Rename positions of a labelled tree to labels: ``labels[position]``."""
    return tuple(labels[v] for v in sigma)
