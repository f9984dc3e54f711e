"""Finite ordinals, monotone maps, 2-trees and maps of 2-trees.

An ordinal is represented by its size ``n`` (the ordered set ``0 < 1 < ... < n-1``).
A 2-tree is a monotone map ``tau: S -> T`` of ordinals. A Swiss-cheese (SC)
2-tree additionally marks the minimum of ``T``: its fiber ``S_a`` holds the
algebra-colored inputs, the rest ``S_c`` the cochain-colored ones.

Objects of the poset ``J(S)`` for a label set ``S`` are pairs
``(labels, tree)`` where ``labels[i]`` is the label sitting at position ``i`` of
the tree's source ordinal.

>>> t = TwoTree((0, 0, 1), 2)
>>> t.fibers()
((0, 1), (2,))
>>> fn_dimension(TwoTree((0, 1, 1, 2, 2), 3))
8
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import ValidationError

Ordinal = int


@dataclass(frozen=True)
class MonotoneMap:
    """A nondecreasing map ``{0..source-1} -> {0..target-1}``."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if any(not 0 <= v < self.target for v in self.values):
            raise ValidationError(f"values {self.values} out of range {self.target}")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValidationError(f"{self.values} is not monotone")

    @property
    def source(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, inner: "MonotoneMap") -> "MonotoneMap":
        """``self o inner``."""
        if inner.target != self.source:
            raise ValidationError("maps are not composable")
        return MonotoneMap(tuple(self.values[v] for v in inner.values), self.target)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @staticmethod
    def identity(n: int) -> "MonotoneMap":
        return MonotoneMap(tuple(range(n)), n)

    @staticmethod
    def coface(n: int, i: int) -> "MonotoneMap":
        """The injection ``[n-1] -> [n]`` of ordinals of sizes ``n`` and ``n+1`` skipping ``i``."""
        return MonotoneMap(tuple(k if k < i else k + 1 for k in range(n)), n + 1)

    @staticmethod
    def codegeneracy(n: int, i: int) -> "MonotoneMap":
        """The surjection from size ``n+1`` onto size ``n`` hitting ``i`` twice."""
        return MonotoneMap(tuple(k if k <= i else k - 1 for k in range(n + 1)), n)


def monotone_maps(source: int, target: int) -> Iterator[MonotoneMap]:
    """All monotone maps between ordinals of the given sizes."""
    for vals in itertools.combinations_with_replacement(range(target), source):
        yield MonotoneMap(vals, target)


def count_monotone_maps(source: int, target: int) -> int:
    if target == 0:
        return 1 if source == 0 else 0
    return comb(source + target - 1, source)


@dataclass(frozen=True)
class TwoTree:
    """A monotone map ``tau: S -> T``; ``sc=True`` marks ``min T`` as the algebra column."""

    values: tuple[int, ...]
    target: int
    sc: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        MonotoneMap(self.values, self.target)
        if self.sc and self.target < 1:
            raise ValidationError("an SC 2-tree needs a nonempty target")

    @property
    def source(self) -> int:
        return len(self.values)

    @property
    def map(self) -> MonotoneMap:
        return MonotoneMap(self.values, self.target)

    def __call__(self, s: int) -> int:
        return self.values[s]

    def fiber(self, t: int) -> tuple[int, ...]:
        return tuple(s for s, v in enumerate(self.values) if v == t)

    def fibers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.fiber(t) for t in range(self.target))

    @property
    def algebra_inputs(self) -> tuple[int, ...]:
        """``S_a``: the fiber over the marked minimum (empty for non-SC trees)."""
        return self.fiber(0) if self.sc else ()

    @property
    def cochain_inputs(self) -> tuple[int, ...]:
        a = set(self.algebra_inputs)
        return tuple(s for s in range(self.source) if s not in a)

    def is_pruned(self) -> bool:
        hit = set(self.values)
        need = range(1, self.target) if self.sc else range(self.target)
        return all(t in hit for t in need)

    def pruned(self) -> "TwoTree":
        """Drop unhit target elements (keeping the marked minimum of an SC tree)."""
        keep = sorted(set(self.values) | ({0} if self.sc else set()))
        pos = {t: i for i, t in enumerate(keep)}
        return TwoTree(tuple(pos[v] for v in self.values), len(keep), self.sc)

    def to_json(self) -> dict:
        return {"values": list(self.values), "target": self.target, "sc": self.sc}

    @staticmethod
    def from_json(d: dict) -> "TwoTree":
        return TwoTree(tuple(d["values"]), d["target"], bool(d.get("sc", False)))


@dataclass(frozen=True)
class TwoTreeMap:
    """A map ``P = (P_S, P_T): dom -> cod`` of 2-trees.

    ``P_T`` is monotone, ``cod o P_S == P_T o dom`` and ``P_S`` is order preserving
    on each fiber of ``dom``. For SC trees ``P_T`` preserves the marked minimum.
    """

    dom: TwoTree
    cod: TwoTree
    p_s: tuple[int, ...]
    p_t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p_s", tuple(self.p_s))
        object.__setattr__(self, "p_t", tuple(self.p_t))
        d, c = self.dom, self.cod
        if len(self.p_s) != d.source or any(not 0 <= v < c.source for v in self.p_s):
            raise ValidationError("P_S has the wrong shape")
        MonotoneMap(self.p_t, c.target)
        if len(self.p_t) != d.target:
            raise ValidationError("P_T has the wrong shape")
        for s in range(d.source):
            if c(self.p_s[s]) != self.p_t[d(s)]:
                raise ValidationError(f"square does not commute at {s}")
        for fib in d.fibers():
            img = [self.p_s[s] for s in fib]
            if any(a >= b for a, b in zip(img, img[1:])):
                raise ValidationError(f"P_S not order preserving on fiber {fib}")
        if d.sc != c.sc:
            raise ValidationError("SC and non-SC 2-trees cannot be mapped")
        if d.sc and self.p_t[0] != 0:
            raise ValidationError("P_T must preserve the marked minimum")

    def compose(self, inner: "TwoTreeMap") -> "TwoTreeMap":
        """``self o inner``."""
        if inner.cod != self.dom:
            raise ValidationError("maps are not composable")
        return TwoTreeMap(
            inner.dom,
            self.cod,
            tuple(self.p_s[v] for v in inner.p_s),
            tuple(self.p_t[v] for v in inner.p_t),
        )

    def fiber_sources(self, s1: int) -> tuple[int, ...]:
        return tuple(s for s in range(self.dom.source) if self.p_s[s] == s1)


def fiber(P: TwoTreeMap, s1: int, prune: bool = True) -> TwoTree:
    """The fiber 2-tree ``P^{-1}(s1)``.

    Its source is ``P_S^{-1}(s1)`` and its target is ``P_T^{-1}(cod(s1))``, both
    with the inherited orders; it is SC exactly when ``cod(s1)`` is the marked
    minimum of an SC codomain.
    """
    src = P.fiber_sources(s1)
    t1 = P.cod(s1)
    tgt = [t for t in range(P.dom.target) if P.p_t[t] == t1]
    pos = {t: i for i, t in enumerate(tgt)}
    sc = P.cod.sc and t1 == 0
    tree = TwoTree(tuple(pos[P.dom(s)] for s in src), len(tgt), sc)
    return tree.pruned() if prune else tree


def restrict(P: TwoTreeMap, Q: TwoTreeMap, s2: int) -> TwoTreeMap:
    """The map ``(QP)^{-1}(s2) -> Q^{-1}(s2)`` induced by ``P`` on raw fibers."""
    QP = Q.compose(P)
    big = fiber(QP, s2, prune=False)
    small = fiber(Q, s2, prune=False)
    big_src = QP.fiber_sources(s2)
    small_src = Q.fiber_sources(s2)
    t2 = Q.cod(s2)
    big_tgt = [t for t in range(QP.dom.target) if QP.p_t[t] == t2]
    small_tgt = [t for t in range(Q.dom.target) if Q.p_t[t] == t2]
    sp = {s: i for i, s in enumerate(small_src)}
    tp = {t: i for i, t in enumerate(small_tgt)}
    return TwoTreeMap(
        big,
        small,
        tuple(sp[P.p_s[s]] for s in big_src),
        tuple(tp[P.p_t[t]] for t in big_tgt),
    )


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Ordered sequences of positive integers summing to ``n`` (one, empty, for n=0)."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def _tree_from_parts(parts: Sequence[int], sc: bool, n_alg: int) -> TwoTree:
    vals = [0] * n_alg
    base = 1 if sc else 0
    for t, k in enumerate(parts):
        vals += [t + base] * k
    return TwoTree(tuple(vals), len(parts) + base, sc)


def enumerate_pruned(
    labels: Sequence[int] | int, sc: bool = False, algebra: Sequence[int] = ()
) -> list[tuple[tuple[int, ...], TwoTree]]:
    """Objects of ``J(S)``: every total order of the labels and pruned 2-tree on it.

    For SC label sets ``algebra`` lists ``S_a``; it must be exactly the fiber over
    the marked minimum, so it occupies an initial segment of the order.
    """
    if isinstance(labels, int):
        labels = tuple(range(labels))
    labels = tuple(labels)
    alg = tuple(a for a in labels if a in set(algebra))
    if not sc and alg:
        raise ValidationError("algebra inputs need an SC label set")
    coch = tuple(a for a in labels if a not in set(alg))
    out = []
    for pa in itertools.permutations(alg):
        for pc in itertools.permutations(coch):
            for parts in compositions(len(pc)):
                out.append((pa + pc, _tree_from_parts(parts, sc, len(pa))))
    return out


def is_morphism(obj1, obj2) -> bool:
    """Whether ``J(S)`` has an arrow ``obj1 -> obj2`` (a 2-tree map that is the identity on labels)."""
    return morphism_pt(obj1, obj2) is not None


def morphism_pt(obj1, obj2) -> tuple[int, ...] | None:
    """The forced ``P_T`` of the label-identity map ``obj1 -> obj2``, or None."""
    lab1, t1 = obj1
    lab2, t2 = obj2
    if t1.sc != t2.sc or sorted(lab1) != sorted(lab2):
        return None
    pos2 = {a: i for i, a in enumerate(lab2)}
    p_s = [pos2[a] for a in lab1]
    p_t: list[int | None] = [None] * t1.target
    if t1.sc:
        p_t[0] = 0
    for s, a in enumerate(lab1):
        t = t1(s)
        img = t2(p_s[s])
        if p_t[t] is None:
            p_t[t] = img
        elif p_t[t] != img:
            return None
    if any(v is None for v in p_t):
        return None
    if any(a > b for a, b in zip(p_t, p_t[1:])):
        return None
    for fib in t1.fibers():
        img = [p_s[s] for s in fib]
        if any(a >= b for a, b in zip(img, img[1:])):
            return None
    return tuple(p_t)


def poset_relation(objects) -> dict[int, set[int]]:
    """``{i: {j : objects[i] -> objects[j]}}`` for the objects of ``J(S)``."""
    return {
        i: {j for j, b in enumerate(objects) if is_morphism(a, b)}
        for i, a in enumerate(objects)
    }


def fn_dimension(tau: TwoTree) -> int:
    """Dimension of the Fox-Neuwirth cell of a pruned 2-tree."""
    return tau.source + tau.target - (1 if tau.sc else 0)
