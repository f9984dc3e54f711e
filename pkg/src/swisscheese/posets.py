"""The posets of pruned 2-trees on a labelled set, their order complexes, and
set-valued colimits over them.

An object is ``(order, tree)``: a total order on the labels (a tuple) and a
pruned (SC) 2-tree on the ordinal of that length. Arrows are 2-tree maps that
are the identity on labels; there is at most one between two objects.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from . import linalg
from .combinat import TwoTree, enumerate_pruned, fn_dimension, is_morphism
from .dsets import tree_compatible
from .errors import BoundExceeded, ValidationError
from .fields import QQ, Field

MAX_LABELS = 6


@dataclass(frozen=True)
class Poset:
    objects: tuple
    above: tuple[frozenset, ...]  # above[i] = {j : i <= j}, reflexive

    @staticmethod
    def from_relation(objects: Sequence, leq: Callable) -> "Poset":
        objects = tuple(objects)
        above = tuple(
            frozenset(j for j, b in enumerate(objects) if leq(a, b)) for a in objects
        )
        return Poset(objects, above)

    def __len__(self) -> int:
        return len(self.objects)

    def leq(self, i: int, j: int) -> bool:
        return j in self.above[i]

    def check_axioms(self) -> bool:
        n = len(self)
        for i in range(n):
            if i not in self.above[i]:
                return False
            for j in self.above[i]:
                if j != i and i in self.above[j]:
                    return False
                if not self.above[j] <= self.above[i]:
                    return False
        return True

    def sub(self, keep: Iterable[int]) -> "Poset":
        keep = sorted(set(keep))
        pos = {i: k for k, i in enumerate(keep)}
        return Poset(
            tuple(self.objects[i] for i in keep),
            tuple(frozenset(pos[j] for j in self.above[i] if j in pos) for i in keep),
        )

    def edges(self) -> list[tuple[int, int]]:
        """Strict relations ``i < j``."""
        return [(i, j) for i in range(len(self)) for j in sorted(self.above[i]) if j != i]

    def to_edge_list(self) -> str:
        """Cover relations, one ``i j`` pair per line, after a header with the object count."""
        lines = [f"# objects {len(self)}"]
        for i, j in self.edges():
            if not any(k not in (i, j) and self.leq(i, k) and self.leq(k, j) for k in range(len(self))):
                lines.append(f"{i} {j}")
        return "\n".join(lines) + "\n"


def _labels_and_algebra(labels, algebra):
    if isinstance(labels, int):
        labels = tuple(range(labels))
    labels = tuple(labels)
    if len(labels) > MAX_LABELS:
        raise BoundExceeded(f"at most {MAX_LABELS} labels, got {len(labels)}")
    if not set(algebra) <= set(labels):
        raise ValidationError("algebra labels must be labels")
    return labels, tuple(algebra)


def build_J(labels: Sequence[Hashable] | int, sc: bool = False, algebra: Sequence = ()) -> Poset:
    """The poset of pruned (SC) 2-trees on the label set."""
    labels, algebra = _labels_and_algebra(labels, algebra)
    objs = enumerate_pruned(labels, sc, algebra)
    return Poset.from_relation(objs, is_morphism)


def object_contains(obj, sigma: Sequence) -> bool:
    """Whether the surjection ``sigma`` (a sequence of labels) lies in ``D(tree, N)``."""
    order, tree = obj
    pos = {a: i for i, a in enumerate(order)}
    return tree_compatible([pos[a] for a in sigma], tree)


def build_J_sigma(sigma: Sequence[Hashable], sc: bool = False, algebra: Sequence = ()) -> Poset:
    """The full sub-poset of objects whose trees are compatible with ``sigma``."""
    labels = tuple(sorted(set(sigma), key=list(sigma).index))
    full = build_J(labels, sc, algebra)
    return full.sub(i for i, obj in enumerate(full.objects) if object_contains(obj, sigma))


def chains(P: Poset) -> dict[int, list[tuple[int, ...]]]:
    """Nondegenerate simplices of the order complex, by dimension."""
    out: dict[int, list] = {}
    strict = {i: sorted(j for j in P.above[i] if j != i) for i in range(len(P))}

    def extend(chain):
        out.setdefault(len(chain) - 1, []).append(chain)
        for j in strict[chain[-1]]:
            extend(chain + (j,))

    for i in range(len(P)):
        extend((i,))
    return out


def reduced_homology(P: Poset, field: Field = QQ, max_simplices: int = 200_000) -> dict[int, int]:
    """Reduced homology of the order complex, including the augmentation in degree -1."""
    simplices = chains(P)
    if sum(map(len, simplices.values())) > max_simplices:
        raise BoundExceeded("order complex too large")
    simplices[-1] = [()]
    index = {d: {c: k for k, c in enumerate(cs)} for d, cs in simplices.items()}
    ranks = {}
    top = max(simplices)
    for d in range(0, top + 1):
        cols = []
        for c in simplices[d]:
            col = {}
            for i in range(len(c)):
                col[index[d - 1][c[:i] + c[i + 1 :]]] = field((-1) ** i)
            cols.append(col)
        ranks[d] = linalg.rank(field, cols)
    out = {}
    for d in range(-1, top + 1):
        out[d] = len(simplices[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return out


def is_acyclic(P: Poset, field: Field = QQ) -> bool:
    return not any(reduced_homology(P, field).values())


# set-valued colimits


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def set_colim(P: Poset, values: Callable[[int], Iterable], restrict: Callable[[int, int, Hashable], Hashable]) -> list[set]:
    """Colimit of a contravariant set-valued functor on ``P``.

    ``values(i)`` is the set attached to object ``i`` and ``restrict(i, j, x)``
    maps ``x`` in the set of ``j`` to the set of ``i`` for ``i <= j``. Returns
    the equivalence classes of ``(object, element)`` pairs.
    """
    uf = _UnionFind()
    for i in range(len(P)):
        for x in values(i):
            uf.find((i, x))
    for i, j in P.edges():
        for x in values(j):
            uf.union((j, x), (i, restrict(i, j, x)))
    classes: dict = {}
    for node in list(uf.parent):
        classes.setdefault(uf.find(node), set()).add(node)
    return list(classes.values())


def set_colim_bfs(P: Poset, values, restrict) -> list[set]:
    """Same classes as :func:`set_colim`, by breadth-first search on the element graph."""
    adj: dict = {}
    for i in range(len(P)):
        for x in values(i):
            adj.setdefault((i, x), set())
    for i, j in P.edges():
        for x in values(j):
            y = (i, restrict(i, j, x))
            adj[(j, x)].add(y)
            adj.setdefault(y, set()).add((j, x))
    seen, out = set(), []
    for start in adj:
        if start in seen:
            continue
        comp, queue = {start}, deque([start])
        seen.add(start)
        while queue:
            for y in adj[queue.popleft()]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        out.append(comp)
    return out


# Fox-Neuwirth cells


def fn_cell(config: dict, sc: bool = False, tol: float = 1e-9):
    """The object whose Fox-Neuwirth cell contains a configuration ``{label: (x, y)}``.

    Columns are the distinct ``x`` values (compared with tolerance), ordered left
    to right; labels in a column are ordered bottom to top. For SC
    configurations the column ``x = 0`` is the marked minimum and every other
    point must have ``x > 0``. Returns None if two points coincide or an SC
    configuration has a point with ``x < 0``.
    """
    xs = []
    for _, (x, _) in sorted(config.items(), key=lambda kv: kv[1][0]):
        if not xs or x - xs[-1] > tol:
            xs.append(x)
    cols: list[list] = [[] for _ in xs]
    for a, (x, y) in config.items():
        k = min(range(len(xs)), key=lambda i: abs(xs[i] - x))
        cols[k].append(a)
    for col in cols:
        col.sort(key=lambda a: config[a][1])
        for a, b in zip(col, col[1:]):
            if config[b][1] - config[a][1] <= tol:
                return None
    base = 0
    if sc:
        if xs and xs[0] < -tol:
            return None
        if xs and abs(xs[0]) <= tol:
            alg, cols = cols[0], cols[1:]
        else:
            alg = []
        base = 1
    else:
        alg = []
    order = tuple(alg) + tuple(a for col in cols for a in col)
    values = [0] * len(alg)
    for t, col in enumerate(cols):
        values += [t + base] * len(col)
    return order, TwoTree(tuple(values), len(cols) + base, sc)


def fn_cell_dimension(obj) -> int:
    return fn_dimension(obj[1])
