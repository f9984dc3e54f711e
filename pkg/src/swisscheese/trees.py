"""Marked planar trees, their reduction to minimal form, and boundary words.

A planted planar tree has vertices of four kinds:

``u``  unmarked (an operation of the associative operad: product, identity or unit),
``s``  an input cochain labelled by ``s``; its children are the arguments,
``j``  an output leaf (the ``j``-th argument of the resulting cochain),
``a``  an algebra-colored input leaf (Swiss-cheese trees only).

Two trees are equivalent when one reduces to the other by contracting an edge
with unmarked ends or by deleting an unmarked vertex with a single child.
Every class has a unique minimal tree, and minimal trees are in bijection with
valid boundary words (:func:`nu_ord`, :func:`nu_tree`).

A word is a tuple of tokens ``('s', label, sector)``, ``('j', index)`` or
``('a', label)``. Walking clockwise around the tree an ``s``-vertex of arity
``n`` is passed ``n + 1`` times, once per sector.

>>> t = Vertex("u", children=(Vertex("s", 0, (Vertex("j", 0),)),))
>>> to_minimal(t)
Vertex(kind='s', label=0, children=(Vertex(kind='j', label=0, children=()),))
>>> nu_ord(t).tokens
(('s', 0, 0), ('j', 0), ('s', 0, 1))
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .errors import ValidationError

KINDS = ("u", "s", "j", "a")


@dataclass(frozen=True)
class Vertex:
    kind: str
    label: int = -1
    children: tuple["Vertex", ...] = ()

    def __post_init__(self):
        if type(self.children) is not tuple:
            object.__setattr__(self, "children", tuple(self.children))

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind != "u":
            d["label"] = self.label
        if self.children:
            d["children"] = [c.to_json() for c in self.children]
        return d

    @staticmethod
    def from_json(d: dict) -> "Vertex":
        return Vertex(
            d["kind"],
            d.get("label", -1),
            tuple(Vertex.from_json(c) for c in d.get("children", ())),
        )


def u(*children: Vertex) -> Vertex:
    return Vertex("u", -1, children)


def s(label: int, *children: Vertex) -> Vertex:
    return Vertex("s", label, children)


def j(index: int) -> Vertex:
    return Vertex("j", index)


def a(label: int) -> Vertex:
    return Vertex("a", label)


def walk(v: Vertex) -> Iterator[Vertex]:
    """Vertices in planar preorder."""
    yield v
    for c in v.children:
        yield from walk(c)


@dataclass(frozen=True)
class Profile:
    """Arity of every cochain input, number of outputs and algebra inputs.

    ``sc=True`` means the output is algebra-colored: there are no output leaves.
    """

    arities: tuple[tuple[int, int], ...]  # sorted (label, arity) pairs
    n_outputs: int = 0
    algebra: tuple[int, ...] = ()
    sc: bool = False

    def __post_init__(self):
        object.__setattr__(self, "arities", tuple(sorted(self.arities)))
        object.__setattr__(self, "algebra", tuple(sorted(self.algebra)))
        if self.sc and self.n_outputs:
            raise ValidationError("algebra-colored output has no output leaves")
        if self.algebra and not self.sc:
            raise ValidationError("algebra inputs require an algebra-colored output")
        labels = [l for l, _ in self.arities] + list(self.algebra)
        if len(set(labels)) != len(labels):
            raise ValidationError("input labels must be distinct")

    @property
    def n_tokens(self) -> int:
        return sum(n + 1 for _, n in self.arities) + self.n_outputs + len(self.algebra)


def profile_of(t: Vertex, sc: bool = False) -> Profile:
    ar, js, al = [], 0, []
    for v in walk(t):
        if v.kind == "s":
            ar.append((v.label, len(v.children)))
        elif v.kind == "j":
            js += 1
        elif v.kind == "a":
            al.append(v.label)
    return Profile(tuple(ar), js, tuple(al), sc)


def validate_tree(t: Vertex, sc: bool = False) -> Profile:
    """Check vertex kinds, labels and the clockwise order of outputs; returns the profile."""
    for v in walk(t):
        if v.kind not in KINDS:
            raise ValidationError(f"unknown vertex kind {v.kind!r}")
        if v.kind in ("j", "a") and v.children:
            raise ValidationError(f"{v.kind}-vertices are leaves")
    prof = profile_of(t, sc)
    outs = [v.label for v in walk(t) if v.kind == "j"]
    if outs != list(range(len(outs))):
        raise ValidationError(f"output leaves {outs} are not in clockwise order")
    return prof


def _reduce_first(v: Vertex) -> Vertex | None:
    for i, c in enumerate(v.children):
        r = _reduce_first(c)
        if r is not None:
            return Vertex(v.kind, v.label, v.children[:i] + (r,) + v.children[i + 1 :])
    if v.kind == "u":
        if len(v.children) == 1:
            return v.children[0]
        for i, c in enumerate(v.children):
            if c.kind == "u":
                return Vertex("u", -1, v.children[:i] + c.children + v.children[i + 1 :])
    return None


def reduce_step(t: Vertex) -> Vertex | None:
    """Apply the leftmost-innermost reduction, or return None if ``t`` is minimal."""
    return _reduce_first(t)


def redexes(t: Vertex, path: tuple = ()) -> list[tuple[tuple, str, int]]:
    """All applicable reductions as ``(path, rule, child index)``."""
    out = []
    for i, c in enumerate(t.children):
        out += redexes(c, path + (i,))
    if t.kind == "u":
        if len(t.children) == 1:
            out.append((path, "drop", 0))
        for i, c in enumerate(t.children):
            if c.kind == "u":
                out.append((path, "contract", i))
    return out


def apply_redex(t: Vertex, path: tuple, rule: str, i: int) -> Vertex:
    if path:
        k = path[0]
        kids = list(t.children)
        kids[k] = apply_redex(kids[k], path[1:], rule, i)
        return Vertex(t.kind, t.label, tuple(kids))
    if rule == "drop":
        return t.children[0]
    c = t.children[i]
    return Vertex("u", -1, t.children[:i] + c.children + t.children[i + 1 :])


def to_minimal(t: Vertex) -> Vertex:
    while True:
        r = reduce_step(t)
        if r is None:
            return t
        t = r


def to_minimal_random(t: Vertex, rng: random.Random) -> Vertex:
    """Minimize using a random applicable reduction at each step."""
    while True:
        rs = redexes(t)
        if not rs:
            return t
        t = apply_redex(t, *rng.choice(rs))


def is_minimal(t: Vertex) -> bool:
    if t.kind == "u":
        if len(t.children) == 1 or any(c.kind == "u" for c in t.children):
            return False
    return all(is_minimal(c) for c in t.children)


@dataclass(frozen=True)
class TotalOrderWord:
    tokens: tuple
    sc: bool = False
    profile: Profile = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(tuple(t) for t in self.tokens))
        object.__setattr__(self, "profile", validate_word(self.tokens, self.sc))

    def to_json(self) -> dict:
        return {"tokens": [list(t) for t in self.tokens], "sc": self.sc}

    @staticmethod
    def from_json(d: dict) -> "TotalOrderWord":
        return TotalOrderWord(tuple(tuple(t) for t in d["tokens"]), bool(d.get("sc", False)))


def interleaving_quadruple(seq) -> tuple[int, int, int, int] | None:
    """Positions ``i<j<k<l`` with ``seq[i]==seq[k]!=seq[j]==seq[l]``, if any."""
    pos: dict = {}
    for i, b in enumerate(seq):
        if b is not None:
            pos.setdefault(b, []).append(i)
    blocks = list(pos)
    for x in blocks:
        px = pos[x]
        if len(px) < 2:
            continue
        for y in blocks:
            if y == x or len(pos[y]) < 2:
                continue
            py = pos[y]
            # first x, then a y, then an x, then a y
            i = px[0]
            js = [q for q in py if q > i]
            if not js:
                continue
            jj = js[0]
            ks = [q for q in px if q > jj]
            if not ks:
                continue
            kk = ks[0]
            ls = [q for q in py if q > kk]
            if ls:
                return (i, jj, kk, ls[0])
    return None


def validate_word(tokens, sc: bool = False) -> Profile:
    """Check a boundary word and return its profile.

    Sectors of each cochain input appear exactly once and in increasing order,
    outputs appear in increasing order, and no two inputs interleave.
    """
    sectors: dict[int, list[int]] = {}
    outs, alg = [], []
    for t in tokens:
        if t[0] == "s":
            sectors.setdefault(t[1], []).append(t[2])
        elif t[0] == "j":
            outs.append(t[1])
        elif t[0] == "a":
            alg.append(t[1])
        else:
            raise ValidationError(f"bad token {t!r}")
    for lab, secs in sectors.items():
        if secs != list(range(len(secs))):
            raise ValidationError(f"sectors of input {lab} out of order: {secs}")
    if outs != list(range(len(outs))):
        raise ValidationError(f"outputs out of order: {outs}")
    if len(set(alg)) != len(alg):
        raise ValidationError("repeated algebra input")
    quad = interleaving_quadruple([t[1] if t[0] == "s" else None for t in tokens])
    if quad is not None:
        raise ValidationError(f"inputs interleave at token positions {quad}")
    return Profile(
        tuple((lab, len(secs) - 1) for lab, secs in sectors.items()), len(outs), tuple(alg), sc
    )


def _relabel(t: Vertex, names: dict) -> Vertex:
    if t.kind in ("s", "a"):
        return Vertex(t.kind, names[t.label], tuple(_relabel(c, names) for c in t.children))
    return Vertex(t.kind, t.label, tuple(_relabel(c, names) for c in t.children))


def _fill_outputs(t: Vertex, leaves: tuple) -> Vertex:
    if t.kind == "j":
        return leaves[t.label]
    return Vertex(t.kind, t.label, tuple(_fill_outputs(c, leaves) for c in t.children))


def graft(outer: Vertex, inners: dict, relabel: dict) -> Vertex:
    """Substitute ``inners[l]`` for the vertex or algebra leaf labelled ``l``.

    Output leaf ``j_k`` of the substituted tree receives the ``k``-th child of the
    replaced vertex; input labels of ``inners[l]`` are renamed by ``relabel[l]``.
    """
    def go(v: Vertex) -> Vertex:
        if v.kind in ("s", "a") and v.label in inners:
            kids = tuple(go(c) for c in v.children)
            inner = _relabel(inners[v.label], relabel[v.label])
            if v.kind == "s" and sum(1 for w in walk(inner) if w.kind == "j") != len(kids):
                raise ValidationError(f"vertex {v.label} has {len(kids)} children")
            return _fill_outputs(inner, kids)
        return Vertex(v.kind, v.label, tuple(go(c) for c in v.children))

    return go(outer)


def _boundary(v: Vertex, out: list) -> None:
    if v.kind == "s":
        out.append(("s", v.label, 0))
        for k, c in enumerate(v.children):
            _boundary(c, out)
            out.append(("s", v.label, k + 1))
    elif v.kind == "j":
        out.append(("j", v.label))
    elif v.kind == "a":
        out.append(("a", v.label))
    else:
        for c in v.children:
            _boundary(c, out)


def boundary_word(t: Vertex) -> tuple:
    """Clockwise boundary tokens of ``t`` without validation."""
    out: list = []
    _boundary(t, out)
    return tuple(out)


def nu_ord(t: Vertex, sc: bool = False) -> TotalOrderWord:
    """The clockwise boundary word of a tree (independent of the representative)."""
    validate_tree(t, sc)
    out: list = []
    _boundary(to_minimal(t), out)
    return TotalOrderWord(tuple(out), sc)


def _parse(tokens: tuple, last: dict, lo: int, hi: int) -> Vertex:
    """Minimal tree of the segment ``tokens[lo:hi]``; ``last[label]`` is the final
    position of each input's sectors."""
    items, i = [], lo
    while i < hi:
        t = tokens[i]
        if t[0] == "s":
            lab = t[1]
            end = last[lab]
            kids, p = [], i
            for k in range(i + 1, end + 1):
                tk = tokens[k]
                if tk[0] == "s" and tk[1] == lab:
                    kids.append(_parse(tokens, last, p + 1, k))
                    p = k
            items.append(Vertex("s", lab, tuple(kids)))
            i = end + 1
        else:
            items.append(Vertex(t[0], t[1]))
            i += 1
    if len(items) == 1:
        return items[0]
    return Vertex("u", -1, tuple(items))


def _gap(tokens: tuple) -> Vertex:
    last = {t[1]: k for k, t in enumerate(tokens) if t[0] == "s"}
    return _parse(tokens, last, 0, len(tokens))


def nu_tree(word: TotalOrderWord | tuple, sc: bool = False) -> Vertex:
    """The minimal tree whose boundary word is ``word``."""
    if not isinstance(word, TotalOrderWord):
        word = TotalOrderWord(tuple(word), sc)
    return _gap(word.tokens)


def words(prof: Profile) -> Iterator[tuple]:
    """Every valid boundary word with the given profile."""
    ar = dict(prof.arities)
    size = {l: n + 1 for l, n in ar.items()}
    cnt = {l: 0 for l in ar}
    used_a: set = set()
    out: list = []
    total = prof.n_tokens

    def rec(stack: list, nj: int):
        if len(out) == total:
            yield tuple(out)
            return
        if nj < prof.n_outputs:
            out.append(("j", nj))
            yield from rec(stack, nj + 1)
            out.pop()
        for l in prof.algebra:
            if l not in used_a:
                used_a.add(l)
                out.append(("a", l))
                yield from rec(stack, nj)
                out.pop()
                used_a.discard(l)
        for l in ar:
            c = cnt[l]
            if c == size[l]:
                continue
            if c == 0:
                new = stack + [l]
            elif l in stack and all(cnt[x] == size[x] for x in stack[stack.index(l) + 1 :]):
                new = stack[: stack.index(l) + 1]
            else:
                continue
            cnt[l] += 1
            out.append(("s", l, c))
            yield from rec(new, nj)
            out.pop()
            cnt[l] -= 1

    yield from rec([], 0)


def _splits(res: tuple, k: int) -> Iterator[tuple]:
    """Ways to distribute resources ``(s labels, #outputs, a labels)`` over ``k`` ordered parts."""
    slabs, nj, alabs = res
    if k == 0:
        if not slabs and not nj and not alabs:
            yield ()
        return
    for sa in itertools.product(range(k), repeat=len(slabs)):
        for aa in itertools.product(range(k), repeat=len(alabs)):
            for js in _weak_compositions(nj, k):
                yield tuple(
                    (
                        tuple(l for l, p in zip(slabs, sa) if p == i),
                        js[i],
                        tuple(l for l, p in zip(alabs, aa) if p == i),
                    )
                    for i in range(k)
                )


def _weak_compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _weak_compositions(n - first, k - 1):
            yield (first,) + rest


def _forests(res: tuple, arity: dict, j0: int) -> Iterator[tuple[Vertex, ...]]:
    """Sequences of non-unmarked items using exactly the given resources;
    output leaves are numbered from ``j0`` in clockwise order."""
    slabs, nj, alabs = res
    if not slabs and not nj and not alabs:
        yield ()
        return
    if nj:
        leaf = Vertex("j", j0)
        for rest in _forests((slabs, nj - 1, alabs), arity, j0 + 1):
            yield (leaf,) + rest
    for l in alabs:
        leaf = Vertex("a", l)
        for rest in _forests((slabs, nj, tuple(x for x in alabs if x != l)), arity, j0):
            yield (leaf,) + rest
    for l in slabs:
        others = tuple(x for x in slabs if x != l)
        n = arity[l]
        for parts in _splits((others, nj, alabs), n + 1):
            offs, o = [], j0
            for part in parts:
                offs.append(o)
                o += part[1]
            for kids in itertools.product(*(_gaps(parts[i], arity, offs[i]) for i in range(n))):
                v = Vertex("s", l, kids)
                for rest in _forests(parts[n], arity, offs[n]):
                    yield (v,) + rest


def _gaps(res: tuple, arity: dict, j0: int) -> Iterator[Vertex]:
    for items in _forests(res, arity, j0):
        yield items[0] if len(items) == 1 else Vertex("u", -1, items)


def minimal_trees(prof: Profile) -> Iterator[Vertex]:
    """Every minimal tree with the given profile, built directly from the tree grammar."""
    arity = dict(prof.arities)
    res = (tuple(sorted(arity)), prof.n_outputs, tuple(prof.algebra))
    yield from _gaps(res, arity, 0)


def _arity_multisets(k: int, budget: int, lo: int = 0) -> Iterator[tuple[int, ...]]:
    """Nondecreasing arity tuples of length ``k`` using at most ``budget`` tokens."""
    if k == 0:
        yield ()
        return
    for n in range(lo, budget):
        if (n + 1) * k > budget:
            break
        for rest in _arity_multisets(k - 1, budget - n - 1, n):
            yield (n,) + rest


def profiles(max_tokens: int, sc: bool) -> Iterator[Profile]:
    """Profiles up to relabelling: cochain inputs ``0..k-1`` with nondecreasing
    arities, then algebra inputs ``k..``."""
    for k in range(max_tokens + 1):
        for arities in _arity_multisets(k, max_tokens):
            base = sum(n + 1 for n in arities)
            for n_alg in range(max_tokens - base + 1) if sc else [0]:
                alg = tuple(range(k, k + n_alg))
                for m in [0] if sc else range(max_tokens - base + 1):
                    yield Profile(tuple(enumerate(arities)), m, alg, sc)


def roundtrip_check(max_tokens: int) -> dict:
    """Exhaustive bijection check between minimal trees and valid words.

    For every profile (both colors) with at most ``max_tokens`` tokens: each word
    parses to a minimal tree whose boundary is the word again, each minimal tree
    from the tree grammar reads back to itself, and the two sets have equal size.
    """
    stats = {"profiles": 0, "words": 0, "trees": 0, "failures": []}
    for sc in (False, True):
        for prof in profiles(max_tokens, sc):
            stats["profiles"] += 1
            ws = set()
            for w in words(prof):
                ws.add(w)
                t = _gap(w)
                if not is_minimal(t) or boundary_word(t) != w:
                    stats["failures"].append({"word": w})
            # boundary words of the grammar's trees: distinct, valid and as many
            # as the words, so boundary is a bijection and the parser its inverse
            bws = set()
            nt = 0
            for t in minimal_trees(prof):
                nt += 1
                bws.add(boundary_word(t))
            if len(bws) != nt or not bws <= ws or nt != len(ws):
                stats["failures"].append({"profile": repr(prof), "words": len(ws), "trees": nt})
            stats["words"] += len(ws)
            stats["trees"] += nt
    return stats
