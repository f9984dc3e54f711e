"""The operads Se and Seq in the ordinal-colored encoding.

An element of ``Se(S)^J_{I_s}`` is a total order on the disjoint union of the
input ordinals ``I_s`` (agreeing with each ``I_s`` and with no two inputs
interleaving) together with a monotone map ``Q`` from that order to ``J``.
Swiss-cheese elements additionally carry algebra-colored inputs, encoded as
blocks of size one, and an algebra-colored output, encoded as ``J`` of size one.

Tokens are pairs ``(label, index)``. A tree vertex of arity ``n`` corresponds to a
block of size ``n + 1`` and ``m`` output leaves to ``|J| = m + 1``.

>>> e = SeqElem((2,), 2, ((0, 0), (0, 1)), (0, 1))
>>> to_word(e)
(('s', 0, 0), ('j', 0), ('s', 0, 1))
>>> elementary_classes(e)
((0, 2),)
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .combinat import MonotoneMap, TwoTree
from .errors import ColorMismatch, ValidationError
from .trees import TotalOrderWord, interleaving_quadruple

Token = tuple[int, int]


@dataclass(frozen=True)
class SeqElem:
    blocks: tuple[int, ...]
    J: int
    arrangement: tuple[Token, ...]
    q: tuple[int, ...]
    algebra: frozenset = frozenset()
    sc: bool = False

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "arrangement", tuple(tuple(t) for t in self.arrangement))
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "algebra", frozenset(self.algebra))
        validate(self)

    @property
    def n_inputs(self) -> int:
        return len(self.blocks)

    @property
    def n_tokens(self) -> int:
        return len(self.arrangement)

    @property
    def cochain_inputs(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.n_inputs) if s not in self.algebra)

    def labels(self) -> tuple[int, ...]:
        return tuple(t[0] for t in self.arrangement)

    def degree(self) -> int:
        """Cohomological degree ``(|J|-1) - sum over cochain inputs of (|I_s|-1)``."""
        return (self.J - 1) - sum(self.blocks[s] - 1 for s in self.cochain_inputs)

    def to_json(self) -> dict:
        return {
            "blocks": list(self.blocks),
            "J": self.J,
            "arrangement": [list(t) for t in self.arrangement],
            "q": list(self.q),
            "algebra": sorted(self.algebra),
            "sc": self.sc,
        }

    @staticmethod
    def from_json(d: dict) -> "SeqElem":
        return SeqElem(
            tuple(d["blocks"]),
            d["J"],
            tuple(tuple(t) for t in d["arrangement"]),
            tuple(d["q"]),
            frozenset(d.get("algebra", ())),
            bool(d.get("sc", False)),
        )


def validate(e: SeqElem) -> None:
    if e.J < 1:
        raise ValidationError("output ordinal must be nonempty")
    if any(b < 1 for b in e.blocks):
        raise ValidationError("input ordinals must be nonempty")
    if e.algebra and not e.sc:
        raise ColorMismatch("algebra inputs need an algebra-colored output")
    if not e.algebra <= set(range(e.n_inputs)):
        raise ValidationError("algebra labels out of range")
    if any(e.blocks[s] != 1 for s in e.algebra):
        raise ValidationError("algebra inputs are blocks of size one")
    if e.sc and e.J != 1:
        raise ValidationError("algebra-colored output is encoded by |J| = 1")
    if len(e.q) != len(e.arrangement):
        raise ValidationError("Q has the wrong length")
    if any(not 0 <= v < e.J for v in e.q) or any(x > y for x, y in zip(e.q, e.q[1:])):
        raise ValidationError(f"Q={e.q} is not a monotone map into |J|={e.J}")
    seen = [0] * e.n_inputs
    for lab, i in e.arrangement:
        if not 0 <= lab < e.n_inputs or i != seen[lab]:
            raise ValidationError(f"token {(lab, i)} out of order")
        seen[lab] += 1
    if tuple(seen) != e.blocks:
        raise ValidationError("arrangement does not exhaust the input ordinals")
    quad = interleaving_quadruple([l if l not in e.algebra else None for l, _ in e.arrangement])
    if quad is not None:
        raise ValidationError(f"inputs interleave at positions {quad}")


def from_labels(labels: Sequence[int], q: Sequence[int], J: int, algebra=(), sc=False, n_inputs=None) -> SeqElem:
    """Build an element from its sequence of block labels."""
    n = n_inputs if n_inputs is not None else (max(labels) + 1 if labels else 0)
    cnt = [0] * n
    arr = []
    for l in labels:
        arr.append((l, cnt[l]))
        cnt[l] += 1
    return SeqElem(tuple(cnt), J, tuple(arr), tuple(q), frozenset(algebra), sc)


def to_word(e: SeqElem) -> tuple:
    """Boundary word: output ``j`` sits after every token with ``Q <= j``."""
    out, nxt = [], 0
    m = e.J - 1 if not e.sc else 0
    for (lab, i), v in zip(e.arrangement, e.q):
        while nxt < v:
            out.append(("j", nxt))
            nxt += 1
        out.append(("a", lab) if lab in e.algebra else ("s", lab, i))
    while nxt < m:
        out.append(("j", nxt))
        nxt += 1
    return tuple(out)


def from_word(word: TotalOrderWord | tuple, sc: bool | None = None) -> SeqElem:
    """Inverse of :func:`to_word`; ``Q(x)`` counts the outputs preceding ``x``."""
    if not isinstance(word, TotalOrderWord):
        word = TotalOrderWord(tuple(word), bool(sc))
    prof = word.profile
    labels = [l for l, _ in prof.arities] + list(prof.algebra)
    if sorted(labels) != list(range(len(labels))):
        raise ValidationError("input labels must be 0..n-1")
    blocks = [0] * len(labels)
    for l, n in prof.arities:
        blocks[l] = n + 1
    for l in prof.algebra:
        blocks[l] = 1
    arr, q, outs = [], [], 0
    for t in word.tokens:
        if t[0] == "j":
            outs += 1
        elif t[0] == "s":
            arr.append((t[1], t[2]))
            q.append(outs)
        else:
            arr.append((t[1], 0))
            q.append(0)
    J = 1 if word.sc else prof.n_outputs + 1
    return SeqElem(tuple(blocks), J, tuple(arr), tuple(q), frozenset(prof.algebra), word.sc)


def unit(n: int) -> SeqElem:
    """Identity operation on the cochain color of size ``n``."""
    return SeqElem((n,), n, tuple((0, i) for i in range(n)), tuple(range(n)))


def algebra_unit() -> SeqElem:
    return SeqElem((1,), 1, ((0, 0),), (0,), frozenset({0}), True)


def unary(theta: MonotoneMap) -> SeqElem:
    """The one-input element ``I -> J`` given by a monotone map."""
    return SeqElem((theta.source,), theta.target, tuple((0, i) for i in range(theta.source)), theta.values)


def compose(outer: SeqElem, inners: Sequence[SeqElem], relabel: Sequence[Sequence[int]] | None = None) -> SeqElem:
    """Operadic composition ``outer o (inners[t])_t``.

    Inputs of the composite are numbered consecutively by ``(t, inner label)``
    unless ``relabel[t][s]`` gives the final label of input ``s`` of ``inners[t]``.
    The composite order is the unique one agreeing with every inner order and
    making the assembled map to the outer order nondecreasing.
    """
    if len(inners) != outer.n_inputs:
        raise ColorMismatch("one inner element per outer input is required")
    for t, v in enumerate(inners):
        if t in outer.algebra:
            if not v.sc:
                raise ColorMismatch(f"slot {t} is algebra-colored")
        elif v.sc or v.J != outer.blocks[t]:
            raise ColorMismatch(f"slot {t} expects output size {outer.blocks[t]}")
    if relabel is None:
        relabel, off = [], 0
        for v in inners:
            relabel.append(list(range(off, off + v.n_inputs)))
            off += v.n_inputs
    n = sum(v.n_inputs for v in inners)
    if sorted(l for r in relabel for l in r) != list(range(n)):
        raise ValidationError("relabelling must be a bijection onto 0..n-1")
    opos = {tok: k for k, tok in enumerate(outer.arrangement)}
    keyed = []
    for t, v in enumerate(inners):
        for k, ((lab, i), qv) in enumerate(zip(v.arrangement, v.q)):
            f = opos[(t, qv if t not in outer.algebra else 0)]
            keyed.append(((f, k), (relabel[t][lab], i), outer.q[f]))
    keyed.sort(key=lambda x: x[0])
    blocks = [0] * n
    alg = set()
    for t, v in enumerate(inners):
        for lab in range(v.n_inputs):
            blocks[relabel[t][lab]] = v.blocks[lab]
        alg |= {relabel[t][lab] for lab in v.algebra}
    return SeqElem(
        tuple(blocks),
        outer.J,
        tuple(x[1] for x in keyed),
        tuple(x[2] for x in keyed),
        frozenset(alg),
        outer.sc,
    )


def act_input(e: SeqElem, s: int, theta: MonotoneMap) -> SeqElem:
    """Simplicial action on input ``s``: precompose with ``theta: I' -> I_s``.

    New token ``i'`` takes the place of ``theta(i')``; tokens outside the image
    disappear (faces), repeated images become adjacent (degeneracies).
    """
    if s in e.algebra:
        raise ColorMismatch("algebra inputs carry no simplicial structure")
    if theta.target != e.blocks[s]:
        raise ValidationError("theta must land in the input ordinal")
    pos = {tok: k for k, tok in enumerate(e.arrangement)}
    keyed = [((k, 0), tok, v) for k, (tok, v) in enumerate(zip(e.arrangement, e.q)) if tok[0] != s]
    for i2 in range(theta.source):
        k = pos[(s, theta(i2))]
        keyed.append(((k, i2), (s, i2), e.q[k]))
    keyed.sort(key=lambda x: x[0])
    blocks = list(e.blocks)
    blocks[s] = theta.source
    return SeqElem(tuple(blocks), e.J, tuple(x[1] for x in keyed), tuple(x[2] for x in keyed), e.algebra, e.sc)


def act_output(e: SeqElem, theta: MonotoneMap) -> SeqElem:
    """Cosimplicial action: postcompose ``Q`` with ``theta: J -> J'``."""
    if e.sc:
        raise ColorMismatch("algebra-colored output carries no cosimplicial structure")
    if theta.source != e.J:
        raise ValidationError("theta must start at J")
    return SeqElem(e.blocks, theta.target, e.arrangement, tuple(theta(v) for v in e.q), e.algebra, e.sc)


def elementary_classes(e: SeqElem) -> tuple[tuple[int, int], ...]:
    """Maximal runs of consecutive tokens from one input, as ``(label, length)``."""
    runs: list[list[int]] = []
    for lab, _ in e.arrangement:
        if runs and runs[-1][0] == lab and lab not in e.algebra:
            runs[-1][1] += 1
        else:
            runs.append([lab, 1])
    return tuple((l, c) for l, c in runs)


def complexity(e: SeqElem) -> int:
    """``|v|``: the number of elementary classes."""
    return len(elementary_classes(e))


def filtration_level(e: SeqElem) -> int:
    """Smallest ``N`` with ``e`` in ``F_N``, i.e. ``|v| - |S|``."""
    return complexity(e) - e.n_inputs


def class_sequence(e: SeqElem) -> tuple[int, ...]:
    return tuple(l for l, _ in elementary_classes(e))


def is_nondegenerate(e: SeqElem) -> bool:
    """No two adjacent tokens of one input share a value of ``Q``."""
    arr, q = e.arrangement, e.q
    return all(not (arr[k][0] == arr[k + 1][0] and q[k] == q[k + 1]) for k in range(len(arr) - 1))


def is_conormalized(e: SeqElem) -> bool:
    """``Q`` hits every element of ``J`` except possibly its minimum."""
    return set(range(1, e.J)) <= set(e.q)


def in_seq_tau(e: SeqElem, tau: TwoTree) -> bool:
    """Membership of ``e`` (inputs numbered by the source of ``tau``) in ``Seq(tau)``.

    An input ``s2`` may split input ``s1`` only if ``tau(s2) < tau(s1)``, and inputs
    in a common fiber appear one after another in the order of ``tau``.
    """
    if e.n_inputs != tau.source or e.sc != tau.sc:
        return False
    if tau.sc and e.algebra != frozenset(tau.algebra_inputs):
        return False
    pos: dict[int, list[int]] = {}
    for k, (lab, _) in enumerate(e.arrangement):
        pos.setdefault(lab, []).append(k)
    labs = [l for l, _ in e.arrangement]
    for s1, ps in pos.items():
        for k in range(ps[0] + 1, ps[-1]):
            s2 = labs[k]
            if s2 != s1 and not tau(s2) < tau(s1):
                return False
    for s1 in pos:
        for s2 in pos:
            if s1 < s2 and tau(s1) == tau(s2) and pos[s1][-1] > pos[s2][0]:
                return False
    return True


def arrangements(blocks: Sequence[int], algebra=frozenset()) -> Iterator[tuple[int, ...]]:
    """Label sequences of every admissible total order with the given block sizes."""
    n = len(blocks)
    blocks = tuple(blocks)
    cnt = [0] * n
    seq: list[int] = []
    total = sum(blocks)

    def rec(stack: list[int], closed: frozenset):
        if len(seq) == total:
            yield tuple(seq)
            return
        for b in range(n):
            if cnt[b] == blocks[b] or b in closed:
                continue
            if b in algebra:
                new_stack = stack
            elif cnt[b] == 0:
                new_stack = stack + [b]
            else:
                if b not in stack:
                    continue
                k = stack.index(b)
                if any(cnt[c] < blocks[c] for c in stack[k + 1 :]):
                    continue
                new_stack = stack[: k + 1]
            cnt[b] += 1
            seq.append(b)
            yield from rec(new_stack, closed)
            seq.pop()
            cnt[b] -= 1

    yield from rec([], frozenset())


def enumerate_elements(blocks: Sequence[int], J: int, algebra=frozenset(), sc=False) -> Iterator[SeqElem]:
    """Every element of ``Se`` with the given input sizes and output size."""
    if sc:
        J = 1
    total = sum(blocks)
    for labels in arrangements(blocks, frozenset(algebra)):
        for q in itertools.combinations_with_replacement(range(J), total):
            yield from_labels(labels, q, J, algebra, sc, n_inputs=len(blocks))


def iter_window(
    n_inputs: int,
    J: int,
    *,
    algebra=frozenset(),
    sc: bool = False,
    max_tokens: int | None = None,
    max_classes: int | None = None,
    conormalized: bool = True,
) -> Iterator[SeqElem]:
    """Nondegenerate elements with ``n_inputs`` inputs of any sizes and output size ``J``.

    Simplicial nondegeneracy bounds every run of one input by ``|J|`` tokens and
    non-interleaving bounds the number of runs by ``2 |S| - 1``, so the result is
    finite even without ``max_tokens``. With ``conormalized`` only elements whose
    ``Q`` hits ``J`` minus its minimum are produced.
    """
    algebra = frozenset(algebra)
    if sc:
        J = 1
    labels: list[int] = []
    qs: list[int] = []
    cnt = [0] * n_inputs

    def done():
        if any(c == 0 for c in cnt):
            return False
        if conormalized:
            return (qs[-1] if qs else 0) == J - 1
        return True

    def rec(stack: list[int], closed: frozenset, classes: int):
        if done():
            yield from_labels(labels, qs, J, algebra, sc, n_inputs)
        if max_tokens is not None and len(labels) >= max_tokens:
            return
        last = labels[-1] if labels else None
        lastq = qs[-1] if qs else None
        for b in range(n_inputs):
            if b in closed:
                continue
            if b in algebra:
                if cnt[b]:
                    continue
                new_stack, new_closed = stack, closed | {b}
            elif cnt[b] == 0:
                new_stack, new_closed = stack + [b], closed
            else:
                if b not in stack:
                    continue
                k = stack.index(b)
                new_stack, new_closed = stack[: k + 1], closed | set(stack[k + 1 :])
            new_classes = classes + (b != last or b in algebra)
            if max_classes is not None and new_classes > max_classes:
                continue
            lo = 0 if lastq is None else lastq + (b == last and b not in algebra)
            hi = J - 1
            if conormalized:
                hi = min(hi, 1 if lastq is None else lastq + 1)
            for v in range(lo, hi + 1):
                labels.append(b)
                qs.append(v)
                cnt[b] += 1
                yield from rec(new_stack, new_closed, new_classes)
                cnt[b] -= 1
                qs.pop()
                labels.pop()

    yield from rec([], frozenset(), 0)


def random_element(rng: random.Random, blocks: Sequence[int], J: int, algebra=frozenset(), sc: bool = False) -> SeqElem:
    """A uniformly random element with the given input sizes and output size."""
    return rng.choice(list(enumerate_elements(blocks, J, algebra, sc)))


def random_composition(rng: random.Random, max_inputs: int = 3, max_block: int = 3) -> tuple[SeqElem, list[SeqElem]]:
    """A random composable ``(outer, inners)``, SC or not, with small sizes."""
    sc = rng.random() < 0.5
    n = rng.randint(1, max_inputs)
    alg = frozenset(s for s in range(n) if sc and rng.random() < 0.4)
    blocks = [1 if s in alg else rng.randint(1, max_block) for s in range(n)]
    outer = random_element(rng, blocks, 1 if sc else rng.randint(1, max_block), alg, sc)
    inners = []
    for t in range(n):
        k = rng.randint(0, 2)
        if t in alg:
            a2 = frozenset(x for x in range(k) if rng.random() < 0.5)
            sizes = [1 if x in a2 else rng.randint(1, 2) for x in range(k)]
            inners.append(random_element(rng, sizes, 1, a2, True))
        else:
            sizes = [rng.randint(1, max_block) for _ in range(k)]
            inners.append(random_element(rng, sizes, outer.blocks[t]))
    return outer, inners


def subadditivity_check(samples: int = 1000, seed: int = 0) -> dict:
    """``|z| - |S| <= (|w| - |T|) + sum_t (|v_t| - |S_t|)`` for ``z = w o (v_t)``."""
    rng = random.Random(seed)
    violations, tight = [], 0
    for _ in range(samples):
        outer, inners = random_composition(rng)
        z = compose(outer, inners)
        lhs = filtration_level(z)
        rhs = filtration_level(outer) + sum(filtration_level(v) for v in inners)
        tight += lhs == rhs
        if lhs > rhs:
            violations.append({"outer": outer.to_json(), "inners": [v.to_json() for v in inners]})
    return {"samples": samples, "seed": seed, "violations": len(violations), "tight": tight,
            "examples": violations[:5], "ok": not violations}
