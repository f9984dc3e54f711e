"""Finite windows of the totalized complexes ``|Se(S)|`` and ``|Seq(tau)|``.

Basis elements are elements of ``Se`` that are nondegenerate in every simplicial
(input) direction. Two treatments of the cosimplicial (output) direction:

``conormalized=True``
    quotient by the images of the cofaces ``d^1 .. d^m``; the basis is the
    elements whose ``Q`` hits every element of ``J`` except possibly its minimum.
    Truncating ``|J| <= J_cut`` is then an exact quasi-isomorphism for every cutoff.
``conormalized=False``
    the unnormalized (Moore) cosimplicial direction; all cofaces are kept and
    only degrees below the top ``J`` level are reliable.

The differential is ``d = d_cos + (-1)^m d_simp`` with
``d_cos = sum_i (-1)^i d^i`` on ``J = [m]`` and ``d_simp`` the Koszul-signed sum of
alternating face sums over the cochain inputs in label order. Degree of an
element is ``m - sum_s (|I_s| - 1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from . import linalg
from .combinat import MonotoneMap, TwoTree
from .errors import WindowError
from .fields import QQ, Field
from .seq import (
    SeqElem,
    act_input,
    act_output,
    class_sequence,
    complexity,
    in_seq_tau,
    is_conormalized,
    is_nondegenerate,
    iter_window,
)


@dataclass
class Window:
    """A finite cochain complex with labelled bases.

    ``diff[d][k]`` is the image of ``labels[d][k]`` as a sparse vector over the
    indices of ``labels[d + 1]``.
    """

    field: Field
    labels: dict[int, list]
    diff: dict[int, list[dict]]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {d: {l: k for k, l in enumerate(ls)} for d, ls in self.labels.items()}

    @property
    def degrees(self) -> list[int]:
        return sorted(d for d, ls in self.labels.items() if ls)

    def dims(self) -> dict[int, int]:
        return {d: len(self.labels[d]) for d in self.degrees}

    def size(self) -> int:
        return sum(len(ls) for ls in self.labels.values())

    def differential_of(self, degree: int, k: int) -> dict:
        return self.diff.get(degree, [{}] * len(self.labels[degree]))[k]

    def ranks(self) -> dict[int, int]:
        return {d: linalg.rank(self.field, self.diff.get(d, [])) for d in self.degrees}

    def cohomology(self) -> dict[int, int]:
        r = self.ranks()
        return {d: len(self.labels[d]) - r[d] - r.get(d - 1, 0) for d in self.degrees}

    def check_d_squared(self) -> bool:
        f = self.field
        for d in self.degrees:
            nxt = self.diff.get(d + 1)
            for col in self.diff.get(d, []):
                if col and nxt is not None and linalg.apply(f, nxt, col):
                    return False
        return True

    def restrict(self, keep: Callable[[Hashable], bool], kind: str) -> "Window":
        """Subcomplex (``kind="sub"``) or quotient by the complement (``kind="quotient"``).

        A subcomplex must be closed under the differential and the complement of
        a quotient must be a subcomplex; violations raise :class:`WindowError`.
        """
        labels = {d: [l for l in ls if keep(l)] for d, ls in self.labels.items()}
        new_index = {d: {l: k for k, l in enumerate(ls)} for d, ls in labels.items()}
        diff = {}
        for d, ls in self.labels.items():
            cols = []
            tgt = self.labels.get(d + 1, [])
            tgt_index = new_index.get(d + 1, {})
            for k, l in enumerate(ls):
                col = self.diff.get(d, [{}] * len(ls))[k]
                inside = keep(l)
                if kind == "sub" and inside:
                    if any(not keep(tgt[r]) for r in col):
                        raise WindowError(f"subcomplex not closed at {l!r}")
                if kind == "quotient" and not inside:
                    if any(keep(tgt[r]) for r in col):
                        raise WindowError(f"quotient by a non-subcomplex at {l!r}")
                if inside:
                    cols.append({tgt_index[tgt[r]]: c for r, c in col.items() if keep(tgt[r])})
            diff[d] = cols
        return Window(self.field, labels, diff, dict(self.meta))

    def to_json(self) -> dict:
        return {
            "dims": self.dims(),
            "cohomology": self.cohomology(),
            "meta": self.meta,
        }


def build_window(
    field: Field,
    basis: Iterable,
    degree: Callable,
    boundary: Callable,
    meta: dict | None = None,
) -> Window:
    """Assemble a window from a basis, a degree function and ``boundary(x) -> {y: c}``.

    Every ``y`` returned by ``boundary`` must be a basis element.
    """
    labels: dict[int, list] = {}
    for x in basis:
        labels.setdefault(degree(x), []).append(x)
    index = {d: {l: k for k, l in enumerate(ls)} for d, ls in labels.items()}
    diff = {}
    for d, ls in labels.items():
        tgt = index.get(d + 1, {})
        cols = []
        for x in ls:
            col = {}
            for y, c in boundary(x).items():
                c = field(c)
                if not c:
                    continue
                if y not in tgt:
                    raise WindowError(f"differential leaves the window: {x!r} -> {y!r}")
                col[tgt[y]] = c
            cols.append(col)
        diff[d] = cols
    for d in list(labels):
        labels.setdefault(d + 1, [])
    return Window(field, labels, diff, meta or {})


def simplex_chains(n: int, field: Field = QQ) -> Window:
    """Normalized chains of the ``n``-simplex in non-positive degrees.

    Degree ``-k`` has the ``(k+1)``-element subsets of ``{0..n}``; the
    differential raises degree by one (alternating face sum).
    """
    basis = [c for k in range(n + 1) for c in itertools.combinations(range(n + 1), k + 1)]
    return build_window(
        field,
        basis,
        lambda c: 1 - len(c),
        lambda c: {c[:i] + c[i + 1 :]: (-1) ** i for i in range(len(c))} if len(c) > 1 else {},
        {"simplex": n},
    )


def boundary_se(x: SeqElem, conormalized: bool, J_cut: int) -> dict:
    """Differential of a basis element, already projected to the window."""
    out: dict = {}

    def put(y, c):
        out[y] = out.get(y, 0) + c
        if not out[y]:
            del out[y]

    m = x.J - 1
    if not x.sc and x.J < J_cut:
        for i in range(m + 2):
            # in the conormalized quotient the images of d^1..d^{m+1} vanish
            if conormalized and i:
                continue
            y = act_output(x, MonotoneMap.coface(x.J, i))
            if conormalized and not is_conormalized(y):
                continue
            put(y, (-1) ** i)
    offset = 0
    for s in range(x.n_inputs):
        if s in x.algebra:
            continue
        n = x.blocks[s]
        if n >= 2:
            for i in range(n):
                y = act_input(x, s, MonotoneMap.coface(n - 1, i))
                if not is_nondegenerate(y) or (conormalized and not is_conormalized(y)):
                    continue
                put(y, (-1) ** (m + offset + i))
        offset += n - 1
    return out


def realize(
    n_inputs: int,
    *,
    algebra=frozenset(),
    sc: bool = False,
    member: Callable[[SeqElem], bool] | None = None,
    J_cut: int = 4,
    conormalized: bool = True,
    max_tokens: int | None = None,
    max_classes: int | None = None,
    field: Field = QQ,
    meta: dict | None = None,
) -> Window:
    """Window of the totalization of a family of subsets of ``Se(S)``.

    ``member`` selects the family (e.g. ``Seq(tau)``); it must be closed under
    faces and cofaces, which is checked while assembling the differential.
    Truncations: ``|J| <= J_cut`` (a quotient), at most ``max_tokens`` tokens and
    at most ``max_classes`` elementary classes (both subcomplexes).
    """
    Js = [1] if sc else range(1, J_cut + 1)
    basis = []
    for J in Js:
        for e in iter_window(
            n_inputs,
            J,
            algebra=algebra,
            sc=sc,
            max_tokens=max_tokens,
            max_classes=max_classes,
            conormalized=conormalized,
        ):
            if member is None or member(e):
                basis.append(e)
    info = {
        "inputs": n_inputs,
        "algebra": sorted(algebra),
        "sc": sc,
        "J_cut": J_cut,
        "conormalized": conormalized,
        "max_tokens": max_tokens,
        "max_classes": max_classes,
    }
    info.update(meta or {})
    return build_window(field, basis, SeqElem.degree, lambda x: boundary_se(x, conormalized, J_cut), info)


def realize_se(n_inputs: int, **kw) -> Window:
    return realize(n_inputs, **kw)


def realize_seq(tau: TwoTree, **kw) -> Window:
    """Window of ``|Seq(tau)|``; inputs are the positions of the source of ``tau``."""
    return realize(
        tau.source,
        algebra=frozenset(tau.algebra_inputs),
        sc=tau.sc,
        member=lambda e: in_seq_tau(e, tau),
        meta={"tree": tau.to_json()},
        **kw,
    )


def filtration_window(w: Window, N: int) -> Window:
    """``F_N``: elements with at most ``N + |S|`` elementary classes (a subcomplex)."""
    bound = N + w.meta["inputs"]
    return w.restrict(lambda e: complexity(e) <= bound, "sub")


def graded_piece(w: Window, N: int) -> Window:
    """``F_N / F_{N-1}``."""
    level = N + w.meta["inputs"]
    sub = w.restrict(lambda e: complexity(e) <= level, "sub")
    return sub.restrict(lambda e: complexity(e) == level, "quotient")


def graded_window(tau: TwoTree, N: int, **kw) -> Window:
    """``F_N / F_{N-1}`` of ``|Seq(tau)|``, generating only the needed elements."""
    w = realize_seq(tau, max_classes=N + tau.source, **kw)
    return w.restrict(lambda e: complexity(e) == N + tau.source, "quotient")


def split_by_class_sequence(w: Window) -> dict[tuple, Window]:
    """Decompose a graded piece by the class sequence of its elements.

    The differential of a graded piece never changes the class sequence, so each
    part is a direct summand; this is checked.
    """
    seqs = {class_sequence(e) for ls in w.labels.values() for e in ls}
    parts = {}
    for sigma in sorted(seqs):
        parts[sigma] = w.restrict(lambda e, s=sigma: class_sequence(e) == s, "sub")
    return parts


def g_basis(w: Window, N: int) -> list[dict]:
    """``G^N = {v in F_N^{-N} : dv in F_{N-1}}`` as vectors over ``w.labels[-N]``."""
    level = N + w.meta["inputs"]
    deg = -N
    labels = w.labels.get(deg, [])
    tgt = w.labels.get(deg + 1, [])
    cols = []
    keep = []
    for k, e in enumerate(labels):
        if complexity(e) > level:
            continue
        keep.append(k)
        col = w.differential_of(deg, k)
        cols.append({r: c for r, c in col.items() if complexity(tgt[r]) == level})
    return [{keep[i]: c for i, c in v.items()} for v in linalg.nullspace(w.field, cols)]


def is_unit_vector(w: Window, vec: dict) -> bool:
    """Whether ``vec`` is supported exactly on the identity elements with coefficients +-1."""
    labels = w.labels[0]
    support = {labels[k] for k in vec}
    if not support:
        return False
    for e in support:
        ident = (
            e.sc
            or e.n_inputs == 0
            or (e.n_inputs == 1 and e.blocks == (e.J,) and e.q == tuple(range(e.J)))
        )
        if not ident:
            return False
    expected = {e for e in labels if e.n_inputs <= 1 and (e.sc or e.n_inputs == 0 or e.q == tuple(range(e.J)))}
    return support == expected and all(c in (w.field(1), w.field(-1)) for c in vec.values())
