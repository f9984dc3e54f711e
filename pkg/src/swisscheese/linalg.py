"""Sparse exact linear algebra over a :class:`~swisscheese.fields.Field`.

Vectors are dicts ``{index: nonzero scalar}``; matrices are lists of column
vectors. Everything is exact, so ranks are certified over the chosen field.
"""
from __future__ import annotations

from typing import Iterable

from .fields import Field


def axpy(field: Field, y: dict, a, x: dict) -> None:
    """In place ``y += a * x``, dropping zeros."""
    p = field.p
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if p is not None:
            w %= p
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scale(field: Field, a, x: dict) -> dict:
    if not a:
        return {}
    p = field.p
    if p is None:
        return {k: a * v for k, v in x.items()}
    return {k: a * v % p for k, v in x.items()}


def add(field: Field, *terms: tuple) -> dict:
    """Sum of ``coeff * vector`` pairs."""
    out: dict = {}
    for a, x in terms:
        axpy(field, out, a, x)
    return out


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored vector has a distinct leading (maximal) index with leading
    coefficient one. With ``track=True`` every stored vector remembers how it
    was combined from the inserted vectors, which turns membership tests into
    linear solves.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.rows: dict = {}  # lead index -> (vector, combination)
        self.count = 0  # number of inserted vectors, used as combination keys

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict, combo: dict | None = None):
        """Reduce ``v`` against the basis; returns ``(residue, combination)``."""
        v = dict(v)
        combo = dict(combo) if combo is not None else ({} if self.track else None)
        f = self.field
        while v:
            lead = max(v)
            hit = self.rows.get(lead)
            if hit is None:
                break
            a = -v[lead]
            axpy(f, v, a, hit[0])
            if combo is not None:
                axpy(f, combo, a, hit[1])
        return v, combo

    def add(self, v: dict, key=None) -> bool:
        """Insert ``v``; returns True when it enlarged the span."""
        if key is None:
            key = self.count
        self.count += 1
        combo = {key: self.field.one} if self.track else None
        r, combo = self.reduce(v, combo)
        if not r:
            return False
        lead = max(r)
        inv = self.field.inv(r[lead])
        r = scale(self.field, inv, r)
        if combo is not None:
            combo = scale(self.field, inv, combo)
        self.rows[lead] = (r, combo)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: dict) -> dict | None:
        """Coefficients ``x`` with ``sum x_k * inserted_k == v``, or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        r, combo = self.reduce(v, {})
        if r:
            return None
        return scale(self.field, -self.field.one, combo)


def rank(field: Field, columns: Iterable[dict]) -> int:
    ech = Echelon(field)
    for c in columns:
        ech.add(c)
    return len(ech)


def solve(field: Field, columns: list[dict], target: dict) -> dict | None:
    """Some ``x`` with ``sum_k x_k columns[k] == target``, or None if none exists."""
    ech = Echelon(field, track=True)
    for c in columns:
        ech.add(c)
    return ech.express(target)


def nullspace(field: Field, columns: list[dict]) -> list[dict]:
    """Basis of ``{x : sum_k x_k columns[k] = 0}`` as sparse vectors over column indices."""
    ech = Echelon(field, track=True)
    kernel = []
    for k, c in enumerate(columns):
        r, combo = ech.reduce(c, {k: field.one})
        if r:
            ech.add(c, key=k)
        else:
            kernel.append(combo)
    return kernel


def apply(field: Field, columns: list[dict], x: dict) -> dict:
    """Matrix-vector product for a column-list matrix."""
    out: dict = {}
    for k, a in x.items():
        axpy(field, out, a, columns[k])
    return out


def complement(field: Field, subspace: Iterable[dict], ambient: Iterable[dict]) -> list[dict]:
    """Vectors from ``ambient`` whose classes form a basis of ambient / subspace."""
    ech = Echelon(field)
    for v in subspace:
        ech.add(v)
    chosen = []
    for v in ambient:
        if ech.add(v):
            chosen.append(v)
    return chosen
