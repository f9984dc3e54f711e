"""Finite-dimensional unital associative algebras given by structure constants.

Basis element ``e_0`` is always the unit. Elements are tuples of scalars of
length ``dim``; ``table[i][j]`` is the sparse product ``e_i e_j`` as a tuple of
``(k, coefficient)`` pairs.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ValidationError
from .fields import QQ, Field


@dataclass(frozen=True, eq=False)
class Algebra:
    name: str
    dim: int
    table: tuple
    field: Field = QQ

    def __post_init__(self):
        f, d = self.field, self.dim
        tab = tuple(
            tuple(tuple((k, f(c)) for k, c in self.table[i][j] if f(c)) for j in range(d))
            for i in range(d)
        )
        object.__setattr__(self, "table", tab)
        check_algebra(self)

    def basis(self, i: int) -> tuple:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def one(self) -> tuple:
        return self.basis(0)

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def mul(self, x, y) -> tuple:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in row[j]:
                    out[k] += c * s
        return tuple(f.norm(v) for v in out)

    def add(self, x, y) -> tuple:
        return tuple(self.field.norm(a + b) for a, b in zip(x, y))

    def scale(self, c, x) -> tuple:
        return tuple(self.field.norm(c * a) for a in x)

    def random(self, rng, bound: int = 5) -> tuple:
        return tuple(self.field.random(rng, bound) for _ in range(self.dim))

    def with_field(self, field: Field) -> "Algebra":
        """Reduce rational structure constants into another field."""
        if self.field.p is not None and field != self.field:
            raise ValueError("only rational algebras can change field")
        return Algebra(self.name, self.dim, self.table, field)

    def is_central(self, z) -> bool:
        return all(self.mul(z, self.basis(i)) == self.mul(self.basis(i), z) for i in range(self.dim))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "products": [
                [i, j, {str(k): self.field.to_json(c) for k, c in self.table[i][j]}]
                for i in range(self.dim)
                for j in range(self.dim)
                if self.table[i][j]
            ],
        }


def check_algebra(A: Algebra) -> None:
    """Unit and associativity on basis triples; raises ValidationError."""
    d = A.dim
    if d < 1 or len(A.table) != d or any(len(r) != d for r in A.table):
        raise ValidationError("structure constants must form a dim x dim table")
    e = [A.basis(i) for i in range(d)]
    for i in range(d):
        if A.mul(e[0], e[i]) != e[i] or A.mul(e[i], e[0]) != e[i]:
            raise ValidationError(f"e_0 is not a unit (fails on e_{i})")
    for i in range(d):
        for j in range(d):
            ij = A.mul(e[i], e[j])
            for k in range(d):
                if A.mul(ij, e[k]) != A.mul(e[i], A.mul(e[j], e[k])):
                    raise ValidationError(f"not associative on (e_{i}, e_{j}, e_{k})")


def from_products(name: str, dim: int, products: dict, field: Field = QQ) -> Algebra:
    """``products[(i, j)] = {k: c}``; products with the unit are filled in."""
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        table[0][i] = ((i, 1),)
        table[i][0] = ((i, 1),)
    for (i, j), prod in products.items():
        table[i][j] = tuple(prod.items())
    return Algebra(name, dim, tuple(tuple(r) for r in table), field)


def dual_numbers(field: Field = QQ) -> Algebra:
    """``k[x]/x^2`` with basis ``1, x``."""
    return from_products("dual_numbers", 2, {}, field)


def truncated_polynomials(n: int, field: Field = QQ) -> Algebra:
    """``k[x]/x^n`` with basis ``1, x, ..., x^{n-1}``."""
    prods = {(i, j): {i + j: 1} for i in range(1, n) for j in range(1, n) if i + j < n}
    return from_products(f"k[x]/x^{n}", n, prods, field)


def group_algebra_z2(field: Field = QQ) -> Algebra:
    """``k[Z/2]`` with basis ``1, g``."""
    return from_products("group_z2", 2, {(1, 1): {0: 1}}, field)


def matrix_algebra_2(field: Field = QQ) -> Algebra:
    """``M_2(k)`` with basis ``I, E11, E12, E21``."""
    I, E11, E12, E21 = 0, 1, 2, 3
    prods = {
        (E11, E11): {E11: 1},
        (E11, E12): {E12: 1},
        (E21, E11): {E21: 1},
        (E12, E21): {E11: 1},
        (E21, E12): {I: 1, E11: -1},
    }
    return from_products("m2", 4, prods, field)


def upper_triangular_2(field: Field = QQ) -> Algebra:
    """Upper-triangular 2x2 matrices with basis ``I, E11, E12``."""
    return from_products("upper_triangular", 3, {(1, 1): {1: 1}, (1, 2): {2: 1}}, field)


BUILTIN: dict[str, Callable[[Field], Algebra]] = {
    "dual_numbers": dual_numbers,
    "group_z2": group_algebra_z2,
    "m2": matrix_algebra_2,
    "upper_triangular": upper_triangular_2,
    "k[x]/x^3": lambda f: truncated_polynomials(3, f),
}


def from_json(d: dict, field: Field = QQ, name: str = "algebra") -> Algebra:
    """Either ``{"dim", "table"}`` with ``table[i][j]`` the dense coordinates of
    ``e_i e_j``, or ``{"dim", "products": [[i, j, {k: c}], ...]}`` listing the
    products that do not involve the unit. Coefficients may be strings like ``"1/2"``."""
    if "dim" not in d or ("table" in d) == ("products" in d):
        raise ValidationError('an algebra needs "dim" and exactly one of "table", "products"')
    dim, name = d["dim"], d.get("name", name)
    if "basis" in d and len(d["basis"]) != dim:
        raise ValidationError("basis names do not match dim")
    if "table" in d:
        tab = d["table"]
        if len(tab) != dim or any(len(r) != dim or any(len(c) != dim for c in r) for r in tab):
            raise ValidationError("table must be dim x dim x dim")
        table = tuple(
            tuple(tuple((k, Fraction(c)) for k, c in enumerate(cell) if Fraction(c)) for cell in row)
            for row in tab
        )
        return Algebra(name, dim, table, field)
    prods = {(i, j): {int(k): Fraction(c) for k, c in p.items()} for i, j, p in d["products"]}
    return from_products(name, dim, prods, field)


def load_algebra(spec: str, field: Field = QQ) -> Algebra:
    """A builtin name or a path to a JSON file read by :func:`from_json`."""
    if spec in BUILTIN:
        return BUILTIN[spec](field)
    try:
        with open(spec) as fh:
            d = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"unknown algebra {spec!r}: not a builtin ({', '.join(BUILTIN)}) or a file")
    return from_json(d, field, os.path.splitext(os.path.basename(spec))[0])
