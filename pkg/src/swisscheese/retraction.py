"""Numerical checks of the explicit deformation retractions of the spaces
``X_sigma`` and ``Phi_sigma(tau)`` onto a line and a point.

Configurations are dicts ``{label: (x, y)}`` of floats. Equalities are tested
with an absolute tolerance; strict inequalities are tested strictly.

``X_sigma`` is retracted in stages along the order ``<_sigma`` on labels,
written ``1..n`` here:

``h`` (stage ``k``)
    slides ``y_{k+1}`` down to ``min(y_{k+1}, .., y_n)``; ``Y_k -> Z_k``.
``h_Z`` (stage ``k``)
    translates ``y_{k+2}, .., y_n`` so that their minimum is ``y_{k+1} + 1``;
    ``Z_k -> Y_{k+1}``.
``H``
    moves every cochain point horizontally to ``x = rank among cochain labels``;
    ``Y_n -> L``, a line parametrized by ``y_1``.

``Phi_sigma(tau)`` is retracted along the order of ``tau``:

``f`` (stage ``k``)
    ``y_i -> (1-t) y_i + t (k+1 + y_i - y_{k+1})`` for ``i > k``; ``F_k -> F_{k+1}``.
``g`` (stage ``k``)
    the same on column positions ``z_l``; ``G_k -> G_{k+1}``, ending at one point.
    For SC trees the algebra column sits at ``z = 0`` and is never moved, so
    stages start at column ``1``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .combinat import TwoTree
from .dsets import nested_pairs
from .errors import ValidationError
from .posets import build_J_sigma, fn_cell

TOL = 1e-9
Config = dict


def _eq(a: float, b: float, tol: float = TOL) -> bool:
    return abs(a - b) <= tol


def same_config(c1: Config, c2: Config, tol: float = TOL) -> bool:
    return c1.keys() == c2.keys() and all(
        _eq(c1[a][0], c2[a][0], tol) and _eq(c1[a][1], c2[a][1], tol) for a in c1
    )


def is_configuration(c: Config, tol: float = TOL) -> bool:
    """Pairwise distinct points."""
    pts = list(c.values())
    return all(
        not (_eq(p[0], q[0], tol) and _eq(p[1], q[1], tol)) for p, q in itertools.combinations(pts, 2)
    )


class XSigma:
    """The space ``X_sigma`` for a surjection ``sigma`` given as a sequence of labels."""

    def __init__(self, sigma: Sequence[Hashable], sc: bool = False, algebra: Sequence = ()):
        self.sigma = tuple(sigma)
        self.sc = sc
        self.algebra = frozenset(algebra)
        if self.algebra and not sc:
            raise ValidationError("algebra labels need an SC label set")
        self.labels = tuple(sorted(set(sigma), key=self.sigma.index))
        pos = {a: [i for i, b in enumerate(self.sigma) if b == a] for a in self.labels}
        # nested[s, t]: some value s sits between two values t
        self.nested = set(nested_pairs(self.sigma))
        self.before = {
            (s, t) for s in self.labels for t in self.labels if s != t and pos[s][-1] < pos[t][0]
        }
        self.order = self._sigma_order()
        self.cochain_order = tuple(a for a in self.order if a not in self.algebra)
        self.poset = build_J_sigma(self.sigma, sc, tuple(self.algebra))
        self.cells = set(self.poset.objects)

    def _sigma_order(self) -> tuple:
        less = self.nested | self.before
        order = sorted(self.labels, key=lambda s: sum((t, s) in less for t in self.labels))
        for s, t in itertools.combinations(order, 2):
            if (s, t) not in less or (t, s) in less:
                raise ValidationError("sigma does not induce a total order on its labels")
        return tuple(order)

    def contains(self, c: Config, tol: float = TOL) -> bool:
        """Conditions on nesting (strictly left), on same vertical lines (bottom to
        top in the order of first occurrence) and, for SC sets, on the boundary line."""
        if set(c) != set(self.labels) or not is_configuration(c, tol):
            return False
        for s, t in self.nested:
            if not c[s][0] < c[t][0] - tol:
                return False
        for s, t in self.before:
            if _eq(c[s][0], c[t][0], tol) and not c[s][1] < c[t][1]:
                return False
        if self.sc:
            for a in self.labels:
                if a in self.algebra and not _eq(c[a][0], 0.0, tol):
                    return False
                if a not in self.algebra and not c[a][0] > tol:
                    return False
        return True

    def contains_by_cells(self, c: Config, tol: float = TOL) -> bool:
        """Membership as a union of Fox-Neuwirth cells of the objects of ``J(sigma)``."""
        cell = fn_cell(c, self.sc, tol)
        return cell is not None and cell in self.cells and set(cell[0][: len(self.algebra)]) == self.algebra

    def sample(self, rng: random.Random) -> Config:
        """A random point of a uniformly chosen cell."""
        return sample_cell(rng.choice(self.poset.objects), rng)

    # stage spaces, ``k`` counts labels in sigma order

    def _y(self, c, s):  # 1-based
        return c[self.order[s - 1]][1]

    def mu(self, c: Config, k: int) -> float:
        return min(self._y(c, s) for s in range(k, len(self.order) + 1))

    def in_Y(self, c: Config, k: int, tol: float = TOL) -> bool:
        if not self.contains(c, tol):
            return False
        if any(not _eq(self._y(c, s), self._y(c, 1) + s - 1, tol) for s in range(1, k + 1)):
            return False
        if 1 <= k < len(self.order):
            return _eq(self.mu(c, k + 1), self._y(c, k) + 1, tol)
        return True

    def in_Z(self, c: Config, k: int, tol: float = TOL) -> bool:
        return self.in_Y(c, k, tol) and _eq(self._y(c, k + 1), self.mu(c, k + 1), tol)

    def in_L(self, c: Config, tol: float = TOL) -> bool:
        return same_config(c, self.line_point(self._y(c, 1)), tol) and self.contains(c, tol)

    def line_point(self, y1: float) -> Config:
        rank = {a: i + 1 for i, a in enumerate(self.cochain_order)}
        out = {}
        for s, a in enumerate(self.order):
            x = 0.0 if a in self.algebra else float(rank[a])
            out[a] = (x, y1 + s)
        return out

    # the retractions

    def h(self, c: Config, k: int, t: float) -> Config:
        a = self.order[k]
        out = dict(c)
        out[a] = (c[a][0], (1 - t) * c[a][1] + t * self.mu(c, k + 1))
        return out

    def h_Z(self, c: Config, k: int, t: float) -> Config:
        n = len(self.order)
        if k + 2 > n:
            return dict(c)
        shift = t * (self._y(c, k + 1) + 1 - self.mu(c, k + 2))
        out = dict(c)
        for s in range(k + 2, n + 1):
            a = self.order[s - 1]
            out[a] = (c[a][0], c[a][1] + shift)
        return out

    def H(self, c: Config, t: float) -> Config:
        rank = {a: i + 1 for i, a in enumerate(self.cochain_order)}
        out = {}
        for a, (x, y) in c.items():
            out[a] = (0.0, y) if a in self.algebra else ((1 - t) * x + t * rank[a], y)
        return out


def sample_cell(obj, rng: random.Random, spread: float = 3.0) -> Config:
    """A random point of the Fox-Neuwirth cell of an object ``(order, tree)``."""
    order, tree = obj
    base = 1 if tree.sc else 0
    n_cols = tree.target - base
    xs = sorted(rng.uniform(0.05, spread) for _ in range(n_cols))
    while any(b - a < 1e-3 for a, b in zip(xs, xs[1:])):
        xs = sorted(rng.uniform(0.05, spread) for _ in range(n_cols))
    if not tree.sc:
        xs = [x - spread / 2 for x in xs]
    out = {}
    for t in range(tree.target):
        col = [order[s] for s in tree.fiber(t)]
        ys = sorted(rng.uniform(-spread, spread) for _ in col)
        while any(b - a < 1e-3 for a, b in zip(ys, ys[1:])):
            ys = sorted(rng.uniform(-spread, spread) for _ in col)
        x = 0.0 if tree.sc and t == 0 else xs[t - base]
        for a, y in zip(col, ys):
            out[a] = (x, y)
    return out


class PhiSigmaTau:
    """``Phi_sigma(tau)``: the union of the cells of the objects above ``tau`` in ``J(sigma)``."""

    def __init__(self, x_sigma: XSigma, obj):
        self.space = x_sigma
        i = x_sigma.poset.objects.index(obj)
        self.obj = obj
        self.up = [x_sigma.poset.objects[j] for j in sorted(x_sigma.poset.above[i])]
        self.cells = set(self.up)
        self.order, self.tree = obj
        self.sc = obj[1].sc

    def contains(self, c: Config, tol: float = TOL) -> bool:
        cell = fn_cell(c, self.sc, tol)
        return cell is not None and cell in self.cells

    def sample(self, rng: random.Random) -> Config:
        return sample_cell(rng.choice(self.up), rng)

    def sample_F(self, rng: random.Random, k: int, attempts: int = 200) -> Config | None:
        """A random point of ``F_k``: a cell point with the first ``k`` heights pinned."""
        for _ in range(attempts):
            c = sample_cell(rng.choice(self.up), rng)
            for i in range(k):
                a = self.order[i]
                c[a] = (c[a][0], float(i + 1))
            if self.in_F(c, k):
                return c
        return None

    def sample_G(self, rng: random.Random, k: int, attempts: int = 200) -> Config | None:
        """A random point of ``G_k``."""
        first = self._first_column()
        for _ in range(attempts):
            c = self.sample_F(rng, self.tree.source)
            if c is None:
                return None
            zs = {l: self.z(c, l) for l in range(self.tree.target)}
            shift = float(k + 1) - zs[first + k] if first + k < self.tree.target else 0.0
            for s, a in enumerate(self.order):
                l = self.tree(s)
                rank = l + 1 - first
                if l < first:
                    x = c[a][0]
                elif rank <= k:
                    x = float(rank)
                else:
                    # keep the remaining columns to the right of column k
                    x = zs[l] + max(shift, 0.0)
                c[a] = (x, c[a][1])
            if self.in_G(c, k):
                return c
        return None

    def _first_column(self) -> int:
        return 1 if self.sc else 0

    def z(self, c: Config, l: int) -> float:
        s = self.tree.fiber(l)
        return c[self.order[s[0]]][0] if s else 0.0

    def in_F(self, c: Config, k: int, tol: float = TOL) -> bool:
        return self.contains(c, tol) and all(
            _eq(c[self.order[i - 1]][1], float(i), tol) for i in range(1, k + 1)
        )

    def in_G(self, c: Config, k: int, tol: float = TOL) -> bool:
        """``F_n`` with the first ``k`` movable columns at their final positions."""
        if not self.in_F(c, self.tree.source, tol):
            return False
        first = self._first_column()
        return all(_eq(self.z(c, l), float(l + 1 - first), tol) for l in range(first, first + k))

    def f(self, c: Config, k: int, t: float) -> Config:
        out = dict(c)
        y_next = c[self.order[k]][1]
        for i in range(1, self.tree.source + 1):
            a = self.order[i - 1]
            x, y = c[a]
            out[a] = (x, float(i)) if i <= k else (x, (1 - t) * y + t * (k + 1 + y - y_next))
        return out

    def g(self, c: Config, k: int, t: float) -> Config:
        first = self._first_column()
        zs = {l: self.z(c, l) for l in range(self.tree.target)}
        pivot = zs[first + k]
        new = {}
        for l, z in zs.items():
            rank = l + 1 - first
            if l < first:
                new[l] = z
            elif rank <= k:
                new[l] = float(rank)
            else:
                new[l] = (1 - t) * z + t * (k + 1 + z - pivot)
        out = {}
        for s, a in enumerate(self.order):
            out[a] = (new[self.tree(s)], c[a][1])
        return out

    @property
    def n_column_stages(self) -> int:
        return self.tree.target - self._first_column()

    def point(self) -> Config:
        first = self._first_column()
        return {
            a: (float(self.tree(s) + 1 - first) if self.tree(s) >= first else 0.0, float(s + 1))
            for s, a in enumerate(self.order)
        }


@dataclass
class StageCheck:
    name: str
    runs: int = 0
    failures: list = field(default_factory=list)

    def fail(self, reason: str, c: Config, t: float | None = None) -> None:
        if len(self.failures) < 10:
            self.failures.append({"reason": reason, "t": t, "config": {str(a): list(p) for a, p in c.items()}})
        else:
            self.failures.append(None)

    def to_json(self) -> dict:
        return {
            "stage": self.name,
            "runs": self.runs,
            "failures": len(self.failures),
            "examples": [f for f in self.failures if f is not None],
        }


def _check_stage(
    check: StageCheck,
    c: Config,
    move: Callable[[Config, float], Config],
    source: Callable[[Config], bool],
    target: Callable[[Config], bool],
    ts: Sequence[float],
) -> Config:
    """Run one retraction on ``c``; return its endpoint for the next stage."""
    check.runs += 1
    if not source(c):
        check.fail("input not in the source space", c)
        return c
    if not same_config(move(c, 0.0), c):
        check.fail("not the identity at t=0", c, 0.0)
    for t in ts:
        if not source(move(c, t)):
            check.fail("leaves the source space", c, t)
    end = move(c, 1.0)
    if not target(end):
        check.fail("endpoint not in the target space", c, 1.0)
    for t in ts:
        if not same_config(move(end, t), end):
            check.fail("does not fix the target space", end, t)
    return end


def retraction_suite(
    sigma: Sequence[Hashable],
    sc: bool = False,
    algebra: Sequence = (),
    samples: int = 500,
    seed: int = 0,
    n_times: int = 9,
) -> dict:
    """Chain every stage on ``samples`` random points and report per-stage failures.

    Each point of ``X_sigma`` is pushed through ``h, h_Z`` for every ``k`` and then
    ``H``, so every stage runs on the output of the previous one. For
    ``Phi_sigma(tau)``, with ``tau`` a random object of ``J(sigma)`` per sample,
    each stage of ``f`` and ``g`` gets a fresh random point of its own source
    space, so a failing stage does not hide the later ones. Intermediate times are the
    grid ``0, 1/8, .., 1`` plus one random time per stage.
    """
    rng = random.Random(seed)
    X = XSigma(sigma, sc, algebra)
    n = len(X.order)
    grid = [i / (n_times - 1) for i in range(n_times)]
    checks = {"membership": StageCheck("membership")}
    for k in range(n):
        checks[f"h[{k}]"] = StageCheck(f"h[{k}]")
        checks[f"h_Z[{k}]"] = StageCheck(f"h_Z[{k}]")
    checks["H"] = StageCheck("H")
    phis = [PhiSigmaTau(X, obj) for obj in X.poset.objects]
    for k in range(n):
        checks[f"f[{k}]"] = StageCheck(f"f[{k}]")
    for k in range(max(p.n_column_stages for p in phis)):
        checks[f"g[{k}]"] = StageCheck(f"g[{k}]")

    for _ in range(samples):
        c = X.sample(rng)
        m = checks["membership"]
        m.runs += 1
        if X.contains(c) != X.contains_by_cells(c) or not X.contains(c):
            m.fail("membership predicates disagree", c)
        ts = grid + [rng.random()]
        for k in range(n):
            c = _check_stage(
                checks[f"h[{k}]"], c, lambda p, t, k=k: X.h(p, k, t),
                lambda p, k=k: X.in_Y(p, k), lambda p, k=k: X.in_Z(p, k), ts,
            )
            c = _check_stage(
                checks[f"h_Z[{k}]"], c, lambda p, t, k=k: X.h_Z(p, k, t),
                lambda p, k=k: X.in_Z(p, k), lambda p, k=k: X.in_Y(p, k + 1), ts,
            )
        _check_stage(checks["H"], c, X.H, lambda p: X.in_Y(p, n), X.in_L, ts)

        phi = rng.choice(phis)
        for k in range(n):
            c = phi.sample_F(rng, k)
            if c is None:
                continue
            _check_stage(
                checks[f"f[{k}]"], c, lambda p, t, k=k: phi.f(p, k, t),
                lambda p, k=k: phi.in_F(p, k), lambda p, k=k: phi.in_F(p, k + 1), ts,
            )
        for k in range(phi.n_column_stages):
            c = phi.sample_G(rng, k)
            if c is None:
                continue
            end = _check_stage(
                checks[f"g[{k}]"], c, lambda p, t, k=k: phi.g(p, k, t),
                lambda p, k=k: phi.in_G(p, k), lambda p, k=k: phi.in_G(p, k + 1), ts,
            )
            if k == phi.n_column_stages - 1 and not same_config(end, phi.point()):
                checks[f"g[{k}]"].fail("final point is not the expected one", end)

    stages = [ch.to_json() for ch in checks.values()]
    return {
        "sigma": [str(a) for a in sigma],
        "sc": sc,
        "algebra": sorted(str(a) for a in algebra),
        "sigma_order": [str(a) for a in X.order],
        "objects": len(X.poset),
        "samples": samples,
        "seed": seed,
        "tolerance": TOL,
        "stages": stages,
        "ok": all(s["failures"] == 0 for s in stages),
    }


def example_sigma() -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The four-label SC example: labels alpha, beta, gamma, delta with beta on the boundary."""
    return ("alpha", "delta", "gamma", "beta", "gamma", "delta"), ("beta",)
