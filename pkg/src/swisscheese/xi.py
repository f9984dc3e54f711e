"""The bicomplex ``Xi_k`` of monotone maps out of a concatenation of ``k`` ordinals.

A basis element is ``(sizes, q)``: ordinals of the given nonempty sizes
concatenated in order, and a monotone ``q`` into ``J = [m]`` strictly increasing
on each ordinal (simplicial nondegeneracy). The simplicial direction of
ordinal ``i`` has dimension ``sizes[i] - 1``; the cohomological degree is
``m - sum(sizes[i] - 1)``.

This is a separate, direct implementation: it shares no code with the operad
windows, whose graded pieces it is compared against.
"""
from __future__ import annotations

import itertools

from . import linalg
from .fields import QQ, Field
from .totalization import Window, build_window


def _split(q: tuple, sizes: tuple) -> list[tuple]:
    out, k = [], 0
    for n in sizes:
        out.append(q[k : k + n])
        k += n
    return out


def xi_basis(k: int, J_cut: int, dim_cut: int | None = None, conormalized: bool = True) -> list[tuple]:
    """Basis elements with ``|J| <= J_cut`` and every simplicial dimension ``<= dim_cut``."""
    out = []
    for J in range(1, J_cut + 1):
        top = J if dim_cut is None else min(J, dim_cut + 1)
        for sizes in itertools.product(range(1, top + 1), repeat=k):
            for q in itertools.combinations_with_replacement(range(J), sum(sizes)):
                parts = _split(q, sizes)
                if any(len(set(p)) != len(p) for p in parts):
                    continue
                if conormalized and not set(range(1, J)) <= set(q):
                    continue
                out.append((sizes, q, J))
    return out


def xi_degree(x: tuple) -> int:
    sizes, _, J = x
    return (J - 1) - sum(n - 1 for n in sizes)


def _valid(x: tuple, J_cut: int, dim_cut, conormalized: bool) -> bool:
    sizes, q, J = x
    if J > J_cut or (dim_cut is not None and max(sizes, default=1) - 1 > dim_cut):
        return False
    if any(len(set(p)) != len(p) for p in _split(q, sizes)):
        return False
    return not conormalized or set(range(1, J)) <= set(q)


def xi_boundary(x: tuple, J_cut: int, dim_cut, conormalized: bool) -> dict:
    sizes, q, J = x
    m = J - 1
    out: dict = {}
    for i in range(m + 2):
        y = (sizes, tuple(v if v < i else v + 1 for v in q), J + 1)
        if _valid(y, J_cut, dim_cut, conormalized) and not (conormalized and i):
            out[y] = out.get(y, 0) + (-1) ** i
    start, offset = 0, 0
    for b, n in enumerate(sizes):
        if n >= 2:
            for i in range(n):
                new_sizes = sizes[:b] + (n - 1,) + sizes[b + 1 :]
                y = (new_sizes, q[: start + i] + q[start + i + 1 :], J)
                if _valid(y, J_cut, dim_cut, conormalized):
                    out[y] = out.get(y, 0) + (-1) ** (m + offset + i)
        start += n
        offset += n - 1
    return {y: c for y, c in out.items() if c}


def xi_window(k: int, J_cut: int = 5, dim_cut: int | None = 4, conormalized: bool = True, field: Field = QQ) -> Window:
    """Window of ``|Xi_k|`` (the cutoffs are the ``|J|`` cutoff and the simplicial dimension cap)."""
    basis = xi_basis(k, J_cut, dim_cut, conormalized)
    meta = {"k": k, "J_cut": J_cut, "dim_cut": dim_cut, "conormalized": conormalized}
    return build_window(field, basis, xi_degree, lambda x: xi_boundary(x, J_cut, dim_cut, conormalized), meta)


def xi_homology(k: int, J_cut: int = 5, dim_cut: int | None = 4, conormalized: bool = True, field: Field = QQ) -> dict:
    """Cohomology of the window at the cutoffs and at the cutoffs plus one.

    The stable range is every degree where both agree; in the unnormalized mode
    the top ``J`` level is excluded as it is never reliable.
    """
    a = xi_window(k, J_cut, dim_cut, conormalized, field)
    b = xi_window(k, J_cut + 1, None if dim_cut is None else dim_cut + 1, conormalized, field)
    ha, hb = a.cohomology(), b.cohomology()
    top = J_cut - 1
    degrees = sorted(set(ha) | set(hb))
    stable = [d for d in degrees if ha.get(d, 0) == hb.get(d, 0) and (conormalized or d < top)]
    return {
        "k": k,
        "cutoffs": {"J": J_cut, "simplicial_dim": dim_cut},
        "conormalized": conormalized,
        "cohomology": ha,
        "cohomology_next": hb,
        "stable_degrees": stable,
        "d_squared_zero": a.check_d_squared() and b.check_d_squared(),
    }


def column_check(k: int, m: int, field: Field = QQ) -> dict:
    """Column ``J = [m]`` of the unnormalized complex: the chains of a stretched simplex.

    Returns its cohomology (a point: one class in simplicial degree zero) and
    Euler characteristic (one).
    """
    J = m + 1
    basis = [x for x in xi_basis(k, J, None, False) if x[2] == J]
    w = build_window(
        field,
        basis,
        xi_degree,
        lambda x: {y: c for y, c in xi_boundary(x, J, None, False).items() if y[2] == J},
    )
    h = w.cohomology()
    euler = sum((-1) ** (m - d) * n for d, n in w.dims().items())
    return {"cohomology": h, "euler": euler}


def theta_quotient(k: int, J_cut: int = 5, field: Field = QQ) -> dict:
    """The acyclic subcomplex ``Theta`` and the quotient ``|Xi_k| / Theta`` (unnormalized mode).

    ``Theta`` is spanned by every element of negative simplicial degree together
    with the simplicial boundaries of simplicial degree ``-1``. The quotient has
    one class for each ``m`` and differential alternating between zero and the
    identity.
    """
    w = xi_window(k, J_cut, None, False, field)
    f = field

    def sdeg(x):
        return -sum(n - 1 for n in x[0])

    # simplicial boundaries from simplicial degree -1 into degree 0, split by m
    quotient_dims, classes = {}, {}
    for m in range(J_cut):
        deg = m
        zero = [x for x in w.labels.get(deg, []) if sdeg(x) == 0 and x[2] == m + 1]
        idx = {x: i for i, x in enumerate(zero)}
        images = []
        for x in w.labels.get(deg - 1, []):
            if sdeg(x) == -1 and x[2] == m + 1:
                simp = {y: c for y, c in xi_boundary(x, J_cut, None, False).items() if y[2] == m + 1}
                images.append({idx[y]: f(c) for y, c in simp.items()})
        ech = linalg.Echelon(f)
        for v in images:
            ech.add(v)
        quotient_dims[m] = len(zero) - len(ech)
        classes[m] = (zero, idx, ech)
    # induced differential between consecutive quotient classes
    maps = {}
    for m in range(J_cut - 1):
        zero, idx, ech = classes[m]
        nzero, nidx, nech = classes[m + 1]
        rep = next(i for i in range(len(zero)) if not ech.contains({i: f.one}))
        x = zero[rep]
        img = {nidx[y]: f(c) for y, c in xi_boundary(x, J_cut, None, False).items() if y in nidx}
        target = next(i for i in range(len(nzero)) if not nech.contains({i: f.one}))
        # img = c * [target] modulo the boundaries
        for c in (f(0), f(1), f(-1)):
            diff = linalg.add(f, (1, img), (-c, {target: f.one}))
            if nech.contains(diff):
                maps[m] = int(c) if f.p is None else (c if c <= 1 else c - f.p)
                break
        else:
            maps[m] = None
    theta_h = _theta_cohomology(w, sdeg, f)
    return {
        "k": k,
        "J_cut": J_cut,
        "quotient_dims": quotient_dims,
        "quotient_differential": maps,
        "theta_cohomology": theta_h,
    }


def _theta_cohomology(w: Window, sdeg, f: Field) -> dict:
    """Cohomology of ``Theta`` computed from explicit spanning vectors in each degree."""
    spans: dict[int, list[dict]] = {}
    for d in w.degrees:
        vecs = []
        for k, x in enumerate(w.labels[d]):
            if sdeg(x) < 0:
                vecs.append({k: f.one})
        for k, x in enumerate(w.labels.get(d - 1, [])):
            if sdeg(x) == -1:
                simp = {
                    w.index[d][y]: f(c)
                    for y, c in xi_boundary(x, w.meta["J_cut"], None, False).items()
                    if y[2] == x[2] and sdeg(y) == 0
                }
                if simp:
                    vecs.append(simp)
        ech = linalg.Echelon(f)
        spans[d] = [v for v in vecs if ech.add(v)]
    # rank of d restricted to Theta, with image checked to stay inside Theta
    out = {}
    ranks = {}
    for d in w.degrees:
        images = [linalg.apply(f, w.diff.get(d, []), v) for v in spans[d]]
        inside = linalg.Echelon(f)
        for v in spans.get(d + 1, []):
            inside.add(v)
        if not all(inside.contains(v) for v in images):
            raise ArithmeticError("Theta is not a subcomplex")
        ranks[d] = linalg.rank(f, images)
    for d in w.degrees:
        out[d] = len(spans[d]) - ranks[d] - ranks.get(d - 1, 0)
    return out
