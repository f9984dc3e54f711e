"""Hochschild cochains, their operations and Hochschild cohomology.

A cochain of arity ``n`` is a multilinear map ``A^n -> A`` stored on basis
tuples: ``values[(i_1, ..., i_n)]`` is the output vector, zero outputs omitted.
It is normalized when it vanishes as soon as one argument is the unit ``e_0``.

Sign conventions::

    (dP)(a_1..a_{n+1}) = a_1 P(a_2..) + sum_i (-1)^i P(.., a_i a_{i+1}, ..) + (-1)^{n+1} P(..) a_{n+1}
    (P cup Q)(a_1..a_{p+q}) = P(a_1..a_p) Q(a_{p+1}..a_{p+q})
    P o Q = sum_i (-1)^{i (q-1)} P o_i Q        (i = number of arguments of P before Q)
    [P, Q] = P o Q - (-1)^{(p-1)(q-1)} Q o P
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import linalg
from .algebras import Algebra
from .errors import ValidationError


@dataclass(eq=False)
class Cochain:
    algebra: Algebra
    arity: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        zero = self.algebra.zero()
        self.values = {tuple(k): tuple(v) for k, v in self.values.items() if tuple(v) != zero}
        if any(len(k) != self.arity for k in self.values):
            raise ValidationError("key length differs from the arity")

    def __call__(self, *args) -> tuple:
        A = self.algebra
        f = A.field
        if len(args) != self.arity:
            raise ValidationError(f"expected {self.arity} arguments")
        out = [f.zero] * A.dim
        for key, val in self.values.items():
            c = f.one
            for x, i in zip(args, key):
                c = c * x[i]
                if not c:
                    break
            if c:
                for k, v in enumerate(val):
                    out[k] += c * v
        return tuple(f.norm(v) for v in out)

    def is_normalized(self) -> bool:
        return all(0 not in k for k in self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.arity == other.arity
            and self.algebra is other.algebra
            and self.values == other.values
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        return combine(((1, self), (1, other)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return combine(((1, self), (-1, other)))

    def scaled(self, c) -> "Cochain":
        A = self.algebra
        c = A.field(c)
        return Cochain(A, self.arity, {k: A.scale(c, v) for k, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def to_json(self) -> dict:
        f = self.algebra.field
        return {
            "arity": self.arity,
            "values": [[list(k), [f.to_json(x) for x in v]] for k, v in sorted(self.values.items())],
        }


def combine(terms: Sequence[tuple]) -> Cochain:
    """Linear combination of cochains of one arity."""
    A = terms[0][1].algebra
    n = terms[0][1].arity
    f = A.field
    acc: dict = {}
    for c, P in terms:
        if P.arity != n:
            raise ValidationError("arity mismatch in linear combination")
        c = f(c)
        for k, v in P.values.items():
            old = acc.get(k)
            new = A.scale(c, v)
            acc[k] = new if old is None else A.add(old, new)
    return Cochain(A, n, acc)


def keys(A: Algebra, n: int, normalized: bool = False):
    lo = 1 if normalized else 0
    return itertools.product(range(lo, A.dim), repeat=n)


def from_function(A: Algebra, n: int, fn: Callable, normalized_keys: bool = False) -> Cochain:
    """Tabulate a multilinear function on basis tuples.

    With ``normalized_keys`` only tuples avoiding the unit are tabulated; use this
    only when the function is known to be normalized.
    """
    e = [A.basis(i) for i in range(A.dim)]
    return Cochain(A, n, {k: fn(*(e[i] for i in k)) for k in keys(A, n, normalized_keys)})


def zero(A: Algebra, n: int) -> Cochain:
    return Cochain(A, n, {})


def unit_cochain(A: Algebra) -> Cochain:
    return Cochain(A, 0, {(): A.one()})


def element(A: Algebra, x) -> Cochain:
    """An algebra element as an arity-zero cochain."""
    return Cochain(A, 0, {(): tuple(x)})


def basis_cochain(A: Algebra, key: tuple, out: int) -> Cochain:
    return Cochain(A, len(key), {key: A.basis(out)})


def random_cochain(A: Algebra, n: int, rng, normalized: bool = False, bound: int = 5) -> Cochain:
    return Cochain(A, n, {k: A.random(rng, bound) for k in keys(A, n, normalized)})


def differential(P: Cochain) -> Cochain:
    A, n = P.algebra, P.arity
    f = A.field

    def dP(*a):
        acc = A.mul(a[0], P(*a[1:]))
        for i in range(1, n + 1):
            term = P(*a[: i - 1], A.mul(a[i - 1], a[i]), *a[i + 1 :])
            acc = A.add(acc, A.scale(f((-1) ** i), term))
        last = A.mul(P(*a[:n]), a[n])
        return A.add(acc, A.scale(f((-1) ** (n + 1)), last))

    return from_function(A, n + 1, dP, normalized_keys=P.is_normalized())


def cup(P: Cochain, Q: Cochain) -> Cochain:
    A, p, q = P.algebra, P.arity, Q.arity
    norm = P.is_normalized() and Q.is_normalized()
    return from_function(A, p + q, lambda *a: A.mul(P(*a[:p]), Q(*a[p:])), norm)


def circ_i(P: Cochain, Q: Cochain, i: int) -> Cochain:
    """Insert ``Q`` as argument ``i`` (0-based) of ``P``."""
    A, p, q = P.algebra, P.arity, Q.arity
    if not 0 <= i < p:
        raise ValidationError("insertion position out of range")
    norm = P.is_normalized() and Q.is_normalized()
    return from_function(A, p + q - 1, lambda *a: P(*a[:i], Q(*a[i : i + q]), *a[i + q :]), norm)


def brace(P: Cochain, Qs: Sequence[Cochain]) -> Cochain:
    """``P{Q_1, ..., Q_k}``: insert the ``Q``'s in order into distinct arguments of ``P``.

    The sign is ``(-1)^{sum_l (q_l - 1) i_l}`` where ``i_l`` counts the arguments
    of ``P`` to the left of ``Q_l``.
    """
    A, p = P.algebra, P.arity
    f = A.field
    k = len(Qs)
    if k == 0:
        return P
    qs = [Q.arity for Q in Qs]
    total = p - k + sum(qs)
    norm = P.is_normalized() and all(Q.is_normalized() for Q in Qs)

    def fn(*a):
        acc = A.zero()
        for slots in itertools.combinations(range(p), k):
            args, pos, sign = [], 0, 0
            for slot in range(p):
                if slot in slots:
                    l = slots.index(slot)
                    args.append(Qs[l](*a[pos : pos + qs[l]]))
                    sign += (qs[l] - 1) * slot
                    pos += qs[l]
                else:
                    args.append(a[pos])
                    pos += 1
            acc = A.add(acc, A.scale(f((-1) ** sign), P(*args)))
        return acc

    return from_function(A, total, fn, norm)


def pre_lie(P: Cochain, Q: Cochain) -> Cochain:
    if P.arity == 0:
        return zero(P.algebra, Q.arity - 1) if Q.arity else zero(P.algebra, 0)
    return brace(P, [Q])


def bracket(P: Cochain, Q: Cochain) -> Cochain:
    p, q = P.arity, Q.arity
    n = p + q - 1
    if n < 0:
        return zero(P.algebra, 0)
    terms = []
    if p:
        terms.append((1, brace(P, [Q])))
    if q:
        terms.append((-((-1) ** ((p - 1) * (q - 1))), brace(Q, [P])))
    if not terms:
        return zero(P.algebra, n)
    return combine(terms)


def contraction(P: Cochain, a) -> tuple:
    """``a * P(1, ..., 1)``: zero on normalized cochains of positive arity."""
    A = P.algebra
    return A.mul(tuple(a), P(*([A.one()] * P.arity)))


# --- matrices of the Hochschild differential --------------------------------------


def cochain_basis(A: Algebra, n: int, normalized: bool) -> list[tuple]:
    return [(k, out) for k in keys(A, n, normalized) for out in range(A.dim)]


def to_vector(P: Cochain, index: dict) -> dict:
    vec = {}
    for k, v in P.values.items():
        for out, c in enumerate(v):
            if c:
                vec[index[(k, out)]] = c
    return vec


def from_vector(A: Algebra, n: int, basis: list, vec: dict) -> Cochain:
    vals: dict = {}
    f = A.field
    for idx, c in vec.items():
        k, out = basis[idx]
        v = list(vals.get(k, A.zero()))
        v[out] = f.norm(v[out] + c)
        vals[k] = tuple(v)
    return Cochain(A, n, vals)


def differential_matrix(A: Algebra, n: int) -> list[dict]:
    """Normalized complex ``C^n -> C^{n+1}``: columns from the cochain-level formula."""
    rows = {b: i for i, b in enumerate(cochain_basis(A, n + 1, True))}
    return [to_vector(differential(basis_cochain(A, k, out)), rows) for k, out in cochain_basis(A, n, True)]


def differential_matrix_full(A: Algebra, n: int) -> list[dict]:
    """Unnormalized complex ``C^n -> C^{n+1}`` assembled term by term from structure constants.

    This is the independent oracle path: it never evaluates a cochain.
    """
    d, f = A.dim, A.field
    tab = A.table
    # products landing on a given basis vector: into[i] = [(x, y, c)] with e_x e_y = c e_i + ...
    into: list[list] = [[] for _ in range(d)]
    for x in range(d):
        for y in range(d):
            for i, c in tab[x][y]:
                into[i].append((x, y, c))
    width = d ** (n + 2)

    def row(key: tuple, out: int) -> int:
        r = 0
        for i in key:
            r = r * d + i
        return r * d + out

    cols = []
    for key in itertools.product(range(d), repeat=n):
        for k in range(d):
            col: dict = {}

            def put(r, c):
                v = f.norm(col.get(r, 0) + c)
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)

            for a1 in range(d):
                for l, c in tab[a1][k]:
                    put(row((a1,) + key, l), c)
            for i in range(1, n + 1):
                s = f((-1) ** i)
                for x, y, c in into[key[i - 1]]:
                    put(row(key[: i - 1] + (x, y) + key[i:], k), s * c)
            s = f((-1) ** (n + 1))
            for last in range(d):
                for l, c in tab[k][last]:
                    put(row(key + (last,), l), s * c)
            cols.append(col)
    assert all(r < width for c in cols for r in c)
    return cols


@dataclass
class HHResult:
    algebra: str
    field: str
    dims: list[int]
    dims_oracle: list[int] | None
    reps: list[list[Cochain]]

    @property
    def agree(self) -> bool:
        return self.dims_oracle is None or self.dims == self.dims_oracle

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "field": self.field,
            "dims": self.dims,
            "dims_oracle": self.dims_oracle,
            "agree": self.agree,
            "representatives": [[P.to_json() for P in reps] for reps in self.reps],
        }


def hh(A: Algebra, n_max: int, oracle: bool = True) -> HHResult:
    """``HH^0..HH^{n_max}`` from normalized cochains, with cocycle representatives.

    With ``oracle`` the dimensions are recomputed from the unnormalized complex.
    """
    f = A.field
    mats = [differential_matrix(A, n) for n in range(n_max + 1)]
    ranks = [linalg.rank(f, m) for m in mats]
    dims, reps = [], []
    for n in range(n_max + 1):
        basis = cochain_basis(A, n, True)
        kernel = linalg.nullspace(f, mats[n])
        image = [] if n == 0 else [c for c in mats[n - 1]]
        chosen = linalg.complement(f, image, kernel)
        dims.append(len(basis) - ranks[n] - (ranks[n - 1] if n else 0))
        if len(chosen) != dims[-1]:
            raise ArithmeticError("representative count disagrees with rank count")
        reps.append([from_vector(A, n, basis, v) for v in chosen])
    dims_oracle = None
    if oracle:
        rk = [linalg.rank(f, differential_matrix_full(A, n)) for n in range(n_max + 1)]
        dims_oracle = [A.dim ** (n + 1) - rk[n] - (rk[n - 1] if n else 0) for n in range(n_max + 1)]
    return HHResult(A.name, f.name, dims, dims_oracle, reps)


def coboundary_witness(D: Cochain) -> Cochain | None:
    """A normalized ``h`` with ``dh = D`` for normalized ``D``, or None."""
    A, n = D.algebra, D.arity
    if not D.is_normalized():
        raise ValidationError("witness search runs in the normalized complex")
    if D.is_zero():
        return zero(A, max(n - 1, 0))
    if n == 0:
        return None
    rows = {b: i for i, b in enumerate(cochain_basis(A, n, True))}
    sol = linalg.solve(A.field, differential_matrix(A, n - 1), to_vector(D, rows))
    if sol is None:
        return None
    return from_vector(A, n - 1, cochain_basis(A, n - 1, True), sol)


def _sign(A: Algebra, e: int):
    return A.field((-1) ** (e % 2))


def verify_hsc2(A: Algebra, max_arity: int = 4, hh_result: HHResult | None = None) -> dict:
    """Check the operations of the Swiss-cheese homology on ``(HH(A), A)``.

    Defects of graded commutativity of cup, the Jacobi identity and the Leibniz
    rule are computed on cocycle representatives and must be coboundaries; every
    witness is verified by applying the differential. The module rule and the
    contraction rule are checked exactly.
    """
    res = hh_result or hh(A, max_arity, oracle=False)
    reps = [(n, P) for n, rs in enumerate(res.reps) for P in rs]
    e = [A.basis(i) for i in range(A.dim)]
    commutative = all(A.mul(x, y) == A.mul(y, x) for x in e for y in e)
    # the contraction multiplies on the left of P(1..1); for noncommutative A the
    # module action could differ on non-central degree-zero values
    report: dict = {"algebra": A.name, "field": A.field.name, "commutative": commutative, "checks": {}}

    def witness(D: Cochain) -> bool:
        h = coboundary_witness(D)
        return h is not None and (D.is_zero() or differential(h) == D)

    one = unit_cochain(A)
    unit_ok = all(cup(one, P) == P and cup(P, one) == P for _, P in reps)
    comm = [
        witness(combine(((1, cup(P, Q)), (-_sign(A, p * q), cup(Q, P)))))
        for (p, P), (q, Q) in itertools.product(reps, repeat=2)
        if p + q <= max_arity
    ]
    jac, leib = [], []
    for (p, P), (q, Q), (r, R) in itertools.product(reps, repeat=3):
        # brackets of two arity-zero cochains have degree -1 and vanish
        if p + q + r - 2 <= max_arity and min(p + q, q + r, p + r) >= 1:
            D = combine(
                (
                    (1, bracket(P, bracket(Q, R))),
                    (-1, bracket(bracket(P, Q), R)),
                    (-_sign(A, (p - 1) * (q - 1)), bracket(Q, bracket(P, R))),
                )
            )
            jac.append(D.is_zero() or witness(D))
        if p + q + r - 1 <= max_arity and min(p + q, p + r) >= 1:
            D = combine(
                (
                    (1, bracket(P, cup(Q, R))),
                    (-1, cup(bracket(P, Q), R)),
                    (-_sign(A, (p - 1) * q), cup(Q, bracket(P, R))),
                )
            )
            leib.append(witness(D))
    report["checks"]["unit"] = unit_ok
    report["checks"]["cup_commutativity"] = {"cases": len(comm), "ok": all(comm)}
    report["checks"]["jacobi"] = {"cases": len(jac), "ok": all(jac)}
    report["checks"]["leibniz"] = {"cases": len(leib), "ok": all(leib)}
    report["checks"]["module_rule"] = module_rule(A, [P.values.get((), A.zero()) for n, P in reps if n == 0])
    report["checks"]["contraction"] = contraction_rule(A, reps)
    report["ok"] = bool(
        unit_ok
        and all(comm)
        and all(jac)
        and all(leib)
        and report["checks"]["module_rule"]["ok"]
        and report["checks"]["contraction"]["ok"]
    )
    return report


def module_rule(A: Algebra, central: list, max_len: int = 3) -> dict:
    """``(u_1 v_1)...(u_n v_n) = (u_1...u_n)(v_1...v_n)`` for central ``u`` and basis ``v``."""
    e = [A.basis(i) for i in range(A.dim)]
    cases, ok = 0, all(A.is_central(z) for z in central)
    for n in range(1, max_len + 1):
        for us in itertools.product(central, repeat=n):
            for vs in itertools.product(e, repeat=n):
                lhs = A.one()
                for x, y in zip(us, vs):
                    lhs = A.mul(lhs, A.mul(x, y))
                U, V = A.one(), A.one()
                for x in us:
                    U = A.mul(U, x)
                for y in vs:
                    V = A.mul(V, y)
                cases += 1
                ok = ok and lhs == A.mul(U, V)
    return {"cases": cases, "ok": ok}


def contraction_rule(A: Algebra, reps: list[tuple[int, Cochain]]) -> dict:
    """Contraction vanishes above degree zero and is multiplication in degree zero."""
    e = [A.basis(i) for i in range(A.dim)]
    cases, ok = 0, True
    for n, P in reps:
        for a in e:
            cases += 1
            got = contraction(P, a)
            if n == 0:
                z = P.values.get((), A.zero())
                ok = ok and got == A.mul(a, z) == A.mul(z, a)
            else:
                ok = ok and got == A.zero()
    return {"cases": cases, "ok": ok}
