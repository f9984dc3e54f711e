import json
import random
from pathlib import Path

import pytest

from swisscheese import algebras, hochschild as hc
from swisscheese.algebras import Algebra, from_products, load_algebra
from swisscheese.errors import ValidationError
from swisscheese.fields import Field

ROOT = Path(__file__).resolve().parent.parent
ALGEBRAS = {
    "dual_numbers": algebras.dual_numbers,
    "group_z2": algebras.group_algebra_z2,
    "m2": algebras.matrix_algebra_2,
    "upper_triangular": algebras.upper_triangular_2,
}


def same_algebra(A: Algebra, B: Algebra) -> bool:
    e = range(A.dim)
    return A.dim == B.dim and all(A.mul(A.basis(i), A.basis(j)) == B.mul(B.basis(i), B.basis(j)) for i in e for j in e)


def multiplication(A):
    return hc.from_function(A, 2, A.mul)


def direct_differential(P):
    """The Hochschild differential evaluated term by term on basis tuples."""
    A, n = P.algebra, P.arity

    def fn(*a):
        out = A.mul(a[0], P(*a[1:]))
        for i in range(1, n + 1):
            inner = a[: i - 1] + (A.mul(a[i - 1], a[i]),) + a[i + 1 :]
            out = A.add(out, A.scale(A.field((-1) ** i), P(*inner)))
        return A.add(out, A.scale(A.field((-1) ** (n + 1)), A.mul(P(*a[:n]), a[n])))

    return hc.from_function(A, n + 1, fn)


def test_non_unit_rejected():
    with pytest.raises(ValidationError):
        # e_1 is the unit here, not e_0
        Algebra("bad", 2, ((((1, 1),), ((0, 1),)), (((0, 1),), ((1, 1),))))


def test_non_associative_rejected():
    # e1 e1 = e2, e1 e2 = 0 but e2 e1 = e1
    with pytest.raises(ValidationError):
        from_products("bad", 3, {(1, 1): {2: 1}, (2, 1): {1: 1}})


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_json_files_match_builtins(name):
    A = load_algebra(str(ROOT / "algebras" / f"{name}.json"))
    assert A.name == name
    assert same_algebra(A, ALGEBRAS[name]())


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_sparse_json_round_trip(name):
    A = ALGEBRAS[name]()
    assert same_algebra(algebras.from_json(json.loads(json.dumps(A.to_json()))), A)


def test_unknown_algebra():
    with pytest.raises(ValidationError):
        load_algebra("no_such_algebra")


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("n", [0, 1, 2])
def test_differential(name, n):
    A = ALGEBRAS[name]()
    rng = random.Random(n)
    P = hc.random_cochain(A, n, rng)
    assert hc.differential(P) == direct_differential(P)
    assert hc.differential(hc.differential(P)).is_zero()


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_differential_is_bracket_with_product(p):
    A = algebras.matrix_algebra_2()
    P = hc.random_cochain(A, p, random.Random(p))
    assert hc.differential(P) == hc.bracket(multiplication(A), P).scaled((-1) ** (p + 1))


@pytest.mark.parametrize("p, q", [(0, 1), (1, 1), (1, 2), (2, 1)])
def test_cup(p, q):
    A = algebras.upper_triangular_2()
    rng = random.Random(10 * p + q)
    P, Q = hc.random_cochain(A, p, rng), hc.random_cochain(A, q, rng)
    direct = hc.from_function(A, p + q, lambda *a: A.mul(P(*a[:p]), Q(*a[p:])))
    assert hc.cup(P, Q) == direct
    lhs = hc.differential(hc.cup(P, Q))
    rhs = hc.cup(hc.differential(P), Q) + hc.cup(P, hc.differential(Q)).scaled((-1) ** p)
    assert lhs == rhs


@pytest.mark.parametrize("p, q, r", [(1, 1, 1), (1, 2, 0), (2, 1, 1)])
def test_chain_level_jacobi(p, q, r):
    A = algebras.dual_numbers()
    rng = random.Random(p + q + r)
    P, Q, R = (hc.random_cochain(A, k, rng) for k in (p, q, r))
    s = (-1) ** ((p - 1) * (q - 1))
    lhs = hc.bracket(P, hc.bracket(Q, R))
    rhs = hc.bracket(hc.bracket(P, Q), R) + hc.bracket(Q, hc.bracket(P, R)).scaled(s)
    assert lhs == rhs


@pytest.mark.parametrize(
    "A, dims",
    [
        (algebras.dual_numbers(), [2, 1, 1, 1, 1]),
        (algebras.truncated_polynomials(3), [3, 2, 2, 2, 2]),
        (algebras.group_algebra_z2(), [2, 0, 0, 0, 0]),
        (algebras.group_algebra_z2(Field(2)), [2, 2, 2, 2, 2]),
        (algebras.upper_triangular_2(), [1, 0, 0, 0, 0]),
    ],
    ids=["dual", "trunc3", "z2_Q", "z2_F2", "upper"],
)
def test_hochschild_cohomology(A, dims):
    r = hc.hh(A, 4)
    assert r.dims == dims == r.dims_oracle
    for n, reps in enumerate(r.reps):
        assert all(hc.differential(P).is_zero() and P.is_normalized() for P in reps)
        assert len(reps) == dims[n]


def test_nonzero_class_has_no_witness():
    A = algebras.dual_numbers()
    (P,) = hc.hh(A, 1).reps[1]
    assert hc.coboundary_witness(P) is None
    Q = hc.random_cochain(A, 1, random.Random(0), normalized=True)
    h = hc.coboundary_witness(hc.differential(Q))
    assert h is not None and hc.differential(h) == hc.differential(Q)


def test_contraction_rule():
    A = algebras.dual_numbers()
    reps = [(n, P) for n, rs in enumerate(hc.hh(A, 2).reps) for P in rs]
    r = hc.contraction_rule(A, reps)
    assert r["ok"] and r["cases"] == 2 * len(reps)


@pytest.mark.parametrize("name, commutative", [("dual_numbers", True), ("m2", False), ("upper_triangular", False)])
def test_hsc2_report(name, commutative):
    r = hc.verify_hsc2(ALGEBRAS[name](), max_arity=3)
    assert r["ok"] and r["commutative"] is commutative
