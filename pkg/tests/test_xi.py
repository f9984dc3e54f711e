import pytest

from swisscheese.fields import Field
from swisscheese.xi import column_check, theta_quotient, xi_homology, xi_window


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("conormalized", [True, False])
def test_d_squared_zero(k, conormalized):
    assert xi_window(k, J_cut=4, dim_cut=3, conormalized=conormalized).check_d_squared()


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("field", [None, Field(7)])
def test_contractible_in_stable_degrees(k, field):
    r = xi_homology(k, J_cut=4, dim_cut=3, **({"field": field} if field else {}))
    assert r["d_squared_zero"]
    assert r["stable_degrees"]
    for d in r["stable_degrees"]:
        assert r["cohomology"].get(d, 0) == (1 if d == 0 else 0)


@pytest.mark.parametrize("k, m", [(1, 0), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_column_is_a_point(k, m):
    r = column_check(k, m)
    assert r["euler"] == 1
    assert sum(r["cohomology"].values()) == 1


@pytest.mark.parametrize("k", [1, 2])
def test_theta_quotient(k):
    r = theta_quotient(k, J_cut=4)
    assert all(v == 0 for v in r["theta_cohomology"].values())
    assert r["quotient_dims"] == {m: 1 for m in range(4)}
    # alternates between zero and an isomorphism
    assert r["quotient_differential"] == {0: 0, 1: 1, 2: 0}
