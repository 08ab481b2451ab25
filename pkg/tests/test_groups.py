import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups.finite import cyclic_group
from qgroups.groups import (BallTooLarge, CayleyOperator, FiniteTableGroup, FreeGroup, GroupSpecError, ZdGroup,
                            ball, builtin_group, builtin_groups, closed_walks, condition5_check, kesten_estimate)
from qgroups.groups.cayley import _generic_ball
from qgroups.groups.kesten import WALK_CAP, walk_growth


def dense_walks(B, length):
    """Closed walks by repeated multiplication with the integer adjacency matrix."""
    M = [[int(x) for x in row] for row in B.dense_matrix()]
    v = [1] + [0] * (B.size - 1)
    for _ in range(length):
        v = [sum(a * b for a, b in zip(row, v)) for row in M]
    return v[0]


def tree_walks(k2, R, length):
    """Closed walks from the root of the k2-regular tree that never pass depth R."""
    f = [1] + [0] * R
    for _ in range(length):
        g = [0] * (R + 1)
        for d, c in enumerate(f):
            if not c:
                continue
            if d == 0:
                if R > 0:
                    g[1] += k2 * c
            else:
                g[d - 1] += c
                if d < R:
                    g[d + 1] += (k2 - 1) * c
        f = g
    return f[0]


# -- balls -----------------------------------------------------------------------


@pytest.mark.parametrize("name, R, size", [("Z", 50, 101), ("F_2", 3, 53), ("Z^2", 2, 13), ("Z^3", 1, 7),
                                           ("F_3", 2, 1 + 6 + 30), ("Z x F_2", 1, 7)])
def test_ball_sizes(name, R, size):
    assert ball(builtin_group(name), R).size == size


def test_free_ball_sphere_sizes():
    assert ball(FreeGroup(2), 4).sphere_sizes == [1, 4, 12, 36, 108]


def test_free_ball_matches_generic_bfs():
    G = FreeGroup(2)
    fast, slow = ball(G, 4), _generic_ball(G, 4, 10**6)
    assert [fast.element(i) for i in range(fast.size)] == slow.elements
    for (s1, d1), (s2, d2) in zip(fast.edges, slow.edges):
        assert sorted(zip(s1.tolist(), d1.tolist())) == sorted(zip(s2.tolist(), d2.tolist()))


def test_ball_edges_are_left_translations():
    G = builtin_group("Z^2 x S_3")
    B = ball(G, 3)
    gens = G.generators()
    for s, (src, dst) in zip(gens, B.edges):
        for i, j in zip(src, dst):
            assert B.element(j) == G.multiply(s, B.element(i))


def test_finite_ball_closes():
    B = ball(builtin_group("S_3"), 10)
    assert B.size == 6 and B.closed
    assert not ball(builtin_group("Z"), 3).closed


def test_ball_cap():
    with pytest.raises(BallTooLarge, match="cap"):
        ball(FreeGroup(2), 12, cap=1000)
    with pytest.raises(BallTooLarge, match="cap"):
        ball(ZdGroup(2), 40, cap=100)
    with pytest.raises(ValueError):
        ball(ZdGroup(1), -1)


@pytest.mark.parametrize("name, R", [("Z^2", 3), ("F_2", 3), ("S_3", 3), ("Z x F_2", 2)])
def test_dense_matrix_symmetric(name, R):
    M = ball(builtin_group(name), R).dense_matrix()
    assert np.array_equal(M, M.T)


def test_operator_matches_dense_matrix():
    B = ball(builtin_group("Z^2"), 4)
    rng = np.random.default_rng(0)
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    op = CayleyOperator(B, c)
    M = B.dense_matrix(c)
    v = rng.normal(size=B.size) + 1j * rng.normal(size=B.size)
    assert np.allclose(op.matvec(v), M @ v)
    assert np.allclose(op.rmatvec(v), M.conj().T @ v)


# -- groups and generating sets -------------------------------------------------------


def test_builtin_amenability_tags():
    tags = {n: e["amenable"] for n, e in builtin_groups().items()}
    assert tags["Z x F_2"] is False
    assert tags["Z^0"] is True
    assert tags["S_3"] is True
    assert tags["F_3"] is False
    assert tags["Z^2 x S_3"] is True


def test_builtin_group_names():
    assert builtin_group("Z^0").generators() == []
    assert len(builtin_group("S_4").generators()) == 3
    assert builtin_group("Z_2").generators() == [1]
    for bad in ("Q", "F_", "S_9", "Z x", "Z_0"):
        with pytest.raises(GroupSpecError):
            builtin_group(bad)


def test_generating_set_checks():
    T = cyclic_group(4)
    with pytest.raises(GroupSpecError, match="repeats"):
        ball(FiniteTableGroup(T, [1, 1, 3]), 2)
    with pytest.raises(GroupSpecError, match="symmetric"):
        ball(FiniteTableGroup(T, [1]), 2)
    with pytest.raises(GroupSpecError, match="identity"):
        ball(FiniteTableGroup(T, [0, 1, 3]), 2)
    with pytest.raises(GroupSpecError):
        FiniteTableGroup(T, [5])


def test_oracle_norms():
    assert builtin_group("F_2").oracle_norm() == pytest.approx(2 * math.sqrt(3))
    assert builtin_group("Z^3").oracle_norm() == 6.0
    assert builtin_group("Z x F_2").oracle_norm() == pytest.approx(2 + 2 * math.sqrt(3))


# -- Lanczos --------------------------------------------------------------------------


def test_lanczos_on_a_path():
    # the ball of radius R in Z is a path on 2R+1 vertices
    for R in (1, 5, 50):
        rep = kesten_estimate(builtin_group("Z"), R)
        assert rep.top_eigenvalue_estimate == pytest.approx(2 * math.cos(math.pi / (2 * R + 2)), abs=1e-8)


@pytest.mark.parametrize("name, R", [("Z^2", 5), ("F_2", 4), ("Z x F_2", 2)])
def test_lanczos_against_dense_eigensolver(name, R):
    B = ball(builtin_group(name), R)
    top = np.linalg.eigvalsh(B.dense_matrix().astype(float))[-1]
    assert kesten_estimate(B.group, R, B=B).top_eigenvalue_estimate == pytest.approx(top, abs=1e-7)


@pytest.mark.parametrize("name, radii", [("F_2", range(1, 8)), ("Z^2", range(1, 12, 2))])
def test_lanczos_monotone_in_radius(name, radii):
    G = builtin_group(name)
    vals = [kesten_estimate(G, R).top_eigenvalue_estimate for R in radii]
    assert all(a <= b + 1e-9 for a, b in zip(vals, vals[1:]))
    assert vals[-1] <= len(G.generators())


def test_finite_group_estimate_is_exact():
    rep = kesten_estimate(builtin_group("S_3"), 3, method="both")
    assert rep.top_eigenvalue_estimate == 2.0
    assert rep.verdict == "co-amenable"


def test_deterministic():
    a = kesten_estimate(builtin_group("F_2"), 5, method="both").to_dict()
    b = kesten_estimate(builtin_group("F_2"), 5, method="both").to_dict()
    assert a == b


# -- closed walks -----------------------------------------------------------------------


def test_walks_on_z_are_central_binomials():
    B = ball(builtin_group("Z"), 20)
    for n in range(0, 21):
        assert closed_walks(B, 2 * n) == math.comb(2 * n, n)
    assert closed_walks(B, 7) == 0


def test_walks_on_free_group_match_tree_counts():
    B = ball(FreeGroup(2), 6)
    # 1, 4, 28, 232, 2092 for the 4-regular tree
    assert [closed_walks(B, 2 * n) for n in range(5)] == [1, 4, 28, 232, 2092]
    for length in (20, 100, 400):
        c = closed_walks(B, length)
        assert c == tree_walks(4, 6, length)
    assert closed_walks(B, 400) > 2**63


@pytest.mark.parametrize("name, R, length", [("Z^2", 3, 10), ("F_2", 3, 12), ("S_3", 3, 9),
                                             ("Z x F_2", 2, 8), ("Z^2 x S_3", 2, 6)])
def test_walks_against_matrix_power(name, R, length):
    B = ball(builtin_group(name), R)
    for n in range(length + 1):
        assert closed_walks(B, n) == dense_walks(B, n)


def test_walks_bigint_on_generic_path():
    # Z^2 spheres are not uniform, so this goes through the object-dtype loop
    B = ball(builtin_group("Z^2"), 2)
    assert closed_walks(B, 60) == dense_walks(B, 60)
    assert closed_walks(B, 60) > 2**63


def test_walk_growth():
    assert walk_growth(0, 10) == 0.0
    assert walk_growth(2**1000, 1000) == pytest.approx(2.0)
    assert walk_growth(3**3000, 1500) == pytest.approx(9.0)


@settings(max_examples=20, deadline=None)
@given(R=st.integers(1, 6), n=st.integers(0, 30))
def test_walk_estimate_below_norm(R, n):
    B = ball(FreeGroup(2), R)
    assert walk_growth(closed_walks(B, 2 * n), 2 * n) <= 2 * math.sqrt(3) + 1e-9


def test_walk_length_validation():
    G = builtin_group("Z")
    with pytest.raises(ValueError, match="even"):
        kesten_estimate(G, 3, method="walks", walk_length=7)
    with pytest.raises(ValueError, match="cap"):
        kesten_estimate(G, 3, method="walks", walk_length=WALK_CAP + 2)
    with pytest.raises(ValueError):
        kesten_estimate(G, 3, method="power")
    assert kesten_estimate(G, 3, method="walks").walk_length == 24


# -- verdicts ------------------------------------------------------------------------------


def test_free_group_verdicts():
    G = builtin_group("F_2")
    assert kesten_estimate(G, 5).verdict == "inconclusive"
    assert kesten_estimate(G, 5, use_builtin_oracle=True).verdict == "not co-amenable"
    rep = kesten_estimate(G, 5, oracle_norm=3.4641016151)
    assert rep.verdict == "not co-amenable" and rep.oracle_used
    with pytest.raises(ValueError, match="exceeds"):
        kesten_estimate(G, 5, oracle_norm=3.0)


def test_amenable_verdicts():
    G = builtin_group("Z^2")
    assert kesten_estimate(G, 10, tol=1e-3).verdict == "inconclusive"
    assert kesten_estimate(G, 40, tol=5e-2).verdict == "co-amenable"
    assert kesten_estimate(builtin_group("Z^0"), 3).verdict == "co-amenable"


# -- condition5 ------------------------------------------------------------------------------


def test_condition5_trivial_lambda():
    G = builtin_group("Z^2")
    rep = condition5_check(G, 3, [1, 0, 0, 0, 0])
    assert rep.status == "confirmed-at-truncation"
    assert rep.lhs == 1.0 and rep.truncated_norm == pytest.approx(1.0)


def test_condition5_amenable_group():
    G = builtin_group("Z^2")
    lam = [0, 1, 1, 1, 1]
    assert condition5_check(G, 6, lam).status == "open"
    rep = condition5_check(G, 40, lam, tol=5e-2)
    assert rep.status == "confirmed-at-truncation"
    assert rep.truncated_norm <= 4 + 1e-9


def test_condition5_matches_dense_norm():
    B = ball(builtin_group("F_2"), 3)
    lam = np.array([0.5, 1j, -1, 2, 0.25])
    M = B.dense_matrix(lam[1:]) + lam[0] * np.eye(B.size)
    expected = np.linalg.norm(M, 2)
    assert condition5_check(B.group, 3, lam, B=B).truncated_norm == pytest.approx(expected, abs=1e-6)


def test_condition5_free_group_violation():
    rep = condition5_check(builtin_group("F_2"), 5, [0, 1, 1, 1, 1], oracle_upper=2 * math.sqrt(3))
    assert rep.status == "violated" and rep.lhs == 4.0
    with pytest.raises(ValueError, match="exceeds"):
        condition5_check(builtin_group("F_2"), 5, [0, 1, 1, 1, 1], oracle_upper=2.0)


def test_condition5_length_checked():
    with pytest.raises(ValueError, match="entries"):
        condition5_check(builtin_group("Z^2"), 2, [1, 1, 1])
    d = condition5_check(builtin_group("Z"), 2, [1j, 1, 1]).to_dict()
    assert d["lam"][0] == [0.0, 1.0]
