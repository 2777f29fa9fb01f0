import random
from itertools import product

import pytest

from nestedhilb.exactpoly import GF, PolyRing, maximal_minors
from nestedhilb.nestcore import (DEG2_V, _structured_sample, build_setup, check_leading_monomials,
                                 delta_minors, fiber_membership, hom_dim, ideal_I_closed_form, ideal_I_division,
                                 ideal_L, intermediate_initial_check, jordan_matrix, oracle_sweep, rank_conditions,
                                 stack, tangent_dim, verify_claimed_gb, verify_initial)
from nestedhilb.srcomplex import k_generators

PRIME = 32003


# ---------------------------------------------------------------- setup and minors


def test_n1_minors():
    s = build_setup(1)
    T = s.ring_T
    assert delta_minors(s) == [T("-x + z*w_2_1"), T("y + z*w_1_1")]


def test_minors_specialize_to_syzygy_minors():
    for n in (2, 3):
        s = build_setup(n)
        T = s.ring_T
        at_zero = [d.evaluate({"z": 0}) for d in delta_minors(s)]
        assert at_zero == maximal_minors(s.X, T)


def test_syzygy_matrix_has_zero_bottom_row_in_Y():
    s = build_setup(3)
    assert all(e.is_zero() for e in s.Y[-1])


def test_n2_pinned_generators():
    s = build_setup(2)
    A = s.ring_A
    J = ideal_I_division(s)
    assert J.F[2] == A("w_1_1*w_2_2 - w_1_2*w_2_1")
    assert J.f[0] == A("-w_3_1")


def test_n1_generators_take_the_empty_minor():
    # the i = 2 sum has one term whose minor deletes every row and column: its determinant is 1
    s = build_setup(1)
    A = s.ring_A
    for J in (ideal_I_division(s), ideal_I_closed_form(s)):
        assert J.f == [A.zero, A.one]
        assert J.F == [A("w_2_1"), A("w_1_1")]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_routes_agree(n):
    s = build_setup(n)
    a, b = ideal_I_division(s), ideal_I_closed_form(s)
    assert a.f == b.f and a.F == b.F


@pytest.mark.parametrize("n", [2, 3])
def test_generator_degrees(n):
    J = ideal_I_division(build_setup(n))
    assert all(f.total_degree() == n - 1 for f in J.f if not f.is_zero())
    assert all(F.is_homogeneous() and F.total_degree() == n for F in J.F)


def test_L_specializes_to_J():
    s = build_setup(2)
    L = ideal_L(s)
    J = ideal_I_division(s)
    drop = ["v1", "v2", "v3", "v4"]
    assert [g.to_ring(s.ring_A, drop=drop) for g in L.g] == J.f
    assert [G.to_ring(s.ring_A, drop=drop) for G in L.G] == J.F


def test_L_degrees_at_n1():
    s = build_setup(1)
    weights = [DEG2_V.get(nm, 1) for nm in s.ring_B.names]
    degs = {g.weighted_degree(weights) for g in ideal_L(s).generators}
    assert degs <= {0, 1}


# ---------------------------------------------------------------- K and leading monomials


def test_k_generators_small_cases():
    gens = k_generators(2)
    assert gens[("z", 3)] == frozenset({(3, 1)})
    for n in range(2, 7):
        for supp in k_generators(n).values():
            assert all(n + 1 <= i + j <= n + 4 for i, j in supp)


def test_k_generators_at_n5():
    gens = k_generators(5)
    assert gens[("x", 2)] == frozenset({(3, 5), (4, 4), (5, 3), (6, 2)})
    assert gens[("z", 6)] == frozenset({(3, 5), (4, 4), (5, 3), (6, 1)})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_leading_monomials(n):
    rep = check_leading_monomials(build_setup(n))
    assert rep.ok, rep.mismatches
    assert all(max(m) == 1 for m in build_setup(n).k_monomials().values())


@pytest.mark.parametrize("n", [2, 3])
def test_initial_ideal_equals_K(n):
    rep = verify_initial(build_setup(n))
    assert rep.equal


@pytest.mark.parametrize("n", [2, 3])
def test_claimed_basis(n):
    rep = verify_claimed_gb(build_setup(n))
    assert rep.ok


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_intermediate_n2(j):
    rep = intermediate_initial_check(build_setup(2), j)
    assert rep.homogeneous and rep.ok


# ---------------------------------------------------------------- pointwise oracles


def symbolic_fiber(B, p):
    """Every maximal minor of Y + B vanishes mod y^2, with the minors expanded over F_p[y]."""
    ring = PolyRing(["y"], GF(p))
    n = len(B) - 1
    M = [[ring.constant(B[i][j]) + (ring.gen("y") if i == j else ring.zero) for j in range(n)] for i in range(n + 1)]
    return all(all(m[0] >= 2 for m in minor.terms) for minor in maximal_minors(M, ring))


def test_fiber_membership_matches_symbolic_minors():
    field = GF(PRIME)
    for n in (2, 3, 4):
        for k in range(60):
            rng = random.Random(f"sym:{n}:{k}")
            A, a = _structured_sample(n, field, rng)
            B = stack(A, a)
            assert fiber_membership(B, field) == symbolic_fiber(B, PRIME)


def test_fiber_membership_examples():
    field = GF(PRIME)
    for n in (2, 3, 4):
        zero = [[0] * n for _ in range(n + 1)]
        assert fiber_membership(zero, field)
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)] + [[0] * n]
        assert not fiber_membership(ident, field)


def kernel_dim_f2(rows, n):
    count = sum(1 for v in product(range(2), repeat=n) if all(sum(r[k] * v[k] for k in range(n)) % 2 == 0 for r in rows))
    return count.bit_length() - 1


def matmul2(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]


def test_rank_conditions_against_enumeration_over_f2():
    field = GF(2)
    n = 3
    rng = random.Random(5)
    for _ in range(300):
        A = [[rng.randrange(2) for _ in range(n)] for _ in range(n)]
        a = [rng.randrange(2) for _ in range(n)]
        first = kernel_dim_f2(A + [a], n) >= 1
        aA = [sum(a[k] * A[k][j] for k in range(n)) % 2 for j in range(n)]
        second = kernel_dim_f2(matmul2(A, A) + [aA, a], n) >= 2
        assert rank_conditions(A, a, field) == (first and second)


def test_rank_conditions_examples():
    field = GF(PRIME)
    for n in (3, 4):
        rng = random.Random(n)
        zero = [[0] * n for _ in range(n)]
        assert all(rank_conditions(zero, [rng.randrange(PRIME) for _ in range(n)], field) for _ in range(20))
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        assert not rank_conditions(ident, [0] * n, field)
        nil = jordan_matrix([(0, n)], n)
        assert rank_conditions(nil, [0] * n, field)


def test_small_oracle_sweep():
    rep = oracle_sweep(4, samples=150, seed=3)
    assert rep.ok and rep.true_count > 0


# ---------------------------------------------------------------- tangent spaces

R = PolyRing(["x", "y"])


def ideal(text):
    return [R(t) for t in text.split(",")]


def test_classical_tangent_dimensions():
    assert hom_dim(ideal("x, y")) == 2
    assert hom_dim(ideal("x, y^2")) == 4
    assert hom_dim(ideal("x^2, x*y, y^2")) == 6
    assert hom_dim(ideal("x^2, y^2")) == 8  # complete intersection of colength 4


def test_nested_tangent_dimensions():
    assert tangent_dim(ideal("x^2, y^2"), ideal("x, y^2")) == 8
    for r in (3, 4, 5):
        assert tangent_dim(ideal(f"x, y^{r}"), ideal("x, y^2")) == 2 * r
    assert tangent_dim(ideal("x, y"), ideal("x, y")) == 2
    assert tangent_dim(ideal("x^2, x*y, y^2"), ideal("x, y")) > 6


def test_tangent_needs_inclusion():
    with pytest.raises(ArithmeticError):
        tangent_dim(ideal("x, y^2"), ideal("x^2, y"))


def test_tangent_of_reducible_pair_adds_up():
    # two reduced points, nested over one of them: a smooth point of a 4-dimensional space
    assert tangent_dim(ideal("x, y^2 - y"), ideal("x, y")) == 4
    assert tangent_dim(ideal("x, y^2 - y"), ideal("x, y - 1")) == 4
