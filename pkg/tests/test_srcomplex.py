import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from nestedhilb.groebner import hilbert_of_monomials
from nestedhilb.nestcore import build_setup
from nestedhilb.srcomplex import (SimplicialComplex, c_facets, complex_from_squarefree, delta_complex,
                                  facet_count_formula, is_c_face, k_generators, minimal_transversals,
                                  reduced_homology, reisner_check, sd_bijection_check, shift_down, shift_up,
                                  verify_counts, vertex_grid)


def brute_minimal_transversals(n):
    verts = vertex_grid(n)
    supports = list(k_generators(n).values())
    hits = [frozenset(c) for k in range(len(verts) + 1) for c in combinations(verts, k)
            if all(set(c) & s for s in supports)]
    return sorted(sorted(h) for h in hits if not any(o < h for o in hits))


def brute_transversals_by_mask(n):
    verts = vertex_grid(n)
    index = {v: k for k, v in enumerate(verts)}
    edges = [sum(1 << index[v] for v in s) for s in k_generators(n).values()]
    hits = [m for m in range(1 << len(verts)) if all(m & e for e in edges)]
    hitset = set(hits)
    minimal = [m for m in hits if not any((m & ~(1 << k)) in hitset for k in range(len(verts)) if m >> k & 1)]
    return sorted(sorted(verts[k] for k in range(len(verts)) if m >> k & 1) for m in minimal)


def test_c_facets_match_exhaustive_search_n2():
    assert c_facets(2).facets == brute_minimal_transversals(2)


def test_c_facets_match_exhaustive_search_n3():
    assert c_facets(3).facets == brute_transversals_by_mask(3)


def test_pruned_search_agrees_with_full_search():
    for n in (3, 4):
        assert c_facets(n, prune=True).facets == c_facets(n, prune=False).facets


@pytest.mark.parametrize("n", range(2, 8))
def test_counts_follow_formula(n):
    rep = verify_counts(n)
    assert rep["ok"], rep
    assert rep["total"] == (n - 1) * n * (n + 1) * (3 * n - 2) // 12


def test_count_values():
    assert [facet_count_formula(n) for n in range(2, 9)] == [2, 14, 50, 130, 280, 532, 924]
    rep = verify_counts(5)
    assert (rep["total"], rep["last_column"], rep["rectangle"]) == (130, 80, 50)
    rep3 = verify_counts(3)
    assert (rep3["total"], rep3["last_column"], rep3["rectangle"]) == (14, 12, 2)


def test_exactly_one_vertex_on_main_antidiagonal():
    for n in range(2, 6):
        for c in c_facets(n).facets:
            assert sum(1 for i, j in c if i + j == n + 1) == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_shift_down_bijection(n):
    rep = sd_bijection_check(n)
    assert rep["ok"], rep


def test_shift_down_n3_pairs_two_facets():
    rep = sd_bijection_check(3)
    assert rep["facets_small"] == rep["facets_in_rectangle"] == 2


@given(st.sets(st.tuples(st.integers(2, 6), st.integers(1, 4))), st.sets(st.tuples(st.integers(2, 6), st.integers(1, 4))))
def test_shift_is_monotone_and_invertible(a, b):
    if a <= b:
        assert shift_down(a) <= shift_down(b)
    assert shift_up(shift_down(a)) == frozenset(a)


def test_minimal_transversals_small_hypergraph():
    # edges {0,1}, {1,2}: minimal hitting sets {1} and {0,2}
    assert sorted(minimal_transversals([0b011, 0b110], 0b111)) == [0b010, 0b101]


# ---------------------------------------------------------------- complexes


@pytest.mark.parametrize("n", [2, 3, 4])
def test_delta_is_pure_of_codimension_four(n):
    cx = delta_complex(n)
    verts = vertex_grid(n)
    assert cx.dimension == len(verts) - 5
    assert len(cx.facets) == facet_count_formula(n)
    assert all(len(f) == len(verts) - 4 for f in cx.facets)
    complements = {frozenset(verts) - f for f in cx.facets}
    assert complements == {frozenset(c) for c in c_facets(n).facets}


def test_faces_are_exactly_non_c_faces():
    n = 2
    cx = delta_complex(n)
    verts = vertex_grid(n)
    for k in range(len(verts) + 1):
        for face in combinations(verts, k):
            complement = set(verts) - set(face)
            assert cx.is_face(face) == is_c_face(n, complement)


def test_multiplicity_of_K_equals_facet_count():
    for n in (2, 3, 4, 5):
        s = build_setup(n)
        h = hilbert_of_monomials(list(s.k_monomials().values()), s.ring_A.nvars)
        assert h.multiplicity == len(c_facets(n).facets) and h.codimension == 4


def simplex(k):
    return SimplicialComplex(list(range(k)), [frozenset(range(k))])


RP2 = SimplicialComplex(list(range(1, 7)), [frozenset(t) for t in [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]])


def test_homology_of_basic_complexes():
    assert all(b == 0 for b in reduced_homology(simplex(4)).betti.values())
    circle = SimplicialComplex([0, 1, 2], [frozenset(e) for e in [(0, 1), (1, 2), (0, 2)]])
    assert reduced_homology(circle).betti[1] == 1
    two_points = SimplicialComplex([0, 1], [frozenset([0]), frozenset([1])])
    assert reduced_homology(two_points).betti[0] == 1


def test_projective_plane_depends_on_coefficients():
    assert RP2.f_vector() == {-1: 1, 0: 6, 1: 15, 2: 10}
    q = reduced_homology(RP2, 0)
    assert all(b == 0 for b in q.betti.values())
    f2 = reduced_homology(RP2, 2)
    assert (f2.betti[1], f2.betti[2]) == (1, 1)
    z = reduced_homology(RP2, "ZZ")
    assert z.torsion == {1: [2]} and all(b == 0 for b in z.betti.values())
    assert not reisner_check(RP2, 2)["cohen_macaulay"]
    assert reisner_check(RP2, 0)["cohen_macaulay"]


random_complexes = st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=7)


@given(random_complexes, st.sampled_from([0, 2, 3]))
def test_euler_characteristic(facets, char):
    cx = SimplicialComplex(sorted({v for f in facets for v in f}), list({f for f in facets}))
    rep = reduced_homology(cx, char)
    assert rep.euler_from_betti == rep.euler_from_faces


def test_reisner_examples():
    sphere = SimplicialComplex(list(range(4)), [frozenset(c) for c in combinations(range(4), 3)])
    assert reisner_check(sphere)["cohen_macaulay"]
    two_edges = SimplicialComplex(list(range(4)), [frozenset({0, 1}), frozenset({2, 3})])
    assert not reisner_check(two_edges)["cohen_macaulay"]


@pytest.mark.parametrize("n", [2, 3])
def test_delta_is_cohen_macaulay_over_rationals(n):
    rep = reisner_check(delta_complex(n), 0)
    assert rep["cohen_macaulay"] and rep["links_checked"] > 0


def test_stanley_reisner_of_a_cycle():
    # (x0 x2, x1 x3) on four vertices: the square
    cx = complex_from_squarefree([(0, 2), (1, 3)], [0, 1, 2, 3])
    assert sorted(sorted(f) for f in cx.facets) == [[0, 1], [0, 3], [1, 2], [2, 3]]
    rng = random.Random(0)
    assert reduced_homology(cx, rng.choice([0, 2, 3])).betti[1] == 1
