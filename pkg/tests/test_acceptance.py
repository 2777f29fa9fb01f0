"""One line per acceptance criterion, at the stated tolerances and time limits."""

import time
from math import comb

import pytest

from nestedhilb.bottklw import cohomology_tables, degree_formula, klw_degree
from nestedhilb.deform import cleave_family, cleave_pair, plane_ring, reducible_search
from nestedhilb.exactpoly import GF
from nestedhilb.groebner import hilbert_of_monomials
from nestedhilb.nestcore import (build_setup, hilbert_comparison, ideal_I_closed_form, ideal_I_division, ideal_L,
                                 intermediate_initial_check, jordan_sweep_f2, jordan_sweep_generic, oracle_sweep,
                                 tangent_dim, verify_claimed_gb, verify_initial)
from nestedhilb.srcomplex import c_facets, delta_complex, reisner_check, verify_counts


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
        in_time = limit is None or elapsed < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        budget = f" (limit {limit:.0f} s)" if limit else ""
        with capsys.disabled():
            print(f"\n[{verdict}] criterion {number:2d}: {title}; {elapsed:.2f} s{budget}. {detail}".rstrip())
        assert ok, detail
        assert in_time, f"took {elapsed:.1f} s"
    return emit


def formula(n):
    return (n - 1) * n * (n + 1) * (3 * n - 2) // 12


def test_criterion_01_facet_counts(report):
    start = time.perf_counter()
    stated = [2, 14, 50, 130, 280, 532, 920]
    totals, problems = [], []
    for n in range(2, 9):
        facets = c_facets(n).facets
        rep = verify_counts(n)
        totals.append(len(facets))
        if len(facets) != formula(n):
            problems.append(f"n={n}: {len(facets)} vs formula {formula(n)}")
        if any(len(c) != 4 for c in facets):
            problems.append(f"n={n}: a c-facet is not of size 4")
        if rep["last_column"] != (n - 1) ** 2 * n:
            problems.append(f"n={n}: last column {rep['last_column']}")
    for n, (got, want) in enumerate(zip(totals, stated), start=2):
        if got != want:
            problems.append(f"n={n}: {got} vs listed {want}")
    elapsed = time.perf_counter() - start
    report(1, "c-facet counts and last columns for n=2..8", not problems, elapsed, 60,
           f"totals {totals}; " + ("; ".join(problems) or "all match"))


def test_criterion_02_groebner(report):
    start = time.perf_counter()
    small = [verify_initial(build_setup(n)).equal for n in (2, 3)]
    mid = time.perf_counter()
    claimed = verify_claimed_gb(build_setup(4))
    end = time.perf_counter()
    ok = all(small) and claimed.groebner and claimed.lm_ideal_is_K and (mid - start) < 30
    report(2, "in(J)=K at n=2,3 and the claimed basis at n=4", ok, end - start, 600,
           f"n=2,3 {small} in {mid - start:.2f} s; n=4 groebner={claimed.groebner}, lm=K {claimed.lm_ideal_is_K}, "
           f"{claimed.pairs_checked} pairs")


def test_criterion_03_route_equivalence(report):
    start = time.perf_counter()
    bad = []
    for n in range(2, 7):
        s = build_setup(n)
        a, b = ideal_I_division(s), ideal_I_closed_form(s)
        if list(a.f) != list(b.f) or list(a.F) != list(b.F):
            bad.append(n)
    report(3, "division route equals closed-form minors for n=2..6", not bad, time.perf_counter() - start, 60,
           f"mismatch at {bad}" if bad else "")


def test_criterion_04_degree_triple(report):
    start = time.perf_counter()
    rows, ok = [], True
    for n in range(4, 9):
        s = build_setup(n)
        mult = hilbert_of_monomials(list(s.k_monomials().values()), s.ring_A.nvars).multiplicity
        facets = len(c_facets(n).facets)
        degree = klw_degree(n)
        rows.append(f"n={n}: {degree}/{mult}/{facets}")
        ok &= degree == mult == facets == formula(n) == degree_formula(n)
    report(4, "klw degree = multiplicity of K = c-facet count for n=4..8", ok, time.perf_counter() - start, 300,
           ", ".join(rows))


def stated_table(n):
    c2 = comb(n, 2)
    certified = {(0, 0): 1, (n - 1, n - 2): 1 + n, (n, n - 1): 1, (n + 1, n - 1): n,
                 (2 * n - 2, 2 * n - 4): n + c2, (2 * n, 2 * n - 3): n + c2, (2 * n + 1, 2 * n - 4): c2}
    tagged = {(2 * n - 1, 2 * n - 3): 1, (2 * n - 1, 2 * n - 4): c2}
    return certified, tagged


def test_criterion_05_cohomology_tables(report):
    start = time.perf_counter()
    problems = []
    for n in range(4, 9):
        table = cohomology_tables(n)
        got = table.certified()
        certified, tagged = stated_table(n)
        for pq, value in certified.items():
            if got.get(pq) != value:
                problems.append(f"n={n} {pq}: {got.get(pq, 0)} vs {value}")
        for pq, value in tagged.items():
            if got.get(pq) != value or pq not in table.tagged():
                problems.append(f"n={n} {pq}: {got.get(pq, 0)} tagged={pq in table.tagged()} vs {value} tagged")
        extra = set(got) - set(certified) - set(tagged)
        untagged_extra = [pq for pq in extra if pq not in table.tagged()]
        if untagged_extra:
            problems.append(f"n={n}: unexpected nonzero {sorted(untagged_extra)}")
    report(5, "cohomology tables for n=4..8", not problems, time.perf_counter() - start, None,
           "; ".join(problems[:4]) or "all entries match")


def test_criterion_06_oracles(report):
    start = time.perf_counter()
    F = GF(32003)
    sweeps = [oracle_sweep(4, 1000, 0, F), oracle_sweep(5, 1000, 0, F), jordan_sweep_f2(4), jordan_sweep_generic(4, F)]
    mismatches = sum(len(s.mismatches) for s in sweeps)
    report(6, "fiber membership = rank conditions (n=4,5 random; n=4 Jordan types)", mismatches == 0,
           time.perf_counter() - start, 120, f"{sum(s.samples for s in sweeps)} samples, {mismatches} mismatches")


def test_criterion_07_tangent_dimensions(report):
    start = time.perf_counter()
    R = plane_ring()
    P = lambda *e: [R.parse(g) for g in e]  # noqa: E731
    got = {"(x2,y2)>(x,y2)": tangent_dim(P("x^2", "y^2"), P("x", "y^2"))}
    for r in (3, 4, 5):
        got[f"(x,y{r})>(x,y2)"] = tangent_dim(P("x", f"y^{r}"), P("x", "y^2"))
    got["m2>m"] = tangent_dim(P("x^2", "x*y", "y^2"), P("x", "y"))
    ok = got["(x2,y2)>(x,y2)"] == 8 and all(got[f"(x,y{r})>(x,y2)"] == 2 * r for r in (3, 4, 5)) and got["m2>m"] > 6
    report(7, "tangent dimensions of nested pairs", ok, time.perf_counter() - start, 30, str(got))


def test_criterion_08_hilbert_functions(report):
    start = time.perf_counter()
    results = {n: hilbert_comparison(build_setup(n), 2 * n)["equal"] for n in (2, 3)}
    report(8, "Hilbert function of J equals that of K to degree 2n, n=2,3", all(results.values()),
           time.perf_counter() - start, None, str(results))


def test_criterion_09_intermediate(report):
    start = time.perf_counter()
    results = {}
    for n in (2, 3):
        s = build_setup(n)
        L = ideal_L(s)
        results[n] = [intermediate_initial_check(s, j, L).ok for j in (1, 2, 3, 4)]
    ok = all(all(v) for v in results.values())
    report(9, "intermediate initial ideals for n=2,3 and j=1..4", ok, time.perf_counter() - start, 300, str(results))


def test_criterion_10_cleaving(report):
    start = time.perf_counter()
    R = plane_ring()
    P = lambda *e: [R.parse(g) for g in e]  # noqa: E731
    families = {r: cleave_family(P("x", f"y^{r}"), R.parse("x"), R.parse("y")).ok for r in range(2, 6)}
    curvilinear = cleave_pair(P("x", "y^3"), P("x", "y^2"), samples=(0, 1, 2))
    square = cleave_pair(P("x^2", "x*y", "y^2"), P("x", "y^2"), samples=(0, 1, 2))
    pinned = (curvilinear.smaller.to_strings() == ["x", "y^2 - y*t"]
              and square.larger.to_strings() == ["x^2", "x*y - x*t", "y^2 - y*t"])
    ok = all(families.values()) and curvilinear.ok and square.ok and pinned and len(square.inclusion) == 3
    report(10, "cleaving families and the two pinned pairs", ok, time.perf_counter() - start, None,
           f"families {families}; pairs {curvilinear.case}, {square.case}")


def test_criterion_11_reducible_search(report):
    start = time.perf_counter()
    w = reducible_search(5)
    ok = w.r == 19 and w.dim_grassmannians == 363 and w.bound == 361
    report(11, "reducibility search at d=5", ok, time.perf_counter() - start, 1,
           f"r={w.r}, dim={w.dim_grassmannians}, r^2={w.bound}")


def test_criterion_12_homology(report):
    start = time.perf_counter()
    rational = {n: reisner_check(delta_complex(n), 0)["cohen_macaulay"] for n in (2, 3)}
    positive = {(n, p): reisner_check(delta_complex(n), p)["cohen_macaulay"] for n in (2, 3) for p in (2, 3)}
    report(12, "Reisner criterion over QQ for n=2,3 (char 2, 3 reported only)", all(rational.values()),
           time.perf_counter() - start, 300, f"QQ {rational}; char p {positive}")
