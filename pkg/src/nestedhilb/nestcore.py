"""The generic Hilbert-Burch setup, the ideals L and J, and pointwise oracles.

Ring names used throughout:

* ``A`` = k[w_i_j] for the (n+1) x n generic matrix W,
* ``B`` = A[v1..v4],
* ``T`` = B[x, y, z] with the bigrading below,
* ``AP`` = A[x, y, z], the ring where J is obtained by dividing by (x, y^2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

from .exactpoly import (
    QQ,
    Bigrading,
    Field,
    Polynomial,
    PolyRing,
    TermOrder,
    bigraded_lex,
    determinant,
    grevlex,
    maximal_minors,
    minimize_monomials,
    weighted_revlex,
)
from .groebner import (
    DEFAULT_BUDGET,
    Budget,
    buchberger,
    divide,
    hilbert,
    hilbert_of_monomials,
    initial_ideal,
    is_groebner,
    normal_form,
)
from .linalg import rank, row_echelon, solve_in_span
from .srcomplex import k_generators

V_NAMES = ("v1", "v2", "v3", "v4")
DEG2_V = {"v1": 0, "v2": 1, "v3": 1, "v4": 2}


class ShapeError(ArithmeticError):
    """A division remainder does not have the predicted monomial shape."""


def w_name(i: int, j: int) -> str:
    return f"w_{i}_{j}"


def w_names(n: int) -> list[str]:
    return [w_name(i, j) for i in range(1, n + 2) for j in range(1, n + 1)]


@dataclass
class GenericSetup:
    n: int
    field: Field = QQ

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        n = self.n
        ws = w_names(n)
        self.ring_A = PolyRing(ws, self.field)
        self.ring_B = PolyRing(list(V_NAMES) + ws, self.field)
        self.ring_T = PolyRing(["x", "y", "z"] + list(V_NAMES) + ws, self.field)
        self.ring_AP = PolyRing(["x", "y", "z"] + ws, self.field)
        T = self.ring_T
        deg1 = tuple(1 if nm in ("x", "y", "z") else 0 for nm in T.names)
        deg2 = tuple(0 if nm in ("z", "v1") else 2 if nm == "v4" else 1 for nm in T.names)
        self.bigrading = Bigrading(deg1, deg2)
        self.order_T = bigraded_lex(T, self.bigrading)
        self.order_AP = bigraded_lex(self.ring_AP, Bigrading(
            tuple(1 if nm in ("x", "y", "z") else 0 for nm in self.ring_AP.names),
            tuple(0 if nm == "z" else 1 for nm in self.ring_AP.names)))
        # antidiagonal order: grevlex with w_1_1 < w_1_2 < ... < w_{n+1}_n
        self.order_A = grevlex(self.ring_A, list(reversed(ws)))
        x, y, z = T.gen("x"), T.gen("y"), T.gen("z")
        zero = T.zero
        self.X = [[y if i == j else (-x if i == j + 1 else zero) for j in range(n)] for i in range(n + 1)]
        self.Y = [[y if i == j else zero for j in range(n)] for i in range(n + 1)]
        self.W = [[T.gen(w_name(i + 1, j + 1)) for j in range(n)] for i in range(n + 1)]
        v1, v2, v3, v4 = (T.gen(v) for v in V_NAMES)
        self.gamma1 = x + v1 * y + v2 * z
        self.gamma2 = y**2 + v3 * y * z + v4 * z**2

    def w(self, i: int, j: int) -> Polynomial:
        return self.ring_A.gen(w_name(i, j))

    @cached_property
    def W_A(self) -> list[list[Polynomial]]:
        return [[self.w(i + 1, j + 1) for j in range(self.n)] for i in range(self.n + 1)]

    def k_monomials(self) -> dict:
        """Generators of K as exponent tuples in A, keyed by their labels."""
        index = self.ring_A.index
        out = {}
        for label, supp in k_generators(self.n).items():
            e = [0] * self.ring_A.nvars
            for i, j in supp:
                e[index[w_name(i, j)]] = 1
            out[label] = tuple(e)
        return out


def build_setup(n: int, field: Field = QQ) -> GenericSetup:
    return GenericSetup(n, field)


# ---------------------------------------------------------------- minors and ideals


def delta_minors(setup: GenericSetup) -> list[Polynomial]:
    """Maximal minors of X + zW; entry i-1 deletes row i."""
    T = setup.ring_T
    z = T.gen("z")
    M = [[setup.X[i][j] + z * setup.W[i][j] for j in range(setup.n)] for i in range(setup.n + 1)]
    return maximal_minors(M, T)


def _split_remainder(rem: Polynomial, n: int, target: PolyRing) -> tuple[Polynomial, Polynomial]:
    """Write rem = g*y*z^(n-1) + G*z^n and return (g, G) in ``target``."""
    groups = rem.coefficients_in(["x", "y", "z"], target)
    allowed = {(0, 1, n - 1), (0, 0, n)}
    extra = set(groups) - allowed
    if extra:
        raise ShapeError(f"remainder has unexpected (x,y,z)-exponents {sorted(extra)}")
    return groups.get((0, 1, n - 1), target.zero), groups.get((0, 0, n), target.zero)


@dataclass
class IdealL:
    g: list
    G: list
    quotients: list  # per minor: (alpha_i, beta_i) with Delta_i = alpha*Gamma1 + beta*Gamma2 + remainder

    @property
    def generators(self) -> list[Polynomial]:
        return [p for p in self.g + self.G if not p.is_zero()]


def ideal_L(setup: GenericSetup, deltas: Sequence[Polynomial] | None = None) -> IdealL:
    deltas = deltas if deltas is not None else delta_minors(setup)
    gs, Gs, qs = [], [], []
    for d in deltas:
        res = divide(d, [setup.gamma1, setup.gamma2], setup.order_T)
        g, G = _split_remainder(res.remainder, setup.n, setup.ring_B)
        gs.append(g)
        Gs.append(G)
        qs.append(tuple(res.quotients))
    return IdealL(gs, Gs, qs)


@dataclass
class IdealJ:
    f: list
    F: list

    @property
    def generators(self) -> list[Polynomial]:
        return [p for p in self.f + self.F if not p.is_zero()]


def ideal_I_division(setup: GenericSetup, deltas: Sequence[Polynomial] | None = None) -> IdealJ:
    """(f_i, F_i) from dividing each minor by {x, y^2}."""
    deltas = deltas if deltas is not None else delta_minors(setup)
    AP = setup.ring_AP
    divisors = [AP.gen("x"), AP.gen("y") ** 2]
    fs, Fs = [], []
    for d in deltas:
        res = divide(d.to_ring(AP), divisors, setup.order_AP)
        f, F = _split_remainder(res.remainder, setup.n, setup.ring_A)
        fs.append(f)
        Fs.append(F)
    return IdealJ(fs, Fs)


def _submatrix_det(setup: GenericSetup, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Determinant of W restricted to 1-based ``rows`` and ``cols``."""
    M = [[setup.W_A[i - 1][j - 1] for j in cols] for i in rows]
    return determinant(M, setup.ring_A)


def signed_double_deletion(setup: GenericSetup, i: int, j: int, k: int) -> Polynomial:
    """det of W without rows i, j and column k; antisymmetric in (i, j), zero when i == j."""
    if i == j:
        return setup.ring_A.zero
    n = setup.n
    rows = [r for r in range(1, n + 2) if r not in (i, j)]
    cols = [c for c in range(1, n + 1) if c != k]
    d = _submatrix_det(setup, rows, cols)
    return d if i < j else -d


def ideal_I_closed_form(setup: GenericSetup) -> IdealJ:
    n = setup.n
    Fs = [_submatrix_det(setup, [r for r in range(1, n + 2) if r != i], range(1, n + 1)) for i in range(1, n + 2)]
    fs = []
    for i in range(1, n + 2):
        acc = setup.ring_A.zero
        for h in range(1, n + 1):
            acc = acc + signed_double_deletion(setup, h, i, h)
        fs.append(acc)
    return IdealJ(fs, Fs)


def combination_polynomial(setup: GenericSetup, J: IdealJ, h: int) -> Polynomial:
    """f_1 * det W[(h+1..n+1),(2..n-h+2)] + f_2 * det W[(h+1..n+1),(1,3..n-h+2)] for 3 <= h <= n."""
    n = setup.n
    rows = list(range(h + 1, n + 2))
    first = _submatrix_det(setup, rows, list(range(2, n - h + 3)))
    second = _submatrix_det(setup, rows, [1] + list(range(3, n - h + 3)))
    return J.f[0] * first + J.f[1] * second


# ---------------------------------------------------------------- leading monomials and Gröbner checks


@dataclass
class LeadingMonomialReport:
    n: int
    mismatches: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_leading_monomials(setup: GenericSetup, J: IdealJ | None = None) -> LeadingMonomialReport:
    n = setup.n
    if n < 2:
        raise ValueError("leading monomials are tabulated for n >= 2")
    J = J or ideal_I_closed_form(setup)
    order = setup.order_A
    K = setup.k_monomials()
    rep = LeadingMonomialReport(n)

    def expect(label, poly, mono):
        rep.checked += 1
        got = poly.leading_monomial(order) if not poly.is_zero() else None
        if got != mono:
            rep.mismatches.append({"check": label, "expected": _mono_str(setup, mono),
                                   "found": None if got is None else _mono_str(setup, got)})

    for h in range(2, n + 2):
        expect(f"LM(f_{h}) = x_{h}", J.f[h - 1], K[("x", h)])
        expect(f"LM(F_{h}) = y_{h}", J.F[h - 1], K[("y", h)])
    expect(f"LM(f_1) = z_{n + 1}", J.f[0], K[("z", n + 1)])
    for h in range(3, n + 1):
        expect(f"LM(combination {h}) = z_{h}", combination_polynomial(setup, J, h), K[("z", h)])
    return rep


def _mono_str(setup: GenericSetup, mono) -> str:
    return setup.ring_A.monomial(mono).to_string()


def claimed_gb(setup: GenericSetup, J: IdealJ | None = None) -> list[Polynomial]:
    n = setup.n
    J = J or ideal_I_closed_form(setup)
    basis = list(J.f) + J.F[1:]
    basis += [combination_polynomial(setup, J, h) for h in range(3, n + 1)]
    return basis


@dataclass
class ClaimedBasisReport:
    n: int
    size: int
    groebner: bool
    lm_ideal_is_K: bool
    pairs_checked: int
    failing_pair: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.groebner and self.lm_ideal_is_K


def verify_claimed_gb(setup: GenericSetup, budget: Budget = DEFAULT_BUDGET) -> ClaimedBasisReport:
    basis = claimed_gb(setup)
    order = setup.order_A
    check = is_groebner(basis, order, budget)
    lms = minimize_monomials(g.leading_monomial(order) for g in basis)
    K = minimize_monomials(setup.k_monomials().values())
    return ClaimedBasisReport(setup.n, len(basis), check.ok, lms == K, check.pairs_checked, check.failing_pair)


@dataclass
class InitialIdealReport:
    n: int
    initial: list
    K: list
    basis_size: int

    @property
    def equal(self) -> bool:
        return self.initial == self.K

    @property
    def K_contained(self) -> bool:
        return all(any(all(a >= b for a, b in zip(k, m)) for m in self.initial) for k in self.K)


def verify_initial(setup: GenericSetup, budget: Budget = DEFAULT_BUDGET) -> InitialIdealReport:
    """Full Buchberger on (f_i, F_i) and comparison of in(J) with K."""
    J = ideal_I_division(setup)
    gb = buchberger(J.generators, setup.order_A, budget)
    init = minimize_monomials(g.leading_monomial(setup.order_A) for g in gb)
    return InitialIdealReport(setup.n, init, minimize_monomials(setup.k_monomials().values()), len(gb))


def hilbert_comparison(setup: GenericSetup, cutoff: int | None = None, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Hilbert functions of A/J and A/K degree by degree."""
    cutoff = 2 * setup.n if cutoff is None else cutoff
    J = ideal_I_division(setup)
    hj = hilbert(J.generators, setup.order_A, cutoff, budget)
    hk = hilbert_of_monomials(list(setup.k_monomials().values()), setup.ring_A.nvars, cutoff)
    return {"n": setup.n, "cutoff": cutoff, "J": hj.dims, "K": hk.dims, "equal": hj.dims == hk.dims,
            "multiplicity_K": hk.multiplicity, "codimension_K": hk.codimension}


def minimal_generation_check(setup: GenericSetup, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Whether f_1..f_{n+1}, F_{n+1} already generate J (reported, never assumed)."""
    J = ideal_I_division(setup)
    small = [f for f in J.f if not f.is_zero()] + [J.F[-1]]
    gb = buchberger(small, setup.order_A, budget)
    missing = [i + 1 for i, F in enumerate(J.F) if not normal_form(F, gb, setup.order_A).is_zero()]
    return {"n": setup.n, "generates": not missing, "F_not_in_span": missing}


# ---------------------------------------------------------------- intermediate ideals


def intermediate_ring(setup: GenericSetup, j: int) -> tuple[PolyRing, TermOrder]:
    """B^(j) = A[v_{j+1}..v4] with deg2-weighted revlex, v's smallest and v1 < v2 < v3 < v4 < w_1_1 < ..."""
    vs = list(V_NAMES[j:])
    ws = w_names(setup.n)
    ring = PolyRing(vs + ws, setup.field)
    weights = [DEG2_V.get(nm, 1) for nm in ring.names]
    priority = list(reversed(ws)) + list(reversed(vs))
    if 0 in weights:
        raise ValueError("v1 has degree zero and cannot stay in a positively graded ring")
    return ring, weighted_revlex(ring, weights, priority)


@dataclass
class IntermediateReport:
    n: int
    j: int
    homogeneous: bool
    initial: list
    K: list
    basis_size: int

    @property
    def ok(self) -> bool:
        return self.homogeneous and self.initial == self.K


def intermediate_initial_check(setup: GenericSetup, j: int, L: IdealL | None = None,
                               budget: Budget = DEFAULT_BUDGET) -> IntermediateReport:
    if j not in (1, 2, 3, 4):
        raise ValueError("j must be 1, 2, 3 or 4")
    L = L or ideal_L(setup)
    ring, order = intermediate_ring(setup, j)
    gens = [g.to_ring(ring, drop=V_NAMES[:j]) for g in L.g + L.G]
    gens = [g for g in gens if not g.is_zero()]
    weights = [DEG2_V.get(nm, 1) for nm in ring.names]
    homogeneous = all(g.is_homogeneous(weights) for g in gens)
    init = initial_ideal(gens, order, budget)
    K = []
    for mono in setup.k_monomials().values():
        K.append(setup.ring_A.monomial(mono).to_ring(ring).leading_monomial(order))
    return IntermediateReport(setup.n, j, homogeneous, init, minimize_monomials(K), len(init))


# ---------------------------------------------------------------- pointwise oracles


def _dual_det(M: list[list[tuple]], p: int) -> tuple:
    """Determinant over k[y]/(y^2) of a square matrix of pairs (c0, c1) meaning c0 + c1*y."""
    k = len(M)
    prev = {(): (1, 0)}
    for col in range(k):
        cur = {}
        for subset in combinations(range(k), col + 1):
            a0 = a1 = 0
            for pos, r in enumerate(subset):
                e0, e1 = M[r][col]
                if not e0 and not e1:
                    continue
                s0, s1 = prev[subset[:pos] + subset[pos + 1:]]
                t0, t1 = e0 * s0, e0 * s1 + e1 * s0
                if (pos + col) % 2:
                    t0, t1 = -t0, -t1
                a0 += t0
                a1 += t1
            cur[subset] = (a0 % p, a1 % p) if p else (a0, a1)
        prev = cur
    return prev[tuple(range(k))]


def fiber_membership(Bmat: Sequence[Sequence], field: Field) -> bool:
    """Whether every maximal minor of Y + B vanishes to order two in y."""
    rows = len(Bmat)
    n = rows - 1
    p = field.char
    M = [[(field(Bmat[i][j]), 1 if i == j else 0) for j in range(n)] for i in range(rows)]
    for drop in range(rows):
        sub = [M[i] for i in range(rows) if i != drop]
        c0, c1 = _dual_det(sub, p)
        if c0 or c1:
            return False
    return True


def rank_conditions(A: Sequence[Sequence], a: Sequence, field: Field) -> bool:
    """dim(ker A ∩ ker a) >= 1 and dim(ker A^2 ∩ ker aA ∩ ker a) >= 2."""
    n = len(A)
    A = [[field(v) for v in row] for row in A]
    a = [field(v) for v in a]
    p = field.char

    def mul(X, Y):
        out = []
        for row in X:
            new = []
            for j in range(len(Y[0])):
                s = sum(row[k] * Y[k][j] for k in range(len(Y)))
                new.append(s % p if p else field(s))
            out.append(new)
        return out

    first = n - rank(A + [a], field)
    if first < 1:
        return False
    A2 = mul(A, A)
    aA = mul([a], A)[0]
    second = n - rank(A2 + [aA, a], field)
    return second >= 2


def stack(A: Sequence[Sequence], a: Sequence) -> list[list]:
    return [list(r) for r in A] + [list(a)]


def random_invertible(n: int, field: Field, rng: random.Random) -> list[list]:
    p = field.char
    while True:
        P = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if rank(P, field) == n:
            return P


def _inverse(P: list[list], field: Field) -> list[list]:
    n = len(P)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(P)]
    R, _ = row_echelon(aug, field)
    return [row[n:] for row in R]


def jordan_matrix(blocks: Sequence[tuple], n: int) -> list[list]:
    """Block-diagonal Jordan matrix from (eigenvalue, size) pairs; nilpotent blocks have 1 on the superdiagonal."""
    J = [[0] * n for _ in range(n)]
    pos = 0
    for ev, size in blocks:
        for k in range(size):
            J[pos + k][pos + k] = ev
            if k + 1 < size:
                J[pos + k][pos + k + 1] = 1
        pos += size
    if pos != n:
        raise ValueError("block sizes must add up to n")
    return J


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def jordan_types(n: int):
    """(nilpotent partition, unit-eigenvalue partition) with total size n."""
    for m in range(n + 1):
        for nil in partitions(m):
            for other in partitions(n - m):
                yield nil, other


def _structured_sample(n: int, field: Field, rng: random.Random) -> tuple[list, list]:
    """A random pair (A, a) conjugated from a random Jordan type, with a biased towards kernels."""
    p = field.char
    types = list(jordan_types(n))
    nil, other = rng.choice(types)
    blocks = [(0, s) for s in nil] + [(rng.randrange(1, p), s) for s in other]
    J = jordan_matrix(blocks, n)
    mode = rng.randrange(4)
    if mode == 0:
        a = [rng.randrange(p) for _ in range(n)]
    elif mode == 1:
        a = [0] * n
    else:
        # a vanishing on a random subset of basis vectors of the Jordan form
        a = [0 if rng.random() < 0.6 else rng.randrange(p) for _ in range(n)]
    P = random_invertible(n, field, rng)
    Pinv = _inverse(P, field)

    def mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) % p for j in range(len(Y[0]))] for i in range(len(X))]

    A = mul(mul(P, J), Pinv)
    a = mul([a], Pinv)[0]
    return A, a


@dataclass
class OracleSweep:
    n: int
    samples: int
    agree: int
    true_count: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_sweep(n: int, samples: int = 1000, seed: int = 0, field: Field | None = None,
                 structured_fraction: float = 0.75) -> OracleSweep:
    """Compare fiber_membership and rank_conditions on random samples.

    Uniform samples alone almost never lie on the fiber, so most draws come
    from conjugated Jordan forms with a chosen to meet the kernels.
    """
    field = field or Field(32003)
    p = field.char
    mismatches = []
    agree = truths = 0
    for k in range(samples):
        rng = random.Random(f"{seed}:{n}:{k}")
        if rng.random() < structured_fraction:
            A, a = _structured_sample(n, field, rng)
        else:
            A = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
            a = [rng.randrange(p) for _ in range(n)]
        fm = fiber_membership(stack(A, a), field)
        rc = rank_conditions(A, a, field)
        truths += rc
        if fm == rc:
            agree += 1
        else:
            mismatches.append({"index": k, "A": A, "a": a, "fiber": fm, "rank": rc})
    return OracleSweep(n, samples, agree, truths, mismatches)


def jordan_sweep_f2(n: int = 4) -> OracleSweep:
    """Every Jordan form over F_2 (eigenvalues 0 and 1) paired with every row vector a."""
    field = Field(2)
    mismatches = []
    agree = truths = total = 0
    for nil, other in jordan_types(n):
        J = jordan_matrix([(0, s) for s in nil] + [(1, s) for s in other], n)
        for a in product(range(2), repeat=n):
            total += 1
            fm = fiber_membership(stack(J, a), field)
            rc = rank_conditions(J, a, field)
            truths += rc
            if fm == rc:
                agree += 1
            else:
                mismatches.append({"type": [nil, other], "a": list(a), "fiber": fm, "rank": rc})
    return OracleSweep(n, total, agree, truths, mismatches)


def jordan_sweep_generic(n: int = 4, field: Field | None = None, seed: int = 0, vectors_per_type: int = 60) -> OracleSweep:
    """Each Jordan type with nilpotent part and a generic nonzero eigenvalue, many row vectors a."""
    field = field or Field(32003)
    p = field.char
    mismatches = []
    agree = truths = total = 0
    for t, (nil, other) in enumerate(jordan_types(n)):
        rng = random.Random(f"{seed}:type:{t}")
        blocks = [(0, s) for s in nil] + [(rng.randrange(2, p), s) for s in other]
        J = jordan_matrix(blocks, n)
        candidates = [tuple(a) for a in product(range(2), repeat=n)]
        candidates += [tuple(rng.randrange(p) if rng.random() < 0.5 else 0 for _ in range(n))
                       for _ in range(vectors_per_type)]
        for a in candidates:
            total += 1
            fm = fiber_membership(stack(J, a), field)
            rc = rank_conditions(J, a, field)
            truths += rc
            if fm == rc:
                agree += 1
            else:
                mismatches.append({"type": [nil, other], "a": list(a), "fiber": fm, "rank": rc})
    return OracleSweep(n, total, agree, truths, mismatches)


# ---------------------------------------------------------------- tangent spaces


class InfiniteColength(ValueError):
    pass


def _quotient_basis(gens: Sequence[Polynomial]) -> tuple[list, list, TermOrder]:
    """Gröbner basis, standard monomials and order for R/I (finite colength required)."""
    from .groebner import standard_monomials

    ring = gens[0].ring
    order = grevlex(ring)
    gb = buchberger(gens, order)
    lms = minimize_monomials(g.leading_monomial(order) for g in gb)
    try:
        std = standard_monomials(lms, ring.nvars)
    except ValueError as exc:
        raise InfiniteColength("ideal has infinite colength") from exc
    return gb, std, order


def _coords(poly: Polynomial, gb, std_index: dict, order) -> list:
    nf = normal_form(poly, gb, order)
    vec = [0] * len(std_index)
    for m, c in nf.terms.items():
        vec[std_index[m]] = c
    return vec


class _Module:
    """The finite-dimensional R-module I/I^2 (as a subspace of R/I^2) or R/I."""

    def __init__(self, gens: Sequence[Polynomial], quotient_gens: Sequence[Polynomial], field: Field):
        self.field = field
        self.gb, self.std, self.order = _quotient_basis(quotient_gens)
        self.std_index = {m: k for k, m in enumerate(self.std)}
        ring = quotient_gens[0].ring
        spanning = []
        for g in gens:
            for m in self.std:
                vec = _coords(g * ring.monomial(m), self.gb, self.std_index, self.order)
                if any(vec):
                    spanning.append(vec)
        basis, _ = row_echelon(spanning, field) if spanning else ([], [])
        self.basis = basis
        self.ring = ring

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, k: int) -> Polynomial:
        return self.ring.from_terms({m: c for m, c in zip(self.std, self.basis[k]) if c})

    def action(self, var: str) -> list[list]:
        """Matrix (columns = images of basis vectors) of multiplication by ``var``."""
        v = self.ring.gen(var)
        cols = []
        for k in range(self.dim):
            vec = _coords(self.element(k) * v, self.gb, self.std_index, self.order)
            sol = solve_in_span(self.basis, vec, self.field)
            if sol is None:
                raise ArithmeticError("module is not closed under multiplication")
            cols.append(sol)
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]


def _hom_unknowns(source: _Module, target: _Module, offset: int, total: int, variables) -> list[list]:
    """Linear equations for L*x_source = x_target*L with L occupying unknowns from ``offset``."""
    F = source.field
    rows = []
    ds, dt = source.dim, target.dim
    for var in variables:
        S = source.action(var)
        Tm = target.action(var)
        for r in range(dt):
            for c in range(ds):
                row = [0] * total
                # (L S)[r][c] - (T L)[r][c] = 0, L[r][k] is unknown offset + r*ds + k
                for k in range(ds):
                    if S[k][c]:
                        idx = offset + r * ds + k
                        row[idx] = F.add(row[idx], S[k][c])
                for k in range(dt):
                    if Tm[r][k]:
                        idx = offset + k * ds + c
                        row[idx] = F.add(row[idx], F.neg(Tm[r][k]))
                if any(row):
                    rows.append(row)
    return rows


def _ideal_square(gens: Sequence[Polynomial]) -> list[Polynomial]:
    return [a * b for i, a in enumerate(gens) for b in gens[i:]]


def tangent_dim(I1: Sequence[Polynomial], I2: Sequence[Polynomial]) -> int:
    """Dimension of the tangent space to the nested pair V(I1) ⊇ V(I2), with I1 ⊆ I2.

    Homomorphisms I -> R/I factor through I/I^2, so each Hom is computed as
    the space of linear maps I/I^2 -> R/I commuting with x and y. The pair
    space is cut out by compatibility on I1/I1^2 -> R/I2.
    """
    field = I1[0].ring.field
    ring = I1[0].ring
    variables = ring.names
    M1 = _Module(I1, _ideal_square(I1), field)  # I1/I1^2
    Q1 = _Module([ring.one], I1, field)  # R/I1
    M2 = _Module(I2, _ideal_square(I2), field)
    Q2 = _Module([ring.one], I2, field)
    n1 = Q1.dim * M1.dim
    n2 = Q2.dim * M2.dim
    total = n1 + n2
    rows = _hom_unknowns(M1, Q1, 0, total, variables) + _hom_unknowns(M2, Q2, n1, total, variables)
    # compatibility: pi o L1 = L2 o iota on each basis element of I1/I1^2
    for k in range(M1.dim):
        elem = M1.element(k)
        # pi: R/I1 -> R/I2 on basis of Q1 (standard monomials of I1, basis rows are unit vectors)
        img2 = _coords(elem, M2.gb, M2.std_index, M2.order)
        iota = solve_in_span(M2.basis, img2, field)
        if iota is None:
            raise ArithmeticError("I1 is not contained in I2")
        pi_cols = []
        for r in range(Q1.dim):
            pi_cols.append(solve_in_span(Q2.basis, _coords(Q1.element(r), Q2.gb, Q2.std_index, Q2.order), field))
        for t in range(Q2.dim):
            row = [0] * total
            for r in range(Q1.dim):
                coef = pi_cols[r][t]
                if coef:
                    idx = r * M1.dim + k
                    row[idx] = field.add(row[idx], coef)
            for m in range(M2.dim):
                if iota[m]:
                    idx = n1 + t * M2.dim + m
                    row[idx] = field.add(row[idx], field.neg(iota[m]))
            if any(row):
                rows.append(row)
    return total - (rank(rows, field) if rows else 0)


def hom_dim(I: Sequence[Polynomial]) -> int:
    """dim Hom_R(I, R/I), the tangent space of the classical Hilbert scheme."""
    field = I[0].ring.field
    ring = I[0].ring
    M = _Module(I, _ideal_square(I), field)
    Q = _Module([ring.one], I, field)
    total = M.dim * Q.dim
    rows = _hom_unknowns(M, Q, 0, total, ring.names)
    return total - (rank(rows, field) if rows else 0)
