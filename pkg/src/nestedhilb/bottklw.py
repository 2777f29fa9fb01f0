"""Bott's algorithm on Gr(1,E) and Flag(1,2;E), the exterior powers of the
syzygy bundle, their cohomology tables and the resulting degree.

Conventions. Weights are integer tuples; S_lambda of a dual bundle is written
with the weight of the dual. On a Grassmannian Gr(1, V) with tautological
subbundle R and quotient Q, the bundle S_alpha R^dual (x) S_beta Q^dual is fed
to Bott's algorithm as the concatenated weight (alpha, beta), and a nonzero
answer is S_nu V^dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactpoly import PolyRing, Polynomial, determinant


# ---------------------------------------------------------------- weights


def is_dominant(weight: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(weight, weight[1:]))


def bott_step(weight: Sequence[int]) -> tuple[int, tuple] | None:
    """(cohomological degree, dominant weight) or None when the cohomology vanishes."""
    k = len(weight)
    shifted = [w + (k - 1 - i) for i, w in enumerate(weight)]
    if len(set(shifted)) < k:
        return None
    length = sum(1 for i in range(k) for j in range(i + 1, k) if shifted[i] < shifted[j])
    ordered = sorted(shifted, reverse=True)
    return length, tuple(w - (k - 1 - i) for i, w in enumerate(ordered))


def schur_dim(weight: Sequence[int], k: int | None = None) -> int:
    """Weyl dimension formula for GL_k."""
    k = len(weight) if k is None else k
    if len(weight) != k:
        raise ValueError("weight length must equal the rank")
    if not is_dominant(weight):
        raise ValueError("schur_dim needs a dominant weight")
    num = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            num *= Fraction(weight[i] - weight[j] + j - i, j - i)
    return int(num)


def pieri_column(mu: Sequence[int], j: int, k: int | None = None) -> list[tuple]:
    """Dominant weights obtained from ``mu`` by adding a vertical strip of j boxes."""
    k = len(mu) if k is None else k
    if len(mu) != k or not is_dominant(mu):
        raise ValueError("pieri_column needs a dominant weight of length k")
    out = []

    def rec(i: int, left: int, acc: list):
        if i == k:
            if left == 0:
                lam = tuple(acc)
                if is_dominant(lam):
                    out.append(lam)
            return
        for add in (1, 0):
            if add <= left and left - add <= k - i - 1:
                rec(i + 1, left - add, acc + [mu[i] + add])

    rec(0, j, [])
    return sorted(out, reverse=True)


def dual_weight(weight: Sequence[int]) -> tuple:
    return tuple(-w for w in reversed(weight))


# ---------------------------------------------------------------- flag variety


def cohomology_F(a: int, j: int, b: int, n: int) -> dict:
    """H^q(Flag(1,2;E), S^a R1 (x) wedge^j Q^dual (x) S^b(R2/R1)) as q -> [(nu, mult)].

    Q is the rank n-1 quotient E/R1. Steps: Bott on the fibre Gr(1, Q) for
    the R2/R1 factor, column Pieri to absorb wedge^j Q^dual, Bott on Gr(1, E).
    """
    if not 0 <= j <= n - 1 or a < 0 or b < 0:
        raise ValueError("need 0 <= j <= n-1 and a, b >= 0")
    relative = bott_step((-b,) + (0,) * (n - 2))
    if relative is None:
        return {}
    shift, mu = relative
    result: dict = {}
    for lam in pieri_column(mu, j, n - 1):
        absolute = bott_step((-a,) + lam)
        if absolute is None:
            continue
        h, nu = absolute
        result.setdefault(shift + h, []).append((nu, 1))
    return result


def cohomology_dims(a: int, j: int, b: int, n: int, e: int) -> dict:
    """q -> dimension of H^q after tensoring with wedge^e E^dual."""
    out: dict = {}
    for q, reps in cohomology_F(a, j, b, n).items():
        out[q] = out.get(q, 0) + comb(n, e) * sum(m * schur_dim(nu, n) for nu, m in reps)
    return out


# ---------------------------------------------------------------- exterior powers


EXTRA_SHIFT = {"none": (0, 0), "R1": (1, 0), "R2/R1": (0, 1), "wedge2R2": (1, 1)}


@dataclass(frozen=True)
class BundleSummand:
    """wedge^e E^dual (x) S^a R1 (x) wedge^j Q^dual (x) S^b(R2/R1), then the extra factor."""

    a: int
    j: int
    b: int
    e: int
    extra: str = "none"

    def twisted(self) -> tuple[int, int, int]:
        da, db = EXTRA_SHIFT[self.extra]
        return self.a + da, self.j, self.b + db

    def multiplicity(self, n: int) -> int:
        """Dimension contributed by the wedge^e E^dual factor."""
        return comb(n, self.e)


def eta_prime_summands(n: int, r: int) -> list[BundleSummand]:
    """wedge^r eta' = sum over i + j = r of wedge^i E^dual (x) S^i R1 (x) wedge^j Q^dual (x) S^j(R2/R1)."""
    return [BundleSummand(i, r - i, r - i, i) for i in range(0, n + 1) if 0 <= r - i <= n - 1]


def xi_prime_rank(n: int) -> int:
    return (2 * n - 1) + 2


def xi_prime_decomposition(n: int, p: int) -> list[BundleSummand]:
    """Summands of wedge^p xi' = wedge^p eta' + wedge^{p-1} eta' (x) R2 + wedge^{p-2} eta' (x) wedge^2 R2.

    The R2 block is listed through its two graded pieces R1 and R2/R1;
    wedge^2 R2 is rewritten as R1 (x) R2/R1.
    """
    if not 0 <= p <= xi_prime_rank(n):
        raise ValueError("p out of range")
    out = list(eta_prime_summands(n, p))
    for s in eta_prime_summands(n, p - 1) if p >= 1 else []:
        out.append(BundleSummand(s.a, s.j, s.b, s.e, "R1"))
        out.append(BundleSummand(s.a, s.j, s.b, s.e, "R2/R1"))
    for s in eta_prime_summands(n, p - 2) if p >= 2 else []:
        out.append(BundleSummand(s.a, s.j, s.b, s.e, "wedge2R2"))
    return out


# ---------------------------------------------------------------- tables


@dataclass
class TableEntry:
    certified: int = 0
    cancelling: int = 0  # upper bound for the part that may cancel against a neighbour
    tags: set = field(default_factory=set)

    def to_json(self) -> dict:
        return {"dim": self.certified, "tag": "cancelling-pair" if self.tags else "certified",
                "cancelling_upper_bound": self.cancelling}


@dataclass
class CohomologyTable:
    n: int
    entries: dict  # (p, q) -> TableEntry
    pairs: list  # (p, q, dim_at_q, dim_at_q_plus_1) for ambiguous connecting maps

    def certified(self) -> dict:
        return {pq: e.certified for pq, e in sorted(self.entries.items()) if e.certified}

    def tagged(self) -> set:
        return {pq for pq, e in self.entries.items() if e.tags}

    def support(self) -> set:
        return {pq for pq, e in self.entries.items() if e.certified or e.tags}

    def to_json(self) -> dict:
        return {f"{p},{q}": e.to_json() for (p, q), e in sorted(self.entries.items()) if e.certified or e.tags}


def cohomology_tables(n: int) -> CohomologyTable:
    """h^q(Flag, wedge^p xi') for all p, with R2 connecting-map ambiguities tagged."""
    if n < 4:
        raise ValueError("the table is tabulated for n >= 4")
    entries: dict = {}
    pairs = []

    def entry(p, q) -> TableEntry:
        return entries.setdefault((p, q), TableEntry())

    for p in range(xi_prime_rank(n) + 1):
        sub: dict = {}
        quo: dict = {}
        for s in xi_prime_decomposition(n, p):
            dims = cohomology_dims(*s.twisted(), n, s.e)
            if s.extra == "R1":
                target = sub
            elif s.extra == "R2/R1":
                target = quo
            else:
                for q, d in dims.items():
                    entry(p, q).certified += d
                continue
            for q, d in dims.items():
                target[q] = target.get(q, 0) + d
        # 0 -> X(x)R1 -> X(x)R2 -> X(x)R2/R1 -> 0; connecting maps H^q(quo) -> H^{q+1}(sub)
        for q, d in sub.items():
            if quo.get(q - 1):
                continue
            entry(p, q).certified += d
        for q, d in quo.items():
            if sub.get(q + 1):
                low, high = entry(p, q), entry(p, q + 1)
                low.cancelling += d
                high.cancelling += sub[q + 1]
                low.tags.add("pair")
                high.tags.add("pair")
                pairs.append((p, q, d, sub[q + 1]))
            else:
                entry(p, q).certified += d
    return CohomologyTable(n, entries, pairs)


def expected_table(n: int) -> dict:
    """The nonzero certified entries predicted by hand for n >= 4."""
    c2 = comb(n, 2)
    return {
        (0, 0): 1,
        (n - 1, n - 2): 1 + n,
        (n, n - 1): 1,
        (n + 1, n - 1): n,
        (2 * n - 2, 2 * n - 4): n + c2,
        (2 * n - 1, 2 * n - 3): 1,
        (2 * n - 1, 2 * n - 4): c2,
        (2 * n, 2 * n - 3): n + c2,
        (2 * n + 1, 2 * n - 3): c2,
    }


def expected_pairs(n: int) -> set:
    return {(n, n - 2), (n, n - 1), (2 * n - 1, 2 * n - 4), (2 * n - 1, 2 * n - 3)}


def klw_degree(n: int, table: CohomologyTable | None = None) -> Fraction:
    """sum (-1)^(p-q) p^4/4! h^q(wedge^p xi') over the table.

    An ambiguous pair (d at q, d' at q+1) contributes (d - r) and (d' - r) for
    an unknown rank r; the alternating sum is independent of r, so r = 0 is used.
    """
    table = table or cohomology_tables(n)
    total = Fraction(0)
    for (p, q), e in table.entries.items():
        h = e.certified + e.cancelling
        if h:
            total += (-1) ** (p - q) * Fraction(p**4, 24) * h
    return total


def degree_formula(n: int) -> int:
    return (n - 1) * n * (n + 1) * (3 * n - 2) // 12


# ---------------------------------------------------------------- nilpotent block minors


def jordan_ring(length: int) -> PolyRing:
    return PolyRing(["y"] + [f"a{k}" for k in range(1, length + 1)])


def jordan_minor_expansion(length: int, i: int) -> Polynomial:
    """(-y)^(length-i) * (a_i y^(i-1) - a_{i-1} y^(i-2) + ... + (-1)^(i+1) a_1)."""
    if not 1 <= i <= length:
        raise ValueError("need 1 <= i <= length")
    R = jordan_ring(length)
    y = R.gen("y")
    inner = R.zero
    for k in range(1, i + 1):
        term = R.gen(f"a{k}") * y ** (k - 1)
        inner = inner + (term if (i - k) % 2 == 0 else -term)
    return (-y) ** (length - i) * inner


def nilpotent_block_minor(length: int, i: int) -> Polynomial:
    """Direct determinant: rows of [y 1; y 1; ...; a_1 .. a_length] with row i deleted."""
    R = jordan_ring(length)
    y = R.gen("y")
    rows = []
    for r in range(length):
        rows.append([y if c == r else (R.one if c == r + 1 else R.zero) for c in range(length)])
    rows.append([R.gen(f"a{k}") for k in range(1, length + 1)])
    del rows[i - 1]
    return determinant(rows, R)
