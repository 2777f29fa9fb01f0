"""The squarefree monomial ideal K, its Stanley-Reisner complex and homology.

Vertices are pairs (i, j) with 1 <= i <= n+1, 1 <= j <= n, standing for the
variable w_{i,j}. A c-face is a vertex set meeting every generator support;
its complement is a face of the complex. c-facets are the minimal c-faces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Vertex = tuple  # (i, j)


def vertex_grid(n: int) -> list[Vertex]:
    return [(i, j) for i in range(1, n + 2) for j in range(1, n + 1)]


def facet_count_formula(n: int) -> int:
    return (n - 1) * n * (n + 1) * (3 * n - 2) // 12


# ---------------------------------------------------------------- generators


def x_monomial(n: int, h: int) -> frozenset:
    return frozenset([(i, n + 2 - i) for i in range(2, h)] + [(i, n + 3 - i) for i in range(h + 1, n + 2)])


def y_monomial(n: int, h: int) -> frozenset:
    return frozenset([(i, n + 1 - i) for i in range(1, h)] + [(i, n + 2 - i) for i in range(h + 1, n + 2)])


def z_monomial(n: int, h: int) -> frozenset:
    return frozenset([(i, n + 3 - i) for i in range(3, h)] + [(i, n + 2 - i) for i in range(h, n + 2)]
                     + [(i, n + 4 - i) for i in range(h + 1, n + 2)])


def k_generators(n: int) -> dict:
    """Labelled generator supports of K: ('x', h), ('y', h) for h=2..n+1 and ('z', h) for h=3..n+1."""
    if n < 2:
        raise ValueError("K is defined for n >= 2")
    gens = {}
    for h in range(2, n + 2):
        gens[("x", h)] = x_monomial(n, h)
    for h in range(2, n + 2):
        gens[("y", h)] = y_monomial(n, h)
    for h in range(3, n + 2):
        gens[("z", h)] = z_monomial(n, h)
    return gens


# ---------------------------------------------------------------- transversals


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def minimal_transversals(edges: Sequence[int], candidates: int) -> list[int]:
    """All minimal hitting sets (as bitmasks) of ``edges`` using vertices in ``candidates``.

    Depth-first search in the style of Murakami-Uno: branch on the vertices of
    an uncovered edge with fewest candidates, pruning any partial set in which
    some chosen vertex has lost every private edge.
    """
    edges = list(edges)
    found: list[int] = []

    def minimal(S: int) -> bool:
        private = 0
        for e in edges:
            hit = e & S
            if hit and hit & (hit - 1) == 0:
                private |= hit
        return private == S

    def search(S: int, cand: int):
        uncovered = [e for e in edges if not e & S]
        if not uncovered:
            found.append(S)
            return
        F = min(uncovered, key=lambda e: bin(e & cand).count("1"))
        choices = F & cand
        cand &= ~choices
        for v in _bits(choices):
            S2 = S | v
            if minimal(S2):
                search(S2, cand)
            cand |= v

    search(0, candidates)
    return found


@dataclass
class CFacetSet:
    n: int
    facets: list  # sorted lists of vertices


def c_facets(n: int, prune: bool = True) -> CFacetSet:
    """Minimal transversals of the generator supports of K, canonically sorted."""
    verts = vertex_grid(n)
    index = {v: k for k, v in enumerate(verts)}
    edges = [sum(1 << index[v] for v in supp) for supp in k_generators(n).values()]
    if prune:
        cand = sum(1 << index[(i, j)] for (i, j) in verts if n + 1 <= i + j <= n + 4)
    else:
        cand = (1 << len(verts)) - 1
    masks = minimal_transversals(edges, cand)
    facets = sorted(sorted(verts[k] for k in range(len(verts)) if m >> k & 1) for m in masks)
    return CFacetSet(n, facets)


def is_c_face(n: int, vertices: Iterable[Vertex]) -> bool:
    S = set(vertices)
    return all(S & supp for supp in k_generators(n).values())


def shift_down(vertices: Iterable[Vertex]) -> frozenset:
    return frozenset((i + 1, j) for i, j in vertices)


def shift_up(vertices: Iterable[Vertex]) -> frozenset:
    return frozenset((i - 1, j) for i, j in vertices)


def verify_counts(n: int) -> dict:
    """Purity, total count, last-column count and the rectangle recursion for the c-facets."""
    facets = c_facets(n).facets
    sizes = sorted({len(c) for c in facets})
    last = [c for c in facets if any(j == n for _, j in c)]
    rest = [c for c in facets if not any(j == n for _, j in c)]
    in_rectangle = all(i >= 2 and j <= n - 1 for c in rest for i, j in c)
    one_on_main = all(sum(1 for i, j in c if i + j == n + 1) == 1 for c in facets)
    on_band = all(n + 1 <= i + j <= n + 4 for c in facets for i, j in c)
    previous = facet_count_formula(n - 1) if n >= 3 else 0
    report = {
        "n": n,
        "total": len(facets),
        "expected_total": facet_count_formula(n),
        "sizes": sizes,
        "last_column": len(last),
        "expected_last_column": (n - 1) ** 2 * n,
        "rectangle": len(rest),
        "expected_rectangle": previous,
        "rectangle_inside": in_rectangle,
        "one_vertex_on_main_antidiagonal": one_on_main,
        "vertices_on_four_antidiagonals": on_band,
    }
    report["ok"] = (sizes == [4] and report["total"] == report["expected_total"]
                    and report["last_column"] == report["expected_last_column"]
                    and report["rectangle"] == previous and in_rectangle and one_on_main and on_band)
    return report


def shifting_identities(n: int) -> dict:
    """Each generator of K^(n) as sd(generator of K^(n-1)) times explicit last-column variables."""
    big, small = k_generators(n), k_generators(n - 1)
    sd = {label: shift_down(supp) for label, supp in small.items()}
    expected = {("x", 2): sd[("x", 2)] | {(3, n)}, ("y", 2): sd[("x", n)] | {(1, n), (n + 1, 1)},
                ("z", 3): sd[("z", 3)] | {(3, n - 1), (4, n)}}
    for h in range(2, n + 1):
        expected[("x", h + 1)] = sd[("x", h)] | {(2, n)}
        expected[("y", h + 1)] = sd[("y", h)] | {(1, n)}
    for h in range(3, n + 1):
        expected[("z", h + 1)] = sd[("z", h)] | {(3, n)}
    return {label: expected[label] == big[label] for label in big}


def sd_bijection_check(n: int, samples: int = 200, seed: int = 0) -> dict:
    if n < 3:
        raise ValueError("the shift-down comparison needs n >= 3")
    big = c_facets(n).facets
    small = c_facets(n - 1).facets
    rect = {frozenset(c) for c in big if all(i >= 2 and j <= n - 1 for i, j in c)}
    image = {shift_down(c) for c in small}
    gens_big, gens_small = k_generators(n), k_generators(n - 1)
    divisible = all(any(shift_down(v) <= u for v in gens_small.values()) for u in gens_big.values())
    identities = shifting_identities(n)
    rng = random.Random(seed)
    rectangle = [(i, j) for i in range(2, n + 2) for j in range(1, n)]
    mismatch = None
    for _ in range(samples):
        C = frozenset(v for v in rectangle if rng.random() < 0.35)
        if is_c_face(n, C) != is_c_face(n - 1, shift_up(C)):
            mismatch = sorted(C)
            break
    ok = rect == image and divisible and all(identities.values()) and mismatch is None
    return {"n": n, "facets_small": len(small), "facets_in_rectangle": len(rect), "bijective_on_facets": rect == image,
            "generators_divisible": divisible, "identities": all(identities.values()),
            "random_faces_checked": samples, "counterexample": mismatch, "ok": ok}


# ---------------------------------------------------------------- simplicial complexes


@dataclass
class SimplicialComplex:
    vertices: list
    facets: list  # frozensets
    _faces: dict = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_face(self, face: Iterable) -> bool:
        s = frozenset(face)
        return any(s <= f for f in self.facets)

    def faces_by_dim(self) -> dict:
        """dim -> sorted list of faces (as sorted tuples); includes the empty face in dim -1."""
        if self._faces is None:
            seen: set = set()
            for f in self.facets:
                items = sorted(f)
                for k in range(len(items) + 1):
                    seen.update(combinations(items, k))
            table: dict = {}
            for s in seen:
                table.setdefault(len(s) - 1, []).append(s)
            self._faces = {d: sorted(v) for d, v in table.items()}
        return self._faces

    def f_vector(self) -> dict:
        return {d: len(v) for d, v in sorted(self.faces_by_dim().items())}

    def link(self, face: Iterable) -> "SimplicialComplex":
        s = frozenset(face)
        fs = {f - s for f in self.facets if s <= f}
        return SimplicialComplex(sorted({v for f in fs for v in f}), _maximal(fs))


def _maximal(sets: Iterable[frozenset]) -> list:
    sets = sorted(set(sets), key=len, reverse=True)
    out: list = []
    for s in sets:
        if not any(s <= t for t in out):
            out.append(s)
    return sorted(out, key=lambda f: sorted(f))


def complex_from_squarefree(gens: Iterable[Iterable], vertices: Sequence) -> SimplicialComplex:
    """Stanley-Reisner complex: facets are complements of the minimal transversals of the supports."""
    index = {v: k for k, v in enumerate(vertices)}
    edges = [sum(1 << index[v] for v in g) for g in gens]
    masks = minimal_transversals(edges, (1 << len(vertices)) - 1)
    facets = [frozenset(v for k, v in enumerate(vertices) if not m >> k & 1) for m in masks]
    return SimplicialComplex(list(vertices), _maximal(facets))


def delta_complex(n: int) -> SimplicialComplex:
    return complex_from_squarefree(k_generators(n).values(), vertex_grid(n))


# ---------------------------------------------------------------- homology


class SizeBudgetExceeded(RuntimeError):
    pass


def _boundary_rows(faces_hi: list, index_lo: dict) -> list[dict]:
    rows = []
    for face in faces_hi:
        row = {}
        for k in range(len(face)):
            sub = face[:k] + face[k + 1:]
            row[index_lo[sub]] = -1 if k % 2 else 1
        rows.append(row)
    return rows


def sparse_rank(rows: list[dict], char: int) -> int:
    """Rank over Q (char 0) or F_p of a sparse matrix given as column->value dicts."""
    pivots: dict = {}
    for row in rows:
        row = {c: (v % char if char else Fraction(v)) for c, v in row.items()}
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            f = row[c] * pow(piv[c], -1, char) % char if char else row[c] / piv[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if char:
                    nv %= char
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def smith_diagonal(rows: list[dict], ncols: int) -> list[int]:
    """Nonzero invariant factors of an integer matrix (dense Smith normal form)."""
    M = [[row.get(c, 0) for c in range(ncols)] for row in rows]
    diag = []
    r0 = 0
    nrows = len(M)
    while r0 < nrows and r0 < ncols:
        entries = [(abs(M[i][j]), i, j) for i in range(r0, nrows) for j in range(r0, ncols) if M[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        M[r0], M[pi] = M[pi], M[r0]
        for row in M:
            row[r0], row[pj] = row[pj], row[r0]
        while True:
            done = True
            for i in range(r0 + 1, nrows):
                if M[i][r0]:
                    q = M[i][r0] // M[r0][r0]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r0])]
                    if M[i][r0]:
                        M[r0], M[i] = M[i], M[r0]
                        done = False
            for j in range(r0 + 1, ncols):
                if M[r0][j]:
                    q = M[r0][j] // M[r0][r0]
                    for row in M:
                        row[j] -= q * row[r0]
                    if M[r0][j]:
                        for row in M:
                            row[r0], row[j] = row[j], row[r0]
                        done = False
            if done:
                bad = next(((i, j) for i in range(r0 + 1, nrows) for j in range(r0 + 1, ncols)
                            if M[i][j] % M[r0][r0]), None)
                if bad is None:
                    break
                M[r0] = [a + b for a, b in zip(M[r0], M[bad[0]])]
        diag.append(abs(M[r0][r0]))
        r0 += 1
    return diag


@dataclass
class HomologyReport:
    coefficients: str
    betti: dict  # dim -> rank of reduced homology
    torsion: dict = field(default_factory=dict)  # dim -> invariant factors > 1 (integer coefficients)
    f_vector: dict = field(default_factory=dict)

    @property
    def euler_from_betti(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())

    @property
    def euler_from_faces(self) -> int:
        return sum((-1) ** d * c for d, c in self.f_vector.items())


def reduced_homology(cx: SimplicialComplex, coefficients: str | int = 0, max_faces: int = 2_000_000) -> HomologyReport:
    """Reduced homology over Q (0), F_p (prime p) or the integers ('ZZ')."""
    faces = cx.faces_by_dim()
    if sum(len(v) for v in faces.values()) > max_faces:
        raise SizeBudgetExceeded(f"complex has more than {max_faces} faces")
    integral = coefficients in ("ZZ", "Z")
    char = 0 if integral else int(coefficients)
    dims = sorted(faces)
    index = {d: {f: k for k, f in enumerate(faces[d])} for d in dims}
    ranks = {}
    torsion = {}
    for d in dims:
        if d - 1 in faces:
            rows = _boundary_rows(faces[d], index[d - 1])
            if integral:
                inv = smith_diagonal(rows, len(faces[d - 1]))
                ranks[d] = len(inv)
                tors = [a for a in inv if a > 1]
                if tors:
                    torsion[d - 1] = tors
            else:
                ranks[d] = sparse_rank(rows, char)
        else:
            ranks[d] = 0
    betti = {}
    for d in dims:
        b = len(faces[d]) - ranks[d] - ranks.get(d + 1, 0)
        betti[d] = b
    label = "ZZ" if integral else ("QQ" if char == 0 else f"GF({char})")
    return HomologyReport(label, betti, torsion, {d: len(v) for d, v in faces.items()})


def reisner_check(cx: SimplicialComplex, coefficients: int = 0) -> dict:
    """Cohen-Macaulay test: every link has reduced homology only in its top dimension."""
    faces = cx.faces_by_dim()
    failures = []
    checked = 0
    for d in sorted(faces):
        for face in faces[d]:
            lk = cx.link(face)
            top = lk.dimension
            rep = reduced_homology(lk, coefficients)
            checked += 1
            bad = {k: b for k, b in rep.betti.items() if b and k < top}
            if bad:
                failures.append({"face": [list(v) for v in face], "betti": bad})
    return {"coefficients": "QQ" if coefficients == 0 else f"GF({coefficients})", "links_checked": checked,
            "failures": failures, "cohen_macaulay": not failures}


def multiplicity_from_facets(n: int) -> int:
    """Degree of the Stanley-Reisner ring of a pure complex: number of top-dimensional facets."""
    return len(c_facets(n).facets)

