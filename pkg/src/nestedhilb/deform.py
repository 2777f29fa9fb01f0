"""Deformations of punctual ideals in k[x,y]: m-adic initial forms, cleaving
families (f) + (l - t)(I : l), the case analysis for pairs I ⊆ J with
colength(J) <= 2, generic initial ideals, the point-adding degeneration of
Borel-fixed ideals, and the dimension count behind reducible nested schemes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .exactpoly import (Field, Monomial, PolyRing, Polynomial, determinant, grevlex,
                        minimize_monomials, mono_divides, mono_mul)
from .groebner import (Budget, DEFAULT_BUDGET, buchberger, colength, colon, count_standard_monomials,
                       ideal_contains, initial_ideal, intersect, same_ideal)
from .linalg import row_echelon, solve_in_span


class NotPrimary(ValueError):
    """The ideal has a zero away from the origin or infinite colength."""


class PreconditionError(ValueError):
    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"{name}: {detail}" if detail else name)
        self.name = name


class CaseError(ValueError):
    """Input outside the normal forms handled by ``cleave_pair``."""

    def __init__(self, message: str, trace: list[str]):
        super().__init__(message + " | " + "; ".join(trace))
        self.trace = trace


class GinDisagreement(RuntimeError):
    pass


class VerificationMismatch(RuntimeError):
    pass


def plane_ring(field_: Field | None = None) -> PolyRing:
    return PolyRing(["x", "y"]) if field_ is None else PolyRing(["x", "y"], field_)


# ---------------------------------------------------------------- orders and initial forms


def order_of(f: Polynomial) -> int | float:
    """m-adic order: the least total degree of a term; inf for 0."""
    return min((sum(m) for m in f.terms), default=math.inf)


def initial_form(f: Polynomial) -> Polynomial:
    o = order_of(f)
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if sum(m) == o})


def homogeneous_part(f: Polynomial, d: int) -> Polynomial:
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if sum(m) == d})


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """Degree-d monomials, largest first in grevlex with the first variable biggest."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass
class LocalData:
    """Degree-by-degree description of I* in gr_m(R)."""

    ring: PolyRing
    order: int
    forms: dict  # d -> list of homogeneous polynomials, a basis of [I*]_d
    colength: int
    top_degree: int  # degrees above this are entirely in I*

    def dim(self, d: int) -> int:
        if d > self.top_degree:
            return math.comb(d + self.ring.nvars - 1, d)
        return len(self.forms.get(d, []))

    def codim(self, d: int) -> int:
        return math.comb(d + self.ring.nvars - 1, d) - self.dim(d)

    def hilbert_function(self) -> list[int]:
        return [self.codim(d) for d in range(self.top_degree + 1)]

    def socle_degree(self) -> int:
        return max(d for d in range(self.top_degree + 1) if self.codim(d))

    def initial_ideal(self) -> list[Polynomial]:
        """Generators of I*: every basis form up to the top degree."""
        gens = [g for d in sorted(self.forms) for g in self.forms[d]]
        return gens


def ord_and_initial_forms(I: Sequence[Polynomial], budget: Budget = DEFAULT_BUDGET) -> LocalData:
    """[I*]_d = ((I ∩ m^d) + m^{d+1}) / m^{d+1} by linear algebra in R / m^{c+1}.

    With c the global colength, m^c ⊆ I exactly when I is m-primary, and
    then dim R/(I + m^{c+1}) = c. A smaller value means part of the
    length sits away from the origin.
    """
    gens = [g for g in I if not g.is_zero()]
    if not gens:
        raise NotPrimary("zero ideal")
    ring = gens[0].ring
    F = ring.field
    c = colength(gens, budget)
    if c == math.inf:
        raise NotPrimary("infinite colength")
    top = int(c)
    columns: list[Monomial] = []
    for d in range(top + 1):
        columns.extend(monomials_of_degree(ring.nvars, d))
    col_index = {m: k for k, m in enumerate(columns)}
    rows = []
    for g in gens:
        o = order_of(g)
        for du in range(0, top + 1 - o):
            for u in monomials_of_degree(ring.nvars, du):
                row = [0] * len(columns)
                for m, coeff in g.terms.items():
                    prod = mono_mul(m, u)
                    if sum(prod) <= top:
                        row[col_index[prod]] = coeff
                if any(row):
                    rows.append(row)
    ech, pivots = row_echelon(rows, F) if rows else ([], [])
    forms: dict = {}
    for row, p in zip(ech, pivots):
        d = sum(columns[p])
        form = Polynomial(ring, {columns[k]: v for k, v in enumerate(row) if v and sum(columns[k]) == d})
        forms.setdefault(d, []).append(form)
    local = sum(math.comb(d + ring.nvars - 1, d) - len(forms.get(d, [])) for d in range(top + 1))
    if local != c:
        raise NotPrimary(f"local length {local} at the origin differs from colength {c}")
    if 0 in forms:
        raise NotPrimary("unit ideal")
    order = min(forms) if forms else top + 1
    return LocalData(ring, order, forms, int(c), top)


# ---------------------------------------------------------------- linear forms


def is_linear_form(f: Polynomial) -> bool:
    return not f.is_zero() and all(sum(m) == 1 for m in f.terms)


def divides_form(linear: Polynomial, form: Polynomial) -> bool:
    """Whether a linear form a x + b y divides a binary form: the form vanishes at (b, -a)."""
    ring = linear.ring
    if ring.nvars != 2:
        raise ValueError("binary forms only")
    F = ring.field
    a = linear.coefficient((1, 0))
    b = linear.coefficient((0, 1))
    value = form.evaluate({ring.names[0]: b, ring.names[1]: F.neg(a)})
    return value.is_zero()


def binary_forms_share_factor(p: Polynomial, q: Polynomial) -> bool:
    """Resultant test for two binary forms of positive degree."""
    dp, dq = p.total_degree(), q.total_degree()
    cp = [p.coefficient((dp - k, k)) for k in range(dp + 1)]
    cq = [q.coefficient((dq - k, k)) for k in range(dq + 1)]
    size = dp + dq
    base = PolyRing(["u"], p.ring.field)
    rows = []
    for s in range(dq):
        rows.append([base.constant(cp[k - s]) if 0 <= k - s <= dp else base.zero for k in range(size)])
    for s in range(dp):
        rows.append([base.constant(cq[k - s]) if 0 <= k - s <= dq else base.zero for k in range(size)])
    return determinant(rows, base).is_zero()


def linear_substitution(polys: Sequence[Polynomial], matrix: Sequence[Sequence],
                        translation: Sequence | None = None) -> list[Polynomial]:
    """Substitute x_i -> sum_j matrix[i][j] x_j + translation[i]."""
    if not polys:
        return []
    ring = polys[0].ring
    gens = ring.gens()
    images = {}
    for i, nm in enumerate(ring.names):
        img = ring.zero
        for j, c in enumerate(matrix[i]):
            img = img + gens[j].scale(c)
        if translation is not None:
            img = img + ring.constant(translation[i])
        images[nm] = img
    return [p.evaluate(images) for p in polys]


def _random_scalar(rng: random.Random, F: Field, bound: int = 1000):
    if F.char:
        return rng.randrange(1, F.char)
    v = 0
    while v == 0:
        v = rng.randint(-bound, bound)
    return v


def random_linear_form(ring: PolyRing, rng: random.Random) -> Polynomial:
    F = ring.field
    out = ring.zero
    for g in ring.gens():
        out = out + g.scale(_random_scalar(rng, F))
    return out


# ---------------------------------------------------------------- families


@dataclass
class FlatFamily:
    """Generators in k[x, y, t]; ``base`` is k[x, y]."""

    base: PolyRing
    ring: PolyRing
    parameter: str
    generators: list
    checks: dict = field(default_factory=dict)

    def specialize(self, t0) -> list[Polynomial]:
        out = []
        for g in self.generators:
            s = g.evaluate({self.parameter: t0}).to_ring(self.base)
            if not s.is_zero():
                out.append(s)
        return out

    @property
    def ok(self) -> bool:
        return all(_flag(v) for v in self.checks.values())

    def to_strings(self) -> list[str]:
        return [g.to_string() for g in self.generators]


def _flag(v) -> bool:
    if isinstance(v, dict):
        return all(_flag(x) for x in v.values())
    return bool(v)


def prune_generators(gens: Sequence[Polynomial], budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Drop, last to first, every generator lying in the ideal of the others."""
    keep = list(gens)
    order = grevlex(keep[0].ring)
    for k in range(len(keep) - 1, -1, -1):
        rest = keep[:k] + keep[k + 1:]
        if rest and ideal_contains(buchberger(rest, order, budget), keep[k], order):
            keep = rest
    return keep


def family_ring(base: PolyRing, parameter: str = "t") -> PolyRing:
    if parameter in base.index:
        raise ValueError(f"parameter name {parameter!r} clashes with a ring variable")
    return PolyRing(tuple(base.names) + (parameter,), base.field)


def constant_family(I: Sequence[Polynomial], parameter: str = "t") -> FlatFamily:
    base = I[0].ring
    ring = family_ring(base, parameter)
    return FlatFamily(base, ring, parameter, [g.to_ring(ring) for g in I], {"constant": True})


def family_from(generators_t: Sequence[Polynomial], base: PolyRing, parameter: str = "t") -> FlatFamily:
    return FlatFamily(base, generators_t[0].ring, parameter, list(generators_t))


SAMPLES = (0, 1, 2, 3, 4)


def check_flatness(family: FlatFamily, expected: int, samples: Sequence = SAMPLES,
                   budget: Budget = DEFAULT_BUDGET) -> dict:
    """Colength of each sampled fibre; flat families of points keep it constant."""
    out = {}
    for t0 in samples:
        c = colength(family.specialize(t0), budget)
        out[t0] = c
    family.checks["colength_constant"] = all(c == expected for c in out.values())
    family.checks["colengths"] = {t0: c == expected for t0, c in out.items()}
    return out


def cleave_family(I: Sequence[Polynomial], f: Polynomial, ell: Polynomial, samples: Sequence = (1, 2, 3, 4),
                  parameter: str = "t", budget: Budget = DEFAULT_BUDGET) -> FlatFamily:
    """(f) + (ell - t)(I : ell) with the special fibre, the fibres away from 0 and flatness verified."""
    ring = f.ring
    if ring.nvars != 2:
        raise PreconditionError("ring", "cleaving is implemented in two variables")
    order = grevlex(ring)
    local = ord_and_initial_forms(I, budget)
    gb = buchberger(I, order, budget)
    if not ideal_contains(gb, f, order):
        raise PreconditionError("f-not-in-I", f.to_string())
    if order_of(f) != local.order:
        raise PreconditionError("ord(f)!=ord(I)", f"{order_of(f)} vs {local.order}")
    if not is_linear_form(ell):
        raise PreconditionError("ell-not-linear-form", ell.to_string())
    if divides_form(ell, initial_form(f)):
        raise PreconditionError("initial-forms-not-coprime", f"{ell.to_string()} | {initial_form(f).to_string()}")
    quotient = colon(I, ell, budget)
    ring_t = family_ring(ring, parameter)
    t = ring_t.gen(parameter)
    lt = ell.to_ring(ring_t) - t
    gens = prune_generators([f.to_ring(ring_t)] + [lt * q.to_ring(ring_t) for q in quotient], budget)
    fam = FlatFamily(ring, ring_t, parameter, gens)
    fam.checks["special_fibre"] = same_ideal(fam.specialize(0), I, order, budget)
    inter_ok = {}
    away_ok = {}
    for t0 in samples:
        if t0 == 0:
            continue
        moved = [f, ell - ring.constant(t0)]
        inter_ok[t0] = same_ideal(fam.specialize(t0), intersect(moved, quotient, budget), order, budget)
        # the moved component misses the origin: ell - t0 is a nonzero constant there
        away_ok[t0] = not (ell - ring.constant(t0)).evaluate({nm: 0 for nm in ring.names}).is_zero()
    fam.checks["intersection"] = inter_ok
    fam.checks["moved_component_off_origin"] = away_ok
    check_flatness(fam, local.colength, (0,) + tuple(s for s in samples if s != 0), budget)
    return fam


# ---------------------------------------------------------------- pairs


@dataclass
class CleavedPair:
    case: str
    trace: list
    larger: FlatFamily  # I^(t)
    smaller: FlatFamily  # J^(t)
    inclusion: dict  # t0 -> bool

    @property
    def ok(self) -> bool:
        return self.larger.ok and self.smaller.ok and all(self.inclusion.values())


def _element_with_form(I: Sequence[Polynomial], target: Polynomial, degree: int) -> Polynomial | None:
    """An element of I whose degree-``degree`` part is ``target`` (degree = ord(I))."""
    ring = target.ring
    cols = monomials_of_degree(ring.nvars, degree)
    basis = [[homogeneous_part(g, degree).coefficient(m) for m in cols] for g in I]
    sol = solve_in_span(basis, [target.coefficient(m) for m in cols], ring.field)
    if sol is None:
        return None
    out = ring.zero
    for c, g in zip(sol, I):
        if c:
            out = out + g.scale(c)
    return out


def _general_choice(I: Sequence[Polynomial], local: LocalData, rng: random.Random, tries: int = 50,
                    forbidden: Sequence[Polynomial] = ()) -> tuple[Polynomial, Polynomial]:
    """A pair (f, ell) with ord(f) = ord(I), ell* coprime to f* and ell outside I."""
    ring = I[0].ring
    order = grevlex(ring)
    gb = buchberger(I, order)
    pool = list(I) + list(gb)
    lowest = [g for g in pool if order_of(g) == local.order]
    for _ in range(tries):
        f = ring.zero
        for g in lowest:
            f = f + g.scale(_random_scalar(rng, ring.field))
        if order_of(f) != local.order:
            continue
        ell = random_linear_form(ring, rng)
        if divides_form(ell, initial_form(f)) or ideal_contains(gb, ell, order):
            continue
        if any(divides_form(ell, form) for form in forbidden):
            continue
        return f, ell
    raise CaseError("no general linear form found", [])


def _same(I, J) -> bool:
    return same_ideal(I, J, grevlex(I[0].ring))


def cleave_pair(I: Sequence[Polynomial], J: Sequence[Polynomial], seed: int = 0,
                samples: Sequence = (0, 1, 2), budget: Budget = DEFAULT_BUDGET) -> CleavedPair:
    """Families I^(t) ⊆ J^(t) through the pair I ⊆ J, following the case split on
    colength(J), ord(I) and the quadratic part of I*. Non-normal-form inputs raise CaseError.
    """
    ring = I[0].ring
    if ring.nvars != 2:
        raise CaseError("two variables required", [])
    x, y = ring.gens()
    order = grevlex(ring)
    trace: list[str] = []
    rng = random.Random(f"cleave:{seed}")
    local_i = ord_and_initial_forms(I, budget)
    local_j = ord_and_initial_forms(J, budget)
    c1, c2 = local_i.colength, local_j.colength
    trace.append(f"colength(I)={c1}, colength(J)={c2}, ord(I)={local_i.order}")
    gb_j = buchberger(J, order, budget)
    if not all(ideal_contains(gb_j, g, order) for g in I):
        raise CaseError("I is not contained in J", trace)
    if c1 < 2 or c2 not in (1, 2):
        raise CaseError("need colength(I) >= 2 and colength(J) in {1, 2}", trace)

    def general(forbidden=()):
        return _general_choice(I, local_i, rng, forbidden=forbidden)

    if c2 == 1:
        case = "J=m"
        f, ell = general()
        fam_i, fam_j = cleave_family(I, f, ell, budget=budget), constant_family(J)
    elif local_i.order == 1:
        case = "ord(I)=1"
        if not (_same(I, [x, y ** c1]) and _same(J, [x, y ** 2])):
            raise CaseError("expected the normal form (x, y^r) ⊆ (x, y^2)", trace)
        fam_i = cleave_family(I, x, y, budget=budget)
        fam_j = cleave_family(J, x, y, budget=budget)
    elif local_i.order >= 3:
        case = "ord(I)>=3"
        f, ell = general()
        fam_i, fam_j = cleave_family(I, f, ell, budget=budget), constant_family(J)
    else:
        quad = local_i.forms.get(2, [])
        trace.append(f"dim[I*]_2={len(quad)}")
        w = _linear_generator(J, local_j)
        trace.append(f"w={w.to_string()}")
        if len(quad) == 3:
            case = "I=m^2"
            if not (c1 == 3 and _same(J, [x, y ** 2])):
                raise CaseError("expected I = m^2 and J = (x, y^2)", trace)
            fam_i = cleave_family(I, x ** 2, y, budget=budget)
            fam_j = cleave_family(J, x, y, budget=budget)
        elif len(quad) == 1:
            case = "dim[I*]_2=1"
            q = quad[0]
            f = _element_with_form(I, q, 2)
            ell = _coprime_linear(ring, rng, [q])
            fam_i, fam_j = cleave_family(I, f, ell, budget=budget), constant_family(J)
        else:
            fam_i, fam_j, case = _two_quadrics(I, J, local_i, w, rng, trace, budget)
    trace.append(f"case={case}")
    inclusion = {}
    for t0 in samples:
        small = buchberger(fam_j.specialize(t0), order, budget)
        inclusion[t0] = all(ideal_contains(small, g, order) for g in fam_i.specialize(t0))
    if fam_j.checks.get("constant"):
        fam_j.checks["special_fibre"] = True
    check_flatness(fam_j, c2, SAMPLES, budget)
    return CleavedPair(case, trace, fam_i, fam_j, inclusion)


def _linear_generator(J: Sequence[Polynomial], local_j: LocalData) -> Polynomial:
    """The homogeneous linear w with J = (w) + m^2 (colength(J) = 2)."""
    forms = local_j.forms.get(1, [])
    if len(forms) != 1:
        raise CaseError("J is not of the form (w) + m^2", [f"dim[J*]_1={len(forms)}"])
    return forms[0]


def _coprime_linear(ring: PolyRing, rng: random.Random, forms: Sequence[Polynomial]) -> Polynomial:
    for _ in range(100):
        ell = random_linear_form(ring, rng)
        if not any(divides_form(ell, q) for q in forms):
            return ell
    raise CaseError("no coprime linear form found", [])


def _span_equal(forms: Sequence[Polynomial], targets: Sequence[Polynomial], degree: int) -> bool:
    ring = forms[0].ring
    cols = monomials_of_degree(ring.nvars, degree)
    a = [[f.coefficient(m) for m in cols] for f in forms]
    b = [[f.coefficient(m) for m in cols] for f in targets]
    F = ring.field
    ra = len(row_echelon(a, F)[1])
    return ra == len(row_echelon(b, F)[1]) == len(row_echelon(a + b, F)[1])


def _two_quadrics(I, J, local_i: LocalData, w: Polynomial, rng: random.Random, trace: list, budget: Budget):
    ring = w.ring
    x, y = ring.gens()
    order = grevlex(ring)
    gb_i = buchberger(I, order, budget)
    quad = local_i.forms[2]
    has_x2 = ideal_contains(gb_i, x ** 2, order)
    has_xy = ideal_contains(gb_i, x * y, order)
    trace.append(f"x^2 in I: {has_x2}, xy in I: {has_xy}")
    if has_x2 and has_xy:
        case = "common-factor"
        ell = _coprime_linear(ring, rng, [x * w, w])
        fam_i = cleave_family(I, x * w, ell, budget=budget)
        fam_j = cleave_family(J, w, ell, budget=budget)
        return fam_i, fam_j, case
    if not has_xy:
        raise CaseError("expected xy in I (normal form (xy, u x^2 - y^p))", trace)
    if _span_equal(quad, [x ** 2, x * y], 2):
        trace.append("p>=3")
        if not divides_form(w, x):
            case = "p>=3, gcd(x,w)=1"
            q = _element_with_form(I, x ** 2, 2)
            fam_i = cleave_family(I, q, w, budget=budget)
            fam_j = family_from([g.to_ring(fam_i.ring) for g in [q]] +
                                [w.to_ring(fam_i.ring) - fam_i.ring.gen(fam_i.parameter)], ring)
            fam_j.checks["special_fibre"] = _same(fam_j.specialize(0), J)
        else:
            case = "p>=3, w=x"
            ell = _coprime_linear(ring, rng, [x * y, w])
            fam_i = cleave_family(I, x * y, ell, budget=budget)
            fam_j = cleave_family(J, w, ell, budget=budget)
        return fam_i, fam_j, case
    other = [g for g in quad if not _span_equal([g], [x * y], 2)]
    coeff_ok = False
    if other:
        target = other[0]
        # reduce modulo xy and test for u x^2 - y^2 with u nonzero
        a = target.coefficient((2, 0))
        c = target.coefficient((0, 2))
        coeff_ok = bool(a) and bool(c)
    if not coeff_ok:
        raise CaseError("quadratic part is neither span(x^2, xy) nor span(xy, u x^2 - y^2)", trace)
    trace.append("p=2")
    if not divides_form(w, x) and not divides_form(w, y):
        case = "p=2, w coprime to xy"
        fam_i = cleave_family(I, x * y, w, budget=budget)
        ring_t = fam_i.ring
        fam_j = family_from([(x * y).to_ring(ring_t), w.to_ring(ring_t) - ring_t.gen(fam_i.parameter)], ring)
        fam_j.checks["special_fibre"] = _same(fam_j.specialize(0), J)
    else:
        case = "p=2, w divides xy"
        ell = _coprime_linear(ring, rng, [x * y, w])
        fam_i = cleave_family(I, x * y, ell, budget=budget)
        fam_j = cleave_family(J, w, ell, budget=budget)
    return fam_i, fam_j, case


# ---------------------------------------------------------------- generic initial ideals


def random_invertible_matrix(n: int, F: Field, rng: random.Random) -> list[list]:
    base = PolyRing(["u"], F)
    while True:
        M = [[_random_scalar(rng, F) for _ in range(n)] for _ in range(n)]
        det = determinant([[base.constant(v) for v in row] for row in M], base)
        if not det.is_zero():
            return M


def gin(I: Sequence[Polynomial], seed: int = 0, retries: int = 5, budget: Budget = DEFAULT_BUDGET) -> list[Monomial]:
    """Minimal generators of the grevlex initial ideal in random coordinates,
    accepted once two independent draws agree."""
    ring = I[0].ring
    if colength(I, budget) == math.inf:
        raise ValueError("gin needs finite colength")
    order = grevlex(ring)
    rng = random.Random(f"gin:{seed}")
    previous = None
    for _ in range(retries + 1):
        M = random_invertible_matrix(ring.nvars, ring.field, rng)
        current = sorted(initial_ideal(linear_substitution(I, M), order, budget), reverse=True)
        if current == previous:
            return current
        previous = current
    raise GinDisagreement("independent draws disagree; enlarge the field")


def is_borel_fixed(monos: Sequence[Monomial]) -> bool:
    """Stable under x_j -> x_i for i < j (earlier variables are larger)."""
    gens = minimize_monomials(monos)
    for m in gens:
        for j in range(len(m)):
            if not m[j]:
                continue
            for i in range(j):
                moved = list(m)
                moved[j] -= 1
                moved[i] += 1
                if not any(mono_divides(g, tuple(moved)) for g in gens):
                    return False
    return True


def lowest_monomial(monos: Sequence[Monomial], nvars: int) -> Monomial:
    """The grevlex-smallest monomial of the ideal: it sits in the least generator degree."""
    gens = minimize_monomials(monos)
    d = min(sum(g) for g in gens)
    members = [m for m in monomials_of_degree(nvars, d) if any(mono_divides(g, m) for g in gens)]
    order = grevlex(PolyRing([f"v{i}" for i in range(nvars)]))
    return min(members, key=order.key)


def remove_lowest(monos: Sequence[Monomial], nvars: int) -> list[Monomial]:
    u = lowest_monomial(monos, nvars)
    gens = [g for g in minimize_monomials(monos) if g != u]
    for i in range(nvars):
        e = list(u)
        e[i] += 1
        gens.append(tuple(e))
    return sorted(minimize_monomials(gens), reverse=True)


def _random_point(F: Field, rng: random.Random, nvars: int) -> tuple:
    return tuple(_random_scalar(rng, F) for _ in range(nvars))


def point_ideal(ring: PolyRing, point: Sequence) -> list[Polynomial]:
    return [g - ring.constant(c) for g, c in zip(ring.gens(), point)]


@dataclass
class PointStep:
    predicted: list
    observed: list
    point: tuple
    ideal: list  # generators of I ∩ I_Q

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed


def add_point_step(ideal: Sequence[Polynomial], B: Sequence[Monomial], rng: random.Random, tries: int = 3,
                   budget: Budget = DEFAULT_BUDGET) -> PointStep:
    ring = ideal[0].ring
    order = grevlex(ring)
    predicted = remove_lowest(B, ring.nvars)
    last = None
    for _ in range(tries):
        Q = _random_point(ring.field, rng, ring.nvars)
        meet = intersect(list(ideal), point_ideal(ring, Q), budget)
        observed = sorted(initial_ideal(meet, order, budget), reverse=True)
        last = PointStep(predicted, observed, Q, meet)
        if last.ok:
            return last
    raise VerificationMismatch(f"predicted {predicted}, observed {last.observed} at {last.point}")


def add_point_initial(B: Sequence[Monomial], seed: int = 0, ring: PolyRing | None = None,
                      budget: Budget = DEFAULT_BUDGET) -> list[Monomial]:
    """B minus its lowest monomial, checked against in(B ∩ I_Q) for a random point Q."""
    ring = ring or plane_ring()
    B = minimize_monomials(B)
    if count_standard_monomials(B, ring.nvars) == math.inf:
        raise ValueError("B must have finite colength")
    if not is_borel_fixed(B):
        raise ValueError("B must be Borel-fixed")
    rng = random.Random(f"point:{seed}")
    step = add_point_step([ring.monomial(m) for m in B], B, rng, budget=budget)
    return step.predicted


@dataclass
class DegenerationRun:
    start: list
    steps: list  # PointStep per added point
    final: list
    target: list

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps) and self.final == self.target


def power_of_maximal(nvars: int, n: int) -> list[Monomial]:
    return sorted(monomials_of_degree(nvars, n), reverse=True)


def degenerate_to_power(I: Sequence[Polynomial], n: int, seed: int = 0,
                        budget: Budget = DEFAULT_BUDGET) -> DegenerationRun:
    """Add general points to I until the colength is binom(n+1, 2), tracking the initial ideal.

    The caller supplies I with Borel-fixed grevlex initial ideal (for
    instance after a generic change of coordinates); the run verifies
    every step against the one-point prediction and the end against m^n.
    """
    ring = I[0].ring
    order = grevlex(ring)
    rng = random.Random(f"degenerate:{seed}:{n}")
    B = sorted(initial_ideal(I, order, budget), reverse=True)
    if not is_borel_fixed(B):
        raise ValueError("in(I) must be Borel-fixed")
    start = B
    need = math.comb(n + 1, 2) - count_standard_monomials(B, ring.nvars)
    if need < 0:
        raise ValueError("colength already exceeds binom(n+1, 2)")
    current = list(I)
    steps = []
    for _ in range(need):
        step = add_point_step(current, B, rng, budget=budget)
        steps.append(step)
        current, B = step.ideal, step.observed
    return DegenerationRun(start, steps, B, power_of_maximal(ring.nvars, n))


# ---------------------------------------------------------------- reducibility count


@dataclass(frozen=True)
class ReducibleWitness:
    parts: int
    r: int
    partition: tuple
    dim_grassmannians: int
    bound: int  # r^2

    def to_json(self) -> dict:
        return {"d": self.parts, "r": self.r, "lambda": list(self.partition),
                "dim_G": self.dim_grassmannians, "r_squared": self.bound}


def grassmannian_dimension(d: int, r: int) -> int:
    return sum(((r + 1 - i + 1) // 2) * ((r + 1 - i) // 2) for i in range(1, d + 1))


def reducible_partition(d: int, r: int) -> tuple:
    return tuple(math.comb(r + 1 - i, 2) + (r + 1 - i) // 2 for i in range(1, d + 1))


def reducible_search(d: int) -> ReducibleWitness:
    """Smallest r >= d with dim G(d, r) > r^2."""
    if d < 5:
        raise ValueError("d >= 5 required")
    r = d
    while grassmannian_dimension(d, r) <= r * r:
        r += 1
    return ReducibleWitness(d, r, reducible_partition(d, r), grassmannian_dimension(d, r), r * r)
