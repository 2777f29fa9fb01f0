"""Division, Buchberger's algorithm, ideal operations and Hilbert series."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .exactpoly import (
    Monomial,
    Polynomial,
    PolyRing,
    TermOrder,
    elimination_order,
    grevlex,
    minimize_monomials,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    normalize_rational,
    rational_div,
    support_mask,
)


class BudgetExceeded(RuntimeError):
    """A configured resource cap was hit; the answer is unknown, not wrong."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} budget of {limit} exceeded")
        self.what = what
        self.limit = limit


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 10**6
    max_degree: int = 60


DEFAULT_BUDGET = Budget()


@dataclass
class DivisionResult:
    quotients: list
    remainder: Polynomial


@dataclass
class GroebnerCheck:
    ok: bool
    pairs_checked: int
    pairs_skipped: int
    failing_pair: tuple | None = None
    remainder: Polynomial | None = None


@dataclass
class HilbertData:
    """Hilbert series N(t)/(1-t)^nvars of ring/ideal."""

    nvars: int
    numerator: list
    dims: list = field(default_factory=list)

    @property
    def codimension(self) -> int:
        return _reduced_numerator(self.numerator)[0]

    @property
    def dimension(self) -> int:
        return self.nvars - self.codimension

    @property
    def multiplicity(self) -> int:
        return sum(_reduced_numerator(self.numerator)[1])


# ---------------------------------------------------------------- reducers


class _Reducer:
    __slots__ = ("lm", "mask", "lc", "terms", "poly")

    def __init__(self, poly: Polynomial, order: TermOrder):
        lm, lc = poly.leading_term(order)
        self.lm = lm
        self.mask = support_mask(lm)
        self.lc = lc
        self.terms = list(poly.terms.items())
        self.poly = poly


def _reduce(f_terms: dict, reducers: list, order: TermOrder, char: int, quotients: list | None = None,
            nvars: int = 0) -> dict:
    """Full reduction of ``f_terms`` (consumed) by ``reducers``; returns the remainder terms."""
    key = order.key
    remainder: dict = {}
    heap = [(_neg(key(m)), m) for m in f_terms]
    heapq.heapify(heap)
    p = f_terms
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if c is None:
            continue
        mmask = 0
        for i, e in enumerate(m):
            if e:
                mmask |= 1 << i
        hit = -1
        for idx, r in enumerate(reducers):
            if r.mask & ~mmask:
                continue
            if all(a >= b for a, b in zip(m, r.lm)):
                hit = idx
                break
        if hit < 0:
            remainder[m] = c
            del p[m]
            continue
        r = reducers[hit]
        factor = c * pow(r.lc, -1, char) % char if char else rational_div(c, r.lc)
        shift = tuple(a - b for a, b in zip(m, r.lm))
        if quotients is not None:
            qd = quotients[hit]
            val = qd.get(shift, 0) + factor
            val = val % char if char else normalize_rational(val)
            if val:
                qd[shift] = val
            else:
                qd.pop(shift, None)
        for mg, cg in r.terms:
            mm = tuple(a + b for a, b in zip(mg, shift))
            old = p.get(mm)
            if char:
                new = ((old or 0) - factor * cg) % char
            else:
                new = normalize_rational((old or 0) - factor * cg)
            if new:
                if old is None:
                    heapq.heappush(heap, (_neg(key(mm)), mm))
                p[mm] = new
            elif old is not None:
                del p[mm]
    return remainder


def _neg(k: tuple) -> tuple:
    return tuple(-a for a in k)


def divide(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> DivisionResult:
    """Multivariate division; the first divisor whose LM divides the current term is used."""
    if any(g.is_zero() for g in G):
        raise ValueError("division by the zero polynomial")
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise ValueError("divisors live in a different ring")
    reducers = [_Reducer(g, order) for g in G]
    quotients = [dict() for _ in G]
    rem = _reduce(dict(f.terms), reducers, order, ring.field.char, quotients)
    return DivisionResult([Polynomial(ring, q) for q in quotients], Polynomial(ring, rem))


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    reducers = [_Reducer(g, order) for g in G if not g.is_zero()]
    return Polynomial(f.ring, _reduce(dict(f.terms), reducers, order, f.ring.field.char))


# ---------------------------------------------------------------- buchberger


def _spoly_terms(a: _Reducer, b: _Reducer, char: int) -> dict:
    lcm = mono_lcm(a.lm, b.lm)
    sa = mono_div(lcm, a.lm)
    sb = mono_div(lcm, b.lm)
    if char:
        ia, ib = pow(a.lc, -1, char), pow(b.lc, -1, char)
    else:
        ia, ib = rational_div(1, a.lc), rational_div(1, b.lc)
    out: dict = {}
    for m, c in a.terms:
        mm = tuple(x + y for x, y in zip(m, sa))
        out[mm] = out.get(mm, 0) + c * ia
    for m, c in b.terms:
        mm = tuple(x + y for x, y in zip(m, sb))
        out[mm] = out.get(mm, 0) - c * ib
    if char:
        return {m: c % char for m, c in out.items() if c % char}
    return {m: normalize_rational(c) for m, c in out.items() if c != 0}


def _monic(poly: Polynomial, order: TermOrder) -> Polynomial:
    return poly.monic(order)


def buchberger(gens: Sequence[Polynomial], order: TermOrder, budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Reduced Gröbner basis, sorted by decreasing leading monomial.

    Normal selection strategy with sugar tie-break and Gebauer-Möller
    pair elimination.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    char = ring.field.char
    key = order.key

    basis: list[_Reducer] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []  # heap of (key(lcm), sugar, i, j)
    live_pairs: set = set()

    def add(poly: Polynomial, sug: int):
        nonlocal active
        h = len(basis)
        rec = _Reducer(_monic(poly, order), order)
        basis.append(rec)
        sugar.append(sug)
        lm_h = rec.lm
        # Gebauer-Möller: new pairs
        cands = list(active)
        kept: list[int] = []
        lcms = {g: mono_lcm(basis[g].lm, lm_h) for g in cands}
        while cands:
            g1 = cands.pop(0)
            l1 = lcms[g1]
            if mono_coprime(basis[g1].lm, lm_h) or not any(
                    mono_divides(lcms[g2], l1) for g2 in cands + kept):
                kept.append(g1)
        new_pairs = [g for g in kept if not mono_coprime(basis[g].lm, lm_h)]
        # Gebauer-Möller: prune old pairs
        for pr in list(live_pairs):
            i, j = pr
            lij = mono_lcm(basis[i].lm, basis[j].lm)
            if (mono_divides(lm_h, lij) and mono_lcm(basis[i].lm, lm_h) != lij
                    and mono_lcm(basis[j].lm, lm_h) != lij):
                live_pairs.discard(pr)
        for g in new_pairs:
            lcm = lcms[g]
            s = max(sugar[g] + sum(lcm) - sum(basis[g].lm), sug + sum(lcm) - sum(lm_h))
            live_pairs.add((g, h))
            heapq.heappush(pairs, (key(lcm), s, g, h))
        active = [g for g in active if not mono_divides(lm_h, basis[g].lm)] + [h]

    # seed in increasing LM order so that GM sees small elements first
    seeds = sorted(gens, key=lambda g: key(g.leading_monomial(order)))
    for g in seeds:
        reducers = [basis[i] for i in active]
        rem = _reduce(dict(g.terms), reducers, order, char)
        if rem:
            poly = Polynomial(ring, rem)
            _check_degree(poly, budget)
            add(poly, g.total_degree())

    processed = 0
    while pairs:
        _, s, i, j = heapq.heappop(pairs)
        if (i, j) not in live_pairs:
            continue
        live_pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded("pairs", budget.max_pairs)
        sp = _spoly_terms(basis[i], basis[j], char)
        if not sp:
            continue
        reducers = [basis[k] for k in active]
        rem = _reduce(sp, reducers, order, char)
        if rem:
            poly = Polynomial(ring, rem)
            _check_degree(poly, budget)
            add(poly, max(s, poly.total_degree()))

    return _interreduce([basis[i].poly for i in active], order)


def _check_degree(poly: Polynomial, budget: Budget):
    if poly.total_degree() > budget.max_degree:
        raise BudgetExceeded("degree", budget.max_degree)


def _interreduce(polys: Sequence[Polynomial], order: TermOrder) -> list[Polynomial]:
    key = order.key
    polys = sorted(polys, key=lambda g: key(g.leading_monomial(order)))
    lms = [g.leading_monomial(order) for g in polys]
    keep = [g for k, g in enumerate(polys)
            if not any(mono_divides(lms[i], lms[k]) for i in range(len(polys)) if i != k and
                       (lms[i] != lms[k] or i < k))]
    out = []
    for k, g in enumerate(keep):
        others = [h for i, h in enumerate(keep) if i != k]
        out.append(_monic(normal_form_tail(g, others, order), order))
    return sorted(out, key=lambda g: key(g.leading_monomial(order)), reverse=True)


def normal_form_tail(g: Polynomial, others: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    lm, lc = g.leading_term(order)
    tail = dict(g.terms)
    del tail[lm]
    reduced = Polynomial(g.ring, _reduce(tail, [_Reducer(h, order) for h in others], order, g.ring.field.char))
    return reduced + g.ring.monomial(lm, lc)


def is_groebner(G: Sequence[Polynomial], order: TermOrder, budget: Budget = DEFAULT_BUDGET) -> GroebnerCheck:
    """S-pair criterion; pairs with coprime leading monomials are skipped (Buchberger's first criterion)."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return GroebnerCheck(True, 0, 0)
    char = G[0].ring.field.char
    recs = [_Reducer(g, order) for g in G]
    checked = skipped = 0
    for i in range(len(recs)):
        for j in range(i + 1, len(recs)):
            if mono_coprime(recs[i].lm, recs[j].lm):
                skipped += 1
                continue
            checked += 1
            if checked > budget.max_pairs:
                raise BudgetExceeded("pairs", budget.max_pairs)
            rem = _reduce(_spoly_terms(recs[i], recs[j], char), recs, order, char)
            if rem:
                return GroebnerCheck(False, checked, skipped, (i, j), Polynomial(G[0].ring, rem))
    return GroebnerCheck(True, checked, skipped)


def initial_ideal(gens: Sequence[Polynomial], order: TermOrder, budget: Budget = DEFAULT_BUDGET) -> list[Monomial]:
    """Minimal monomial generators of in(ideal)."""
    gb = buchberger(gens, order, budget)
    return minimize_monomials(g.leading_monomial(order) for g in gb)


def ideal_contains(gb: Sequence[Polynomial], f: Polynomial, order: TermOrder) -> bool:
    return normal_form(f, gb, order).is_zero()


def same_ideal(I: Sequence[Polynomial], J: Sequence[Polynomial], order: TermOrder,
               budget: Budget = DEFAULT_BUDGET) -> bool:
    return ([g.terms for g in buchberger(I, order, budget)] ==
            [g.terms for g in buchberger(J, order, budget)])


# ---------------------------------------------------------------- ideal operations


def _fresh_name(ring: PolyRing, stem: str = "tag") -> str:
    k = 0
    while f"{stem}{k}" in ring.index:
        k += 1
    return f"{stem}{k}"


def intersect(I: Sequence[Polynomial], J: Sequence[Polynomial], budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of I ∩ J by eliminating a tag variable from tag*I + (1-tag)*J."""
    I = [g for g in I if not g.is_zero()]
    J = [g for g in J if not g.is_zero()]
    if not I or not J:
        return []
    ring = I[0].ring
    tag = _fresh_name(ring)
    big = PolyRing((tag,) + ring.names, ring.field)
    t = big.gen(tag)
    gens = [t * g.to_ring(big) for g in I] + [(1 - t) * g.to_ring(big) for g in J]
    order = elimination_order(big, [tag])
    gb = buchberger(gens, order, budget)
    out = [g.to_ring(ring) for g in gb if g.leading_monomial(order)[0] == 0]
    return buchberger(out, grevlex(ring), budget) if out else []


def colon(I: Sequence[Polynomial], f: Polynomial, budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of I : f, via I ∩ (f) divided by f."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    ring = f.ring
    order = grevlex(ring)
    inter = intersect(I, [f], budget)
    quotients = []
    for g in inter:
        res = divide(g, [f], order)
        if not res.remainder.is_zero():
            raise ArithmeticError("intersection element not divisible by f")
        quotients.append(res.quotients[0])
    return buchberger(quotients, order, budget) if quotients else []


def eliminate(gens: Sequence[Polynomial], names: Sequence[str], budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of the ideal intersected with the subring without ``names``."""
    ring = gens[0].ring
    order = elimination_order(ring, names)
    idx = [ring.index[nm] for nm in names]
    gb = buchberger(gens, order, budget)
    return [g for g in gb if all(m[i] == 0 for m in g.terms for i in idx)]


def colength(gens: Sequence[Polynomial], budget: Budget = DEFAULT_BUDGET) -> int | float:
    """dim_k R/I via standard monomials of the grevlex initial ideal; math.inf if infinite."""
    if not gens:
        return math.inf
    ring = gens[0].ring
    monos = initial_ideal(gens, grevlex(ring), budget)
    return count_standard_monomials(monos, ring.nvars)


def count_standard_monomials(monos: Sequence[Monomial], nvars: int) -> int | float:
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in monos if all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0]
        if not pure and not any(sum(m) == 0 for m in monos):
            return math.inf
        bounds.append(min(pure) if pure else 0)
    if any(sum(m) == 0 for m in monos):
        return 0
    return sum(1 for e in product(*(range(b) for b in bounds)) if not any(mono_divides(m, e) for m in monos))


def standard_monomials(monos: Sequence[Monomial], nvars: int) -> list[Monomial]:
    if count_standard_monomials(monos, nvars) == math.inf:
        raise ValueError("infinitely many standard monomials")
    if any(sum(m) == 0 for m in monos):
        return []
    bounds = [min(m[i] for m in monos if m[i] > 0 and sum(m) == m[i]) for i in range(nvars)]
    return [e for e in product(*(range(b) for b in bounds)) if not any(mono_divides(m, e) for m in monos)]


# ---------------------------------------------------------------- hilbert series


def hilbert_numerator(monos: Sequence[Monomial], nvars: int) -> list:
    """Coefficient list of N(t) with HS(R/I) = N(t)/(1-t)^nvars, by pivot recursion."""
    gens = minimize_monomials(tuple(m) for m in monos)
    return _hn(gens)


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _one_minus_t_power(d: int) -> list:
    out = [0] * (d + 1)
    out[0] = 1
    out[d] -= 1
    return out


def _minimal(gens: list) -> list:
    gens = sorted(set(gens), key=sum)
    out: list = []
    for m in gens:
        if not any(all(a >= b for a, b in zip(m, g)) for g in out):
            out.append(m)
    return out


def _hn(gens: list) -> list:
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    # split into variable-disjoint components
    comps = _components(gens)
    if len(comps) > 1:
        result = [1]
        for comp in comps:
            result = _poly_mul(result, _hn(comp))
        return result
    if len(gens) == 1:
        return _one_minus_t_power(sum(gens[0]))
    nv = len(gens[0])
    counts = [0] * nv
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    var = max(range(nv), key=lambda i: counts[i])
    exps = sorted(m[var] for m in gens if m[var])
    e = exps[len(exps) // 2]
    # keep the pivot outside the ideal, otherwise I + (pivot) = I and nothing shrinks
    pure = [m[var] for m in gens if sum(m) == m[var]]
    if pure:
        e = min(e, min(pure) - 1)
    pivot = tuple(e if i == var else 0 for i in range(nv))
    plus = _minimal([m for m in gens if m[var] < e] + [pivot])
    quot = _minimal([tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in gens])
    left = _hn(plus)
    right = _hn(quot)
    return _poly_add(left, [0] * e + right)


def _components(gens: list) -> list:
    masks = [support_mask(m) for m in gens]
    groups: list = []  # (mask, members)
    for m, mk in zip(gens, masks):
        merged_mask, members = mk, [m]
        rest = []
        for gm, gmem in groups:
            if gm & merged_mask:
                merged_mask |= gm
                members += gmem
            else:
                rest.append((gm, gmem))
        groups = rest + [(merged_mask, members)]
    # merging may chain; repeat until stable
    changed = True
    while changed:
        changed = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if groups[a][0] & groups[b][0]:
                    groups[a] = (groups[a][0] | groups[b][0], groups[a][1] + groups[b][1])
                    del groups[b]
                    changed = True
                    break
            if changed:
                break
    return [g[1] for g in groups]


def _reduced_numerator(num: list) -> tuple:
    """Write N(t) = (1-t)^c Q(t) with Q(1) != 0; returns (c, Q)."""
    c = 0
    q = list(num)
    while len(q) > 1 and sum(q) == 0:
        # synthetic division by (1 - t): Q_k = sum_{i<=k} N_i
        out = []
        acc = 0
        for a in q[:-1]:
            acc += a
            out.append(acc)
        q = out
        c += 1
    return c, q


def series_dims(numerator: list, nvars: int, cutoff: int) -> list:
    """Coefficients of N(t)/(1-t)^nvars up to degree ``cutoff``."""
    dims = []
    for d in range(cutoff + 1):
        total = 0
        for i, a in enumerate(numerator):
            if i <= d and a:
                total += a * math.comb(d - i + nvars - 1, nvars - 1) if nvars else (a if d == i else 0)
        dims.append(total)
    return dims


def hilbert_of_monomials(monos: Sequence[Monomial], nvars: int, cutoff: int = 0) -> HilbertData:
    num = hilbert_numerator(monos, nvars)
    return HilbertData(nvars, num, series_dims(num, nvars, cutoff))


def hilbert(gens: Sequence[Polynomial], order: TermOrder, cutoff: int = 0,
            budget: Budget = DEFAULT_BUDGET) -> HilbertData:
    """Hilbert data of R/I from the initial ideal of I."""
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("hilbert needs homogeneous generators")
    nvars = order.nvars
    monos = initial_ideal(gens, order, budget) if gens else []
    return hilbert_of_monomials(monos, nvars, cutoff)
