"""Exact sparse multivariate polynomials over Q or a prime field.

Polynomials are immutable maps from dense exponent tuples to nonzero
coefficients. Rational coefficients are kept as ``int`` when integral and as
``Fraction`` otherwise; residues mod p are ints in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...]
Coeff = Union[int, Fraction]

DEFAULT_PRIME = 32003


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RingMismatch(ValueError):
    pass


# ---------------------------------------------------------------- fields


@dataclass(frozen=True)
class Field:
    """Q when ``char == 0``, otherwise the prime field F_char."""

    char: int = 0

    def __post_init__(self):
        if self.char < 0 or self.char == 1:
            raise ValueError("characteristic must be 0 or a prime")
        if self.char > 1 and any(self.char % q == 0 for q in range(2, int(self.char**0.5) + 1)):
            raise ValueError(f"{self.char} is not prime")

    def __call__(self, value) -> Coeff:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.char:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.char) % self.char
            return int(value) % self.char
        return normalize_rational(value)

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        return (a + b) % self.char if self.char else normalize_rational(a + b)

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        return a * b % self.char if self.char else normalize_rational(a * b)

    def neg(self, a: Coeff) -> Coeff:
        return -a % self.char if self.char else -a

    def inv(self, a: Coeff) -> Coeff:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(a, -1, self.char)
        return normalize_rational(Fraction(1) / a)

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        if self.char:
            return a * pow(b, -1, self.char) % self.char
        return rational_div(a, b)

    def __str__(self) -> str:
        return "QQ" if self.char == 0 else f"GF({self.char})"

    @staticmethod
    def parse(text: str) -> "Field":
        text = text.strip().upper()
        if text in ("QQ", "Q", "0"):
            return QQ
        m = re.fullmatch(r"(?:GF\(?|F_?|P)?(\d+)\)?", text)
        if not m:
            raise ValueError(f"unknown field {text!r}")
        return Field(int(m.group(1)))


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


def normalize_rational(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def rational_div(a: Coeff, b: Coeff) -> Coeff:
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return normalize_rational(Fraction(a) / b)


# ---------------------------------------------------------------- monomials


def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a - b for a, b in zip(u, v))


def mono_divides(v: Monomial, u: Monomial) -> bool:
    """True iff v divides u."""
    return all(a >= b for a, b in zip(u, v))


def mono_lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a if a > b else b for a, b in zip(u, v))


def mono_coprime(u: Monomial, v: Monomial) -> bool:
    return not any(a and b for a, b in zip(u, v))


def support_mask(u: Monomial) -> int:
    mask = 0
    for i, e in enumerate(u):
        if e:
            mask |= 1 << i
    return mask


def minimize_monomials(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators of a monomial ideal, sorted."""
    result: list[Monomial] = []
    for m in sorted(set(monos), key=lambda u: (sum(u), u)):
        if not any(mono_divides(g, m) for g in result):
            result.append(m)
    return sorted(result)


# ---------------------------------------------------------------- term orders


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by weight rows refined by lex or revlex.

    ``priority`` lists variable indices from most to least significant. For
    ``revlex`` the tie-break favours the monomial with the smaller exponent in
    the least significant variable, as in grevlex.
    """

    name: str
    nvars: int
    weights: tuple = ()
    tiebreak: str = "revlex"
    priority: tuple = ()
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if sorted(self.priority) != list(range(self.nvars)):
            raise ValueError("priority must be a permutation of the variables")
        if self.tiebreak not in ("lex", "revlex"):
            raise ValueError("tiebreak must be 'lex' or 'revlex'")
        if any(w < 0 for row in self.weights for w in row):
            raise ValueError("weight rows must be nonnegative")
        if self.tiebreak == "revlex" and not all(
                any(row[i] > 0 for row in self.weights) for i in range(self.nvars)):
            raise ValueError("revlex needs every variable to carry positive weight")
        rows = [tuple(w) for w in self.weights]
        if self.tiebreak == "lex":
            order = self.priority
            sign = 1
        else:
            order = tuple(reversed(self.priority))
            sign = -1

        def weighted_key(m, rows=rows, order=order, sign=sign):
            head = tuple(sum(w * e for w, e in zip(row, m)) for row in rows)
            return head + tuple(sign * m[i] for i in order)

        key = weighted_key
        if not rows and self.tiebreak == "lex":
            key = lambda m, order=order: tuple(m[i] for i in order)  # noqa: E731
        elif len(rows) == 1 and all(w == 1 for w in rows[0]):
            key = lambda m, order=order, sign=sign: (sum(m),) + tuple(sign * m[i] for i in order)  # noqa: E731
        object.__setattr__(self, "key", key)

    def compare(self, u: Monomial, v: Monomial) -> Cmp:
        if len(u) != self.nvars or len(v) != self.nvars:
            raise RingMismatch("monomial length does not match the order")
        ku, kv = self.key(u), self.key(v)
        return Cmp.GT if ku > kv else Cmp.LT if ku < kv else Cmp.EQ

    def describe(self) -> dict:
        return {"name": self.name, "weights": [list(w) for w in self.weights],
                "tiebreak": self.tiebreak, "priority": list(self.priority)}


def _priority(ring: "PolyRing", names: Sequence[str] | None) -> tuple:
    if names is None:
        return tuple(range(ring.nvars))
    idx = tuple(ring.index[nm] for nm in names)
    if sorted(idx) != list(range(ring.nvars)):
        raise ValueError("priority must list every variable once")
    return idx


def grevlex(ring: "PolyRing", priority: Sequence[str] | None = None) -> TermOrder:
    """Graded reverse lex; ``priority`` lists variables from largest to smallest."""
    return TermOrder("grevlex", ring.nvars, ((1,) * ring.nvars,), "revlex", _priority(ring, priority))


def lex(ring: "PolyRing", priority: Sequence[str] | None = None) -> TermOrder:
    return TermOrder("lex", ring.nvars, (), "lex", _priority(ring, priority))


def weighted_revlex(ring: "PolyRing", weights: Sequence[int], priority: Sequence[str] | None = None) -> TermOrder:
    return TermOrder("weighted-revlex", ring.nvars, (tuple(weights),), "revlex", _priority(ring, priority))


def weighted_lex(ring: "PolyRing", rows: Sequence[Sequence[int]], priority: Sequence[str] | None = None) -> TermOrder:
    return TermOrder("weighted-lex", ring.nvars, tuple(tuple(r) for r in rows), "lex", _priority(ring, priority))


def elimination_order(ring: "PolyRing", eliminate: Sequence[str]) -> TermOrder:
    """Block order: the eliminated block dominates, grevlex breaks ties."""
    block = tuple(1 if nm in eliminate else 0 for nm in ring.names)
    rows = (block, (1,) * ring.nvars)
    return TermOrder("elimination", ring.nvars, rows, "revlex", tuple(range(ring.nvars)))


# ---------------------------------------------------------------- gradings


EVERY_DEGREE = "all"


@dataclass(frozen=True)
class Bigrading:
    deg1: tuple
    deg2: tuple

    def of_monomial(self, m: Monomial) -> tuple:
        return (sum(a * e for a, e in zip(self.deg1, m)), sum(a * e for a, e in zip(self.deg2, m)))

    def bidegree(self, f: "Polynomial"):
        """(d1, d2) if ``f`` is bihomogeneous, None otherwise; EVERY_DEGREE for 0."""
        if not f.terms:
            return EVERY_DEGREE
        degrees = {self.of_monomial(m) for m in f.terms}
        return degrees.pop() if len(degrees) == 1 else None


def bigraded_lex(ring: "PolyRing", grading: Bigrading, priority: Sequence[str] | None = None) -> TermOrder:
    return TermOrder("bigraded-lex", ring.nvars, (grading.deg1, grading.deg2), "lex", _priority(ring, priority))


# ---------------------------------------------------------------- rings

_VARNAME = r"[A-Za-z][A-Za-z0-9_]*"


class PolyRing:
    """An ordered variable set together with a coefficient field."""

    def __init__(self, names: Sequence[str], field: Field = QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for nm in names:
            if not re.fullmatch(_VARNAME, nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.nvars = len(names)
        self.field = field
        self.index = {nm: i for i, nm in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field})"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(nm) for nm in self.names]

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        coeff = self.field(coeff)
        return Polynomial(self, {tuple(exps): coeff} if coeff != 0 else {})

    def from_terms(self, terms: Mapping[Monomial, Coeff]) -> "Polynomial":
        out = {}
        for m, c in terms.items():
            c = self.field(c)
            if c != 0:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.names, field)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).polynomial()

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def coefficient(self, m: Monomial) -> Coeff:
        return self.terms.get(tuple(m), 0)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(m) for m in self.terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max(sum(w * e for w, e in zip(weights, m)) for m in self.terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            weights = (1,) * self.ring.nvars
        return len({sum(w * e for w, e in zip(weights, m)) for m in self.terms}) <= 1

    def variables(self) -> list[str]:
        used = [False] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return [nm for nm, u in zip(self.ring.names, used) if u]

    # -- leading data
    def leading_term(self, order: TermOrder) -> tuple:
        if not self.terms:
            raise ValueError("leading term of the zero polynomial")
        if order.nvars != self.ring.nvars:
            raise RingMismatch("order does not match the ring")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: TermOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, str)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.char
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            else:
                s = normalize_rational(s)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.char
        return Polynomial(self.ring, {m: (-c % p if p else -c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if c == 0:
            return self.ring.zero
        F = self.ring.field
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.field.char
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: normalize_rational(c) for m, c in out.items() if c != 0}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        F = self.ring.field
        if coeff == 0:
            return self.ring.zero
        return Polynomial(self.ring, {mono_mul(m, mono): F.mul(c, coeff) for m, c in self.terms.items()})

    def exact_divide(self, divisor: "Polynomial", order: TermOrder) -> "Polynomial":
        """Quotient when ``divisor`` divides ``self``; ValueError otherwise."""
        from .groebner import divide

        res = divide(self, [divisor], order)
        if not res.remainder.is_zero():
            raise ValueError("division is not exact")
        return res.quotients[0]

    # -- substitution and ring changes
    def evaluate(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute polynomials or scalars for the named variables."""
        ring = self.ring
        subst = {}
        for nm, val in values.items():
            i = ring.index[nm]
            subst[i] = val if isinstance(val, Polynomial) else ring.constant(val)
        powers: dict = {}
        result = ring.zero
        for m, c in self.terms.items():
            keep = list(m)
            term = None
            for i, e in enumerate(m):
                if e and i in subst:
                    keep[i] = 0
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = powers[(i, e)] = subst[i] ** e
                    term = pw if term is None else term * pw
            mono = ring.monomial(tuple(keep), c)
            result = result + (mono if term is None else mono * term)
        return result

    def to_ring(self, ring: PolyRing, drop: Sequence[str] = ()) -> "Polynomial":
        """Re-express in ``ring`` by variable name.

        Variables listed in ``drop`` are set to zero; any other variable
        missing from ``ring`` must not occur.
        """
        src = self.ring
        mapping = []
        for i, nm in enumerate(src.names):
            mapping.append(ring.index.get(nm, -1 if nm not in drop else -2))
        out = {}
        F = ring.field
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            skip = False
            for i, a in enumerate(m):
                if not a:
                    continue
                j = mapping[i]
                if j == -2:
                    skip = True
                    break
                if j < 0:
                    raise RingMismatch(f"variable {src.names[i]} is not in the target ring")
                e[j] = a
            if skip:
                continue
            key = tuple(e)
            val = F.add(out.get(key, 0), F(c))
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return Polynomial(ring, out)

    def coefficients_in(self, names: Sequence[str], target: PolyRing) -> dict:
        """Group terms by the exponents of ``names``; coefficients go to ``target``."""
        idx = [self.ring.index[nm] for nm in names]
        groups: dict = {}
        for m, c in self.terms.items():
            outer = tuple(m[i] for i in idx)
            inner = list(m)
            for i in idx:
                inner[i] = 0
            groups.setdefault(outer, {})[tuple(inner)] = c
        return {k: Polynomial(self.ring, v).to_ring(target) for k, v in groups.items()}

    # -- text
    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m in sorted(self.terms, key=lambda u: (-sum(u), tuple(-e for e in u))):
            c = self.terms[m]
            factors = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, m) if e]
            neg = c < 0 if not self.ring.field.char else False
            mag = -c if neg else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# ---------------------------------------------------------------- parser


class _Parser:
    _token = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>" + _VARNAME + r")|(?P<op>[-+*^()]))")

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = self._token.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", len(text) - len(text[pos:].lstrip()))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def polynomial(self) -> Polynomial:
        ring = self.ring
        result = ring.zero
        sign = 1
        kind, val, pos = self._peek()
        if kind == "end":
            raise ParseError("empty polynomial", pos)
        if kind == "op" and val in "+-":
            self._next()
            sign = -1 if val == "-" else 1
        while True:
            term = self.term()
            result = result + (term if sign > 0 else -term)
            kind, val, pos = self._peek()
            if kind == "end":
                return result
            if kind == "op" and val in "+-":
                self._next()
                sign = -1 if val == "-" else 1
                continue
            raise ParseError(f"expected '+' or '-' but found {val!r}", pos)

    def term(self) -> Polynomial:
        ring = self.ring
        coeff: Coeff = 1
        exps = [0] * ring.nvars
        kind, val, pos = self._peek()
        if kind == "num":
            self._next()
            coeff = Fraction(val)
            if coeff.denominator == 0:
                raise ParseError("zero denominator", pos)
            kind, val, pos = self._peek()
            if not (kind == "op" and val == "*"):
                return ring.constant(coeff)
            self._next()
        while True:
            kind, val, pos = self._next()
            if kind != "var":
                raise ParseError(f"expected a variable but found {val or 'end of input'!r}", pos)
            if val not in ring.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            power = 1
            k2, v2, p2 = self._peek()
            if k2 == "op" and v2 == "^":
                self._next()
                k3, v3, p3 = self._next()
                if k3 != "num" or "/" in v3:
                    raise ParseError("expected a nonnegative integer exponent", p3)
                power = int(v3)
            exps[ring.index[val]] += power
            k2, v2, _ = self._peek()
            if k2 == "op" and v2 == "*":
                self._next()
                continue
            break
        return ring.monomial(tuple(exps), coeff)


# ---------------------------------------------------------------- matrices


def determinant(matrix: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Division-free determinant by column-wise Laplace expansion with memoization."""
    k = len(matrix)
    if k == 0:
        return ring.one
    if any(len(row) != k for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    return _minor_table(matrix, ring, k)[tuple(range(k))]


def maximal_minors(matrix: Sequence[Sequence[Polynomial]], ring: PolyRing) -> list[Polynomial]:
    """Minors of a (k+1) x k matrix; entry i deletes row i."""
    rows = len(matrix)
    k = rows - 1
    table = _minor_table(matrix, ring, k)
    return [table[tuple(r for r in range(rows) if r != i)] for i in range(rows)]


def _minor_table(matrix, ring: PolyRing, k: int) -> dict:
    """Minors on the first k columns for every k-subset of rows."""
    from itertools import combinations

    rows = len(matrix)
    prev = {(): ring.one}
    for col in range(k):
        cur = {}
        for subset in combinations(range(rows), col + 1):
            acc = ring.zero
            for pos, r in enumerate(subset):
                entry = matrix[r][col]
                if entry.is_zero():
                    continue
                rest = subset[:pos] + subset[pos + 1:]
                sub = prev[rest]
                if sub.is_zero():
                    continue
                term = entry * sub
                acc = acc + term if (pos + col) % 2 == 0 else acc - term
            cur[subset] = acc
        prev = cur
    return prev
