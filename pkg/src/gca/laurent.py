"""Exact sparse Laurent polynomial arithmetic over the integers.

Values live in Z[x1^{+-1}, ..., xm^{+-1}] for variables named by positive
integers.  Everything is kept in a canonical sparse form (no stored zero
coefficients, no stored zero exponents), so structural equality is
mathematical equality.  Coefficients are arbitrary-precision ints and all
operations are exact; there is no floating point anywhere.

A monomial is a sorted tuple of (variable, exponent) pairs with nonzero
exponents; the empty tuple is the constant monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping

from .errors import NegativePowerAtZero, NotDivisible, ZeroPolynomial

Monomial = tuple[tuple[int, int], ...]


def _mono(exps: Mapping[int, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        n = out.get(v, 0) + e
        if n:
            out[v] = n
        else:
            del out[v]
    return tuple(sorted(out.items()))


def _mono_pow(a: Monomial, n: int) -> Monomial:
    return tuple((v, e * n) for v, e in a) if n else ()


@dataclass(frozen=True)
class LexOrder:
    """Lexicographic term order given by a priority list of variables.

    Variables earlier in ``priority`` are compared first; any variables not
    listed are appended in ascending index order.  The default (empty
    priority) compares x1, then x2, and so on.
    """

    priority: tuple[int, ...] = ()

    def sequence(self, universe: Iterable[int]) -> tuple[int, ...]:
        rest = sorted(set(universe) - set(self.priority))
        return tuple(self.priority) + tuple(rest)


DEFAULT_ORDER = LexOrder()


class LaurentPoly:
    """An immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({(): int(c)})

    @classmethod
    def variable(cls, v: int) -> "LaurentPoly":
        return cls({((v, 1),): 1})

    @classmethod
    def term(cls, coeff: int, exps: Mapping[int, int]) -> "LaurentPoly":
        return cls({_mono(exps): int(coeff)})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(): 1}

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for +-(single monomial), the units of the Laurent ring."""
        if len(self._terms) != 1:
            return False
        return abs(next(iter(self._terms.values()))) == 1

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def min_exponent(self, v: int) -> int:
        """Smallest exponent of ``v`` over all terms (0 for absent factors)."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return min(dict(m).get(v, 0) for m in self._terms)

    def max_exponent(self, v: int) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return max(dict(m).get(v, 0) for m in self._terms)

    def int_content(self) -> int:
        return math.gcd(*(abs(c) for c in self._terms.values())) if self._terms else 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            n = out.get(m, 0) + c
            if n:
                out[m] = n
            else:
                del out[m]
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                n = out.get(m, 0) + ca * cb
                if n:
                    out[m] = n
                else:
                    del out[m]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit Laurent polynomial")
            mono, coeff = next(iter(self._terms.items()))
            # coeff is +-1, so coeff^n = coeff^|n| without leaving the integers
            return LaurentPoly({_mono_pow(mono, n): coeff ** abs(n)})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        bits = []
        for m, c in sorted_terms(self):
            factors = "*".join(
                f"x{v}^{e}" if e != 1 else f"x{v}" for v, e in m
            )
            bits.append(f"{c}" + (f"*{factors}" if factors else ""))
        return "LaurentPoly(" + " + ".join(bits) + ")"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.constant(1)


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    return NotImplemented


def sorted_terms(
    p: LaurentPoly, order: LexOrder = DEFAULT_ORDER, reverse: bool = False
) -> list[tuple[Monomial, int]]:
    """Terms of ``p`` sorted ascending (or descending) in the given order."""
    seq = order.sequence(p.variables())
    pos = {v: i for i, v in enumerate(seq)}

    def key(item):
        dense = [0] * len(seq)
        for v, e in item[0]:
            dense[pos[v]] = e
        return tuple(dense)

    # Priority variables compare first, so the dense key is already in
    # comparison order.
    return sorted(p.items(), key=key, reverse=reverse)


def leading_term(p: LaurentPoly, order: LexOrder = DEFAULT_ORDER) -> tuple[Monomial, int]:
    """The greatest term of ``p`` under ``order``."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no leading term")
    return sorted_terms(p, order, reverse=True)[0]


# -- spec operations ----------------------------------------------------


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def fraction_parts(p: LaurentPoly) -> tuple[LaurentPoly, dict[int, int]]:
    """Write ``p`` as numerator / monomial: returns (numerator, denominator exps).

    The numerator is an ordinary polynomial whose minimal exponent in every
    variable is 0, and the denominator is the monomial prod x_v^{d_v} with
    d_v = max(0, -min exponent of v in p).
    """
    if p.is_zero():
        return ZERO, {}
    denom = {}
    shift = {}
    for v in p.variables():
        lo = p.min_exponent(v)
        if lo < 0:
            denom[v] = -lo
            shift[v] = -lo
    return p * LaurentPoly.term(1, shift), denom


def _monomial_free(p: LaurentPoly) -> LaurentPoly:
    """Shift exponents so every variable's minimal exponent is 0."""
    if p.is_zero():
        return p
    shift = {}
    for v in p.variables():
        lo = p.min_exponent(v)
        if lo != 0:
            shift[v] = -lo
    return p * LaurentPoly.term(1, shift) if shift else p


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring: returns r with r*q = p.

    Raises NotDivisible when no such Laurent polynomial exists.  Division by
    a single-term q always succeeds.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if q.is_single_term():
        mono, coeff = next(iter(q.terms.items()))
        inv = _mono_pow(mono, -1)
        out = {}
        for m, c in p.items():
            if c % coeff:
                raise NotDivisible(f"coefficient {c} not divisible by {coeff}")
            out[_mono_mul(m, inv)] = c // coeff
        return LaurentPoly(out)

    # Reduce to ordinary polynomials: monomials are units, so divisibility
    # is unchanged by clearing each side's monomial content.
    num = _monomial_free(p)
    den = _monomial_free(q)
    quot = _poly_divide(num, den)
    # Restore the monomial factor num/den carried.
    shift = {}
    for v in set(p.variables()) | set(q.variables()):
        dv = p.min_exponent(v) if v in p.variables() else 0
        ev = q.min_exponent(v) if v in q.variables() else 0
        if dv - ev:
            shift[v] = dv - ev
    return quot * LaurentPoly.term(1, shift) if shift else quot


def _poly_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division of ordinary polynomials by single-divisor lex reduction."""
    seq = DEFAULT_ORDER.sequence(p.variables() | q.variables())
    pos = {v: i for i, v in enumerate(seq)}

    def key(m: Monomial):
        dense = [0] * len(seq)
        for v, e in m:
            dense[pos[v]] = e
        return tuple(dense)

    q_terms = q.terms
    lead_q = max(q_terms, key=key)
    cq = q_terms[lead_q]
    inv_lead = _mono_pow(lead_q, -1)

    remainder = p
    quotient: dict[Monomial, int] = {}
    while not remainder.is_zero():
        lead_r = max(remainder.terms, key=key)
        cr = remainder.coefficient(lead_r)
        t = _mono_mul(lead_r, inv_lead)
        if any(e < 0 for _, e in t) or cr % cq:
            raise NotDivisible("no exact polynomial quotient")
        c = cr // cq
        quotient[t] = c
        remainder = remainder - LaurentPoly({t: c}) * q
    return LaurentPoly(quotient)


# -- multivariate gcd ---------------------------------------------------


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor of the polynomial parts of p and q.

    Monomial content is cleared first (monomials are units here) and the
    result is normalized: no monomial content, positive leading coefficient
    in the default lexicographic order.  Integer content is kept, so
    gcd(2, 2) = 2 and gcd(p, p) is p normalized.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    g = _gcd_poly(_monomial_free(p), _monomial_free(q))
    return _normalize(g)


def _normalize(p: LaurentPoly) -> LaurentPoly:
    p = _monomial_free(p)
    if p.is_zero():
        return p
    _, lead_coeff = leading_term(p)
    return -p if lead_coeff < 0 else p


def _gcd_poly(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd of ordinary polynomials via content/primitive-part recursion."""
    shared = p.variables() & q.variables()
    if not shared:
        # Common divisors can only involve shared variables.
        return LaurentPoly.constant(math.gcd(p.int_content(), q.int_content()))
    v = min(shared)
    cont_p, pp_p = _content_pp(p, v)
    cont_q, pp_q = _content_pp(q, v)
    c = _gcd_poly(cont_p, cont_q)
    return c * _prs_gcd(pp_p, pp_q, v)


def _content_pp(p: LaurentPoly, v: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Content (gcd of v-coefficients) and primitive part with respect to v."""
    coeffs = list(decompose_by_variable(p, v).values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_one():
            break
        cont = _gcd_poly(cont, c)
    cont = _normalize(cont)
    return cont, divide_exact(p, cont)


def _lead_coeff_in(p: LaurentPoly, v: int) -> tuple[int, LaurentPoly]:
    d = p.max_exponent(v)
    return d, decompose_by_variable(p, v)[d]


def _prem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    """Pseudo-remainder of a by b with respect to v: lc(b)^N * a mod b."""
    db, lb = _lead_coeff_in(b, v)
    da = a.max_exponent(v)
    n = da - db + 1
    r = a
    while not r.is_zero():
        dr = r.max_exponent(v) if v in r.variables() else 0
        if dr < db:
            break
        lr = decompose_by_variable(r, v)[dr]
        r = lb * r - lr * LaurentPoly.term(1, {v: dr - db}) * b
        n -= 1
    return (lb ** n) * r if n > 0 else r


def _prs_gcd(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    """gcd of v-primitive polynomials by the subresultant remainder sequence."""
    if a.max_exponent(v) < b.max_exponent(v):
        a, b = b, a
    g = ONE
    h = ONE
    while True:
        delta = a.max_exponent(v) - (b.max_exponent(v) if v in b.variables() else 0)
        r = _prem(a, b, v)
        if r.is_zero():
            return _content_pp(b, v)[1]
        if v not in r.variables():
            return ONE
        a, b = b, divide_exact(r, g * h ** delta)
        _, g = _lead_coeff_in(a, v)
        if delta == 1:
            h = g
        elif delta > 1:
            h = divide_exact(g ** delta, h ** (delta - 1))


# -- decomposition and substitution --------------------------------------


def decompose_by_variable(p: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Write p = sum_k c_k v^k with no c_k involving v; returns {k: c_k}."""
    buckets: dict[int, dict[Monomial, int]] = {}
    for m, c in p.items():
        d = dict(m)
        k = d.pop(v, 0)
        buckets.setdefault(k, {})[tuple(sorted(d.items()))] = c
    return {k: LaurentPoly(t) for k, t in sorted(buckets.items())}


def leading_term_wrt(p: LaurentPoly, v: int) -> tuple[int, LaurentPoly]:
    """The minimal power of v in p together with its coefficient polynomial."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no leading term")
    comps = decompose_by_variable(p, v)
    a = min(comps)
    return a, comps[a]


def specialize(p: LaurentPoly, v: int, value: LaurentPoly | int) -> LaurentPoly:
    """Substitute v := value and renormalize.

    value = 0 implements the evaluation that kills every term containing v;
    it requires that v occurs with no negative exponent.  Substituting into
    negative powers is supported only for invertible (single +-1 term)
    values.
    """
    value = _coerce(value)
    comps = decompose_by_variable(p, v)
    out = ZERO
    for k, c in comps.items():
        if k == 0:
            out = out + c
        elif k > 0:
            if value.is_zero():
                continue
            out = out + c * value ** k
        else:
            if value.is_zero():
                raise NegativePowerAtZero(
                    f"x{v} appears with exponent {k}; substituting 0 leaves the Laurent ring"
                )
            if not value.is_unit():
                raise ValueError("cannot substitute a non-unit into negative powers")
            out = out + c * value ** k
    return out


def compose(p: LaurentPoly, subs: Mapping[int, LaurentPoly]) -> LaurentPoly:
    """Substitute subs[v] for every variable v of p that appears in subs.

    Negative exponents on substituted variables are allowed only when the
    substituted value is a unit.
    """
    out = ZERO
    cache: dict[tuple[int, int], LaurentPoly] = {}
    for m, c in p.items():
        factor = LaurentPoly.constant(c)
        for v, e in m:
            if v in subs:
                key = (v, e)
                if key not in cache:
                    cache[key] = subs[v] ** e
                factor = factor * cache[key]
            else:
                factor = factor * LaurentPoly.term(1, {v: e})
        out = out + factor
    return out


# -- exact rational linear algebra ---------------------------------------


def rational_rank(rows: Iterable[LaurentPoly]) -> int:
    """Rank over Q of the monomial-coefficient matrix of the given rows.

    Columns are indexed by every monomial occurring in any row (frozen
    variables included as ordinary columns), and the rank is computed by
    exact rational elimination.
    """
    rows = list(rows)
    monos = sorted({m for p in rows for m in p.terms})
    index = {m: i for i, m in enumerate(monos)}
    mat = []
    for p in rows:
        vec = [Fraction(0)] * len(monos)
        for m, c in p.items():
            vec[index[m]] = Fraction(c)
        mat.append(vec)
    return _rank(mat)


def _rank(mat: list[list[Fraction]]) -> int:
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        for r in range(row + 1, len(mat)):
            if mat[r][col] != 0:
                f = mat[r][col] / pv
                for c in range(col, cols):
                    mat[r][c] -= f * mat[row][c]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def solve_rational(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve rows * x = rhs exactly over Q.

    Returns one solution (free variables set to 0) or None when the system
    is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return x
