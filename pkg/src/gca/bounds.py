"""Standard monomials and the lower/upper bound membership machinery.

The lower bound is the subalgebra generated by every x_i and its exchange
partner x_i'; the upper bound is the n-fold intersection of the adjacent
Laurent rings.  Standard monomials (no factor x_i x_i') index the natural
spanning set of the lower bound, and for acyclic seeds they are linearly
independent over the frozen coefficient ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisible, NotNormalized
from .laurent import (
    LaurentPoly,
    Monomial,
    decompose_by_variable,
    divide_exact,
    rational_rank,
    solve_rational,
    specialize,
)
from .seed import GeneralizedSeed, exchange_polynomial, mutate
from .structure import acyclic_certificate, gamma_graph
from .verdicts import MembershipVerdict

StandardMonomialIndex = tuple[int, ...]


def exchange_partner(s: GeneralizedSeed, i: int) -> LaurentPoly:
    """x_i' in initial coordinates, read off the mutated seed."""
    return mutate(s, i).cluster[i - 1]


def standard_monomial_expand(
    s: GeneralizedSeed,
    a: StandardMonomialIndex,
    _partners: dict[int, LaurentPoly] | None = None,
) -> LaurentPoly:
    """Expand prod_i x_i^{(a_i)} in initial coordinates.

    Positive entries use x_i, negative entries use powers of x_i'; by
    construction no factor x_i x_i' occurs.
    """
    partners = _partners if _partners is not None else {}
    out = LaurentPoly.constant(1)
    for pos, i in enumerate(s.ex):
        ai = a[pos]
        if ai >= 0:
            out = out * s.cluster[i - 1] ** ai
        else:
            if i not in partners:
                partners[i] = exchange_partner(s, i)
            out = out * partners[i] ** (-ai)
    return out


def enumerate_standard_monomials(
    s: GeneralizedSeed, bound: int
) -> list[StandardMonomialIndex]:
    """All index vectors a with max |a_i| <= bound, ascending lexicographically."""
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    span = range(-bound, bound + 1)
    return [tuple(a) for a in itertools.product(span, repeat=s.n)]


def _expand_all(
    s: GeneralizedSeed, indices: Iterable[StandardMonomialIndex]
) -> dict[StandardMonomialIndex, LaurentPoly]:
    partners: dict[int, LaurentPoly] = {}
    return {a: standard_monomial_expand(s, a, partners) for a in indices}


def independence_check(s: GeneralizedSeed, bound: int) -> bool:
    """True iff the expanded standard monomials up to the bound have full rank.

    The rank is taken over the rationals with frozen-variable exponents
    folded into the monomial columns, a necessary face of independence over
    the frozen coefficient ring; for acyclic seeds it holds at every bound.
    """
    indices = enumerate_standard_monomials(s, bound)
    expanded = _expand_all(s, indices)
    return rational_rank(expanded.values()) == len(indices)


def upper_bound_membership(s: GeneralizedSeed, y: LaurentPoly) -> MembershipVerdict:
    """Membership of y in the n-fold intersection defining the upper bound.

    For each direction k the coefficient of every negative power of x_k must
    be exactly divisible by the matching power of the exchange polynomial
    P_k.  The verdict stores each quotient, or the first failing (k, j).
    ``y`` is read in the seed's own variable labels.
    """
    quotients: dict[tuple[int, int], LaurentPoly] = {}
    for i in s.ex:
        p_i = exchange_polynomial(s, i).poly
        for k, c in decompose_by_variable(y, i).items():
            if k >= 0:
                continue
            try:
                q = divide_exact(c, p_i ** (-k))
            except NotDivisible:
                return MembershipVerdict(member=False, failing=(i, k), witness=c)
            quotients[(i, k)] = q
    return MembershipVerdict(member=True, quotients=quotients)


def _split_mono(mono: Monomial, exchangeable: frozenset[int]) -> tuple[Monomial, Monomial]:
    ex_part = tuple((v, e) for v, e in mono if v in exchangeable)
    fr_part = tuple((v, e) for v, e in mono if v not in exchangeable)
    return ex_part, fr_part


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for v, e in b:
        n = out.get(v, 0) - e
        if n:
            out[v] = n
        else:
            del out[v]
    return tuple(sorted(out.items()))


def default_reduction_bound(s: GeneralizedSeed, y: LaurentPoly) -> int:
    """1 + the largest total exchangeable degree appearing in y."""
    exchangeable = set(s.ex)
    best = 0
    for mono, _ in y.items():
        best = max(best, sum(abs(e) for v, e in mono if v in exchangeable))
    return best + 1


def reduce_to_standard(
    s: GeneralizedSeed, y: LaurentPoly, bound: int | None = None
) -> MembershipVerdict:
    """Solve y = sum_a lambda_a x^(a) with frozen-ring coefficients.

    Exact linear algebra over the monomial support, with candidate frozen
    monomials folded into the column index; coefficients must come out
    integral.  A negative verdict means "no combination within this bound"
    and records the bound used; it is inconclusive for larger bounds.
    """
    if bound is None:
        bound = default_reduction_bound(s, y)
    indices = enumerate_standard_monomials(s, bound)
    expanded = _expand_all(s, indices)
    exchangeable = frozenset(s.ex)

    # Columns are pairs (index a, frozen monomial g).  Candidates for g are
    # grown to a fixed point: a column is admitted when its shifted
    # expansion can touch the current monomial pool, and the pool absorbs
    # every admitted column's support (columns may cancel among themselves
    # on monomials outside y).
    split_cache = {
        a: [_split_mono(m, exchangeable) for m in e_a.terms] for a, e_a in expanded.items()
    }
    pool: set[tuple[Monomial, Monomial]] = {
        _split_mono(m, exchangeable) for m in y.terms
    }
    keys: set[tuple[StandardMonomialIndex, Monomial]] = set()
    for _ in range(4):
        new_keys = set(keys)
        for a, parts in split_cache.items():
            pool_by_ex: dict[Monomial, set[Monomial]] = {}
            for p_ex, p_fr in pool:
                pool_by_ex.setdefault(p_ex, set()).add(p_fr)
            for ex_part, fr_part in parts:
                for p_fr in pool_by_ex.get(ex_part, ()):
                    new_keys.add((a, _mono_sub(p_fr, fr_part)))
        if new_keys == keys:
            break
        keys = new_keys
        for a, g in keys:
            shift = LaurentPoly({g: 1})
            for m in (shift * expanded[a]).terms:
                pool.add(_split_mono(m, exchangeable))

    columns: list[tuple[StandardMonomialIndex, Monomial, LaurentPoly]] = [
        (a, g, LaurentPoly({g: 1}) * expanded[a]) for a, g in sorted(keys)
    ]

    if not columns:
        return MembershipVerdict(
            member=y.is_zero(), coefficients={}, bound=bound,
            detail="no candidate columns within bound",
        )

    support = sorted({m for _, _, p in columns for m in p.terms} | set(y.terms))
    row_of = {m: r for r, m in enumerate(support)}
    mat = [[Fraction(0)] * len(columns) for _ in support]
    for cidx, (_, _, p) in enumerate(columns):
        for m, c in p.items():
            mat[row_of[m]][cidx] = Fraction(c)
    rhs = [Fraction(0)] * len(support)
    for m, c in y.items():
        rhs[row_of[m]] = Fraction(c)

    solution = solve_rational(mat, rhs)
    if solution is None:
        return MembershipVerdict(
            member=False, bound=bound, detail="not found within bound"
        )
    if any(x.denominator != 1 for x in solution):
        return MembershipVerdict(
            member=False, bound=bound,
            detail="rational solution exists but coefficients are not integral",
        )

    coeffs: dict[StandardMonomialIndex, LaurentPoly] = {}
    for (a, g, _), x in zip(columns, solution):
        if x:
            coeffs[a] = coeffs.get(a, LaurentPoly.zero()) + LaurentPoly({g: int(x)})
    coeffs = {a: c for a, c in coeffs.items() if not c.is_zero()}

    # Re-expansion must reproduce y exactly; anything else is a non-member.
    check = LaurentPoly.zero()
    for a, lam in coeffs.items():
        check = check + lam * expanded[a]
    if check != y:
        return MembershipVerdict(
            member=False, bound=bound, detail="candidate reduction failed re-expansion"
        )
    return MembershipVerdict(member=True, coefficients=coeffs, bound=bound)


@dataclass(frozen=True)
class FImageBasis:
    """Generators of the image of the evaluation sending the pivot to 0.

    For every other exchangeable j the pair (x_j, xhat_j) is stored, where
    xhat_j = x_j' when b_{pivot,j} = 0 and xhat_j = x_j^{-1} otherwise;
    ``special`` lists the j with b_{pivot,j} = 0.
    """

    pivot: int
    pairs: tuple[tuple[int, LaurentPoly, LaurentPoly], ...]
    special: tuple[int, ...]

    def apply(self, y: LaurentPoly) -> LaurentPoly:
        """The evaluation itself: kill every term containing the pivot."""
        return specialize(y, self.pivot, 0)


def f_image_generators(s: GeneralizedSeed, pivot: int) -> FImageBasis:
    """Case-split generators for the pivot evaluation on an acyclic seed.

    The pivot must be extremal in the exchange digraph (a source or a
    sink), i.e. able to head a normalized acyclic order.
    """
    cert = acyclic_certificate(s)
    if not cert.present:
        raise NotNormalized("seed is not acyclic")
    if pivot not in s.ex:
        raise NotNormalized(f"pivot {pivot} is not exchangeable")
    edges = gamma_graph(s).edges
    outgoing = any(i == pivot for i, _ in edges)
    incoming = any(j == pivot for _, j in edges)
    if outgoing and incoming:
        raise NotNormalized(f"pivot {pivot} cannot head a normalized order")

    pairs = []
    special = []
    for j in s.ex:
        if j == pivot:
            continue
        if s.b(pivot, j) == 0:
            xhat = exchange_partner(s, j)
            special.append(j)
        else:
            xhat = LaurentPoly.term(1, {j: -1})
        pairs.append((j, s.cluster[j - 1], xhat))
    return FImageBasis(pivot=pivot, pairs=tuple(pairs), special=tuple(special))
