"""Generalized seeds of geometric type and their mutations.

A seed carries an extended cluster of m variables (n of them exchangeable),
one string of frozen-monomial coefficients per exchangeable direction, and
an m x n extended exchange matrix whose principal part is
skew-symmetrizable.  Cluster entries are stored as exact Laurent
polynomials in the fixed initial variables, so the Laurent phenomenon is
checked by construction: every mutation performs one exact division.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    DirectionNotExchangeable,
    FreezeAll,
    InvalidIndex,
    LaurentViolation,
    NotDivisible,
)
from .laurent import LaurentPoly, compose, divide_exact
from .verdicts import ValidationReport


def _pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class GeneralizedString:
    """The coefficient string of one exchange direction.

    ``entries`` has length d+1 for degree d; both endpoints are 1 and the
    interior entries are monomials (single terms) in the frozen variables.
    """

    entries: tuple[LaurentPoly, ...]

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    def reverse(self) -> "GeneralizedString":
        return GeneralizedString(self.entries[::-1])

    @classmethod
    def trivial(cls, degree: int) -> "GeneralizedString":
        one = LaurentPoly.constant(1)
        return cls((one,) * (degree + 1))


@dataclass(frozen=True)
class ExchangePolynomial:
    """The multinomial right-hand side of one exchange relation.

    ``poly`` is expressed symbolically in the seed's own variable labels and
    never involves the exchange direction itself.
    """

    poly: LaurentPoly
    direction: int


@dataclass(frozen=True)
class GeneralizedSeed:
    """An immutable generalized seed; mutation and freezing return new seeds.

    Conventions: variables are labeled 1..m; ``ex`` is ascending; ``d`` and
    ``strings`` run parallel to ``ex``; ``bmat`` is an m x n matrix whose
    columns follow ``ex``; ``cluster[i-1]`` is variable i written in the
    initial variables (frozen entries stay equal to their own variable).
    """

    m: int
    ex: tuple[int, ...]
    d: tuple[int, ...]
    strings: tuple[GeneralizedString, ...]
    bmat: tuple[tuple[int, ...], ...]
    cluster: tuple[LaurentPoly, ...]

    @property
    def n(self) -> int:
        return len(self.ex)

    @property
    def frozen(self) -> tuple[int, ...]:
        exch = set(self.ex)
        return tuple(i for i in range(1, self.m + 1) if i not in exch)

    def col(self, i: int) -> int:
        try:
            return self.ex.index(i)
        except ValueError:
            raise DirectionNotExchangeable(f"variable {i} is not exchangeable")

    def b(self, row: int, col_label: int) -> int:
        return self.bmat[row - 1][self.col(col_label)]

    def principal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.bmat[i - 1]) for i in self.ex)

    def degree_of(self, i: int) -> int:
        return self.d[self.col(i)]

    def string_of(self, i: int) -> GeneralizedString:
        return self.strings[self.col(i)]

    @classmethod
    def initial(
        cls,
        m: int,
        ex: Sequence[int],
        d: Sequence[int],
        strings: Sequence[GeneralizedString],
        bmat: Sequence[Sequence[int]],
    ) -> "GeneralizedSeed":
        """Build a seed whose cluster is the identity assignment x_i -> x_i."""
        cluster = tuple(LaurentPoly.variable(i) for i in range(1, m + 1))
        return cls(
            m=int(m),
            ex=tuple(int(i) for i in ex),
            d=tuple(int(x) for x in d),
            strings=tuple(strings),
            bmat=tuple(tuple(int(x) for x in row) for row in bmat),
            cluster=cluster,
        )


def validate_seed(s: GeneralizedSeed) -> ValidationReport:
    """Check every seed invariant; the report lists each violation found."""
    report = ValidationReport()
    n = s.n
    if sorted(set(s.ex)) != list(s.ex) or not s.ex:
        report.add("ex must be a nonempty ascending set of distinct indices")
    if any(i < 1 or i > s.m for i in s.ex):
        report.add(f"ex {s.ex} not contained in [1, {s.m}]")
    if len(s.d) != n:
        report.add("d must assign one degree per exchangeable direction")
    elif any(di < 1 for di in s.d):
        report.add("every degree d_i must be a positive integer")
    if len(s.bmat) != s.m or any(len(row) != n for row in s.bmat):
        report.add(f"matrix must be {s.m} x {n}")
        return report

    for c, i in enumerate(s.ex):
        di = s.d[c]
        for r in range(s.m):
            if s.bmat[r][c] % di:
                report.add(f"d_{i} = {di} does not divide b_{{{r + 1}{i}}} = {s.bmat[r][c]}")

    principal = s.principal()
    if skew_symmetrizer(principal) is None:
        report.add("principal part is not skew-symmetrizable")

    if len(s.strings) != n:
        report.add("strings must assign one string per exchangeable direction")
    else:
        frozen = set(s.frozen)
        for c, i in enumerate(s.ex):
            rho = s.strings[c]
            if rho.degree != s.d[c]:
                report.add(f"string length for direction {i}: expected d_{i}+1 = {s.d[c] + 1}, got {rho.degree + 1}")
                continue
            if not rho.entries[0].is_one() or not rho.entries[-1].is_one():
                report.add(f"string endpoints for direction {i} must equal 1")
            for k, entry in enumerate(rho.entries):
                if entry.is_zero():
                    continue
                if not entry.is_single_term():
                    report.add(f"string entry rho_{{{i},{k}}} must be a single monomial")
                    continue
                mono = next(iter(entry.terms))
                if any(v not in frozen for v, _ in mono):
                    report.add(f"string entry rho_{{{i},{k}}} mentions an exchangeable variable")
                if any(e < 0 for _, e in mono):
                    report.add(f"string entry rho_{{{i},{k}}} has a negative exponent")

    if len(s.cluster) != s.m:
        report.add(f"cluster must list all {s.m} variables")
    else:
        for j in s.frozen:
            if s.cluster[j - 1] != LaurentPoly.variable(j):
                report.add(f"frozen variable x{j} must keep its initial expression")
        for i in s.ex:
            if s.cluster[i - 1].is_zero():
                report.add(f"cluster variable x{i} is zero")
    return report


def skew_symmetrizer(B: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Minimal positive integer diagonal D with D B skew-symmetric, or None.

    Ratios are propagated over the connected components of the nonzero
    pattern; each component is scaled to the least positive integers.
    """
    n = len(B)
    if any(len(row) != n for row in B):
        return None
    for i in range(n):
        if B[i][i] != 0:
            return None
        for j in range(i + 1, n):
            if (B[i][j] == 0) != (B[j][i] == 0):
                return None
            if B[i][j] * B[j][i] > 0:
                return None

    ratio: list[Fraction | None] = [None] * n
    for start in range(n):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        stack = [start]
        component = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if B[i][j] == 0:
                    continue
                # d_i b_ij = -d_j b_ji determines the ratio along the edge.
                required = ratio[i] * Fraction(B[i][j], -B[j][i])
                if ratio[j] is None:
                    ratio[j] = required
                    stack.append(j)
                    component.append(j)
                elif ratio[j] != required:
                    return None
        scale = lcm(*(r.denominator for r in (ratio[k] for k in component)))
        ints = [int(ratio[k] * scale) for k in component]
        shrink = int_gcd(*ints) if len(ints) > 1 else ints[0]
        for k, value in zip(component, ints):
            ratio[k] = Fraction(value, shrink)

    d = [int(r) for r in ratio]
    for i in range(n):
        for j in range(n):
            if d[i] * B[i][j] != -d[j] * B[j][i]:
                return None
    return tuple(d)


def exchange_polynomial(s: GeneralizedSeed, i: int) -> ExchangePolynomial:
    """The sum sum_r rho_{i,r} prod_j x_j^{r[b_ji/d_i]_+ + (d_i-r)[-b_ji/d_i]_+}.

    Expressed in the seed's own labels; x_i itself never occurs.
    """
    c = s.col(i)
    di = s.d[c]
    beta = [s.bmat[r][c] // di for r in range(s.m)]
    total = LaurentPoly.zero()
    for r, rho in enumerate(s.strings[c].entries):
        exps = {}
        for j in range(1, s.m + 1):
            e = r * _pos(beta[j - 1]) + (di - r) * _pos(-beta[j - 1])
            if e:
                exps[j] = e
        total = total + rho * LaurentPoly.term(1, exps)
    return ExchangePolynomial(total, i)


def exchange_polynomial_initial(s: GeneralizedSeed, i: int) -> LaurentPoly:
    """The exchange polynomial composed into initial coordinates."""
    p = exchange_polynomial(s, i).poly
    return compose(p, {j: s.cluster[j - 1] for j in range(1, s.m + 1)})


def mutate(s: GeneralizedSeed, i: int) -> GeneralizedSeed:
    """Mutation in direction i: new variable, reversed string, updated matrix.

    The new cluster entry is computed by exact division in initial
    coordinates, which doubles as a Laurent-phenomenon assertion.
    """
    c = s.col(i)
    p_init = exchange_polynomial_initial(s, i)
    try:
        new_var = divide_exact(p_init, s.cluster[i - 1])
    except NotDivisible as exc:
        raise LaurentViolation(
            f"exchange in direction {i} is not Laurent; seed data is corrupted"
        ) from exc

    strings = list(s.strings)
    strings[c] = strings[c].reverse()

    old = s.bmat
    new_rows = []
    for k in range(1, s.m + 1):
        row = []
        for cc, l in enumerate(s.ex):
            if k == i or l == i:
                row.append(-old[k - 1][cc])
            else:
                b_il = old[i - 1][cc]
                b_ki = old[k - 1][c]
                row.append(old[k - 1][cc] + _pos(b_il) * b_ki + b_il * _pos(-b_ki))
        new_rows.append(tuple(row))

    cluster = list(s.cluster)
    cluster[i - 1] = new_var
    return GeneralizedSeed(
        m=s.m,
        ex=s.ex,
        d=s.d,
        strings=tuple(strings),
        bmat=tuple(new_rows),
        cluster=tuple(cluster),
    )


def mutate_sequence(s: GeneralizedSeed, directions: Iterable[int]) -> GeneralizedSeed:
    for i in directions:
        s = mutate(s, i)
    return s


def freeze(s: GeneralizedSeed, subset: Iterable[int]) -> GeneralizedSeed:
    """Freeze the given exchangeable directions.

    Their columns, strings and degrees are dropped; the variables become
    frozen coefficients (invertible in the enlarged coefficient ring) and
    keep their current cluster expressions.  Rows of the matrix are kept.
    """
    subset = set(subset)
    if not subset:
        raise InvalidIndex("freeze needs at least one direction")
    for i in subset:
        if i not in s.ex:
            raise InvalidIndex(f"variable {i} is not exchangeable")
    if subset == set(s.ex):
        raise FreezeAll("freezing every direction leaves no cluster")

    keep = [c for c, i in enumerate(s.ex) if i not in subset]
    return GeneralizedSeed(
        m=s.m,
        ex=tuple(s.ex[c] for c in keep),
        d=tuple(s.d[c] for c in keep),
        strings=tuple(s.strings[c] for c in keep),
        bmat=tuple(tuple(row[c] for c in keep) for row in s.bmat),
        cluster=s.cluster,
    )


def replace_cluster_entry(s: GeneralizedSeed, i: int, value: LaurentPoly) -> GeneralizedSeed:
    """Return a copy of s with cluster entry i overwritten (test tripwire aid)."""
    cluster = list(s.cluster)
    cluster[i - 1] = value
    return dataclasses.replace(s, cluster=tuple(cluster))
