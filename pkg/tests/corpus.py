"""Shared seed builders, golden data, and the randomized seed corpus."""

from __future__ import annotations

import math
import random

import sympy as sp

from gca.laurent import LaurentPoly
from gca.seed import GeneralizedSeed, GeneralizedString


def lp(coeff: int, **exps) -> LaurentPoly:
    """Shorthand: lp(3, x1=-1, x3=2) is 3*x1^-1*x3^2."""
    return LaurentPoly.term(coeff, {int(k[1:]): v for k, v in exps.items()})


X1 = LaurentPoly.variable(1)
X2 = LaurentPoly.variable(2)
H = LaurentPoly.variable(3)

EX21_NAMES = {3: "h"}


def example_2_1_seed() -> GeneralizedSeed:
    """Rank-2 seed with degrees (2, 1), with the integer parameter h modeled
    as a frozen third variable carrying a zero matrix row."""
    rho1 = GeneralizedString((LaurentPoly.constant(1), H, LaurentPoly.constant(1)))
    rho2 = GeneralizedString.trivial(1)
    return GeneralizedSeed.initial(
        m=3,
        ex=(1, 2),
        d=(2, 1),
        strings=(rho1, rho2),
        bmat=((0, 1), (-2, 0), (0, 0)),
    )


# Transliterated golden cluster variables of the 6-periodic run, in initial
# coordinates with h as x3.
GOLDEN_X3 = lp(1, x1=-1) + lp(1, x1=-1, x2=1, x3=1) + lp(1, x1=-1, x2=2)
GOLDEN_X4 = lp(1, x2=-1) + lp(1, x1=-1, x2=-1) + lp(1, x1=-1, x3=1) + lp(1, x1=-1, x2=1)
GOLDEN_X5 = (
    lp(1, x1=-1)
    + lp(1, x1=-1, x2=-1, x3=1)
    + lp(1, x2=-1, x3=1)
    + lp(1, x1=-1, x2=-2)
    + lp(2, x2=-2)
    + lp(1, x1=1, x2=-2)
)
GOLDEN_X6 = lp(1, x2=-1) + lp(1, x1=1, x2=-1)


def a2_seed() -> GeneralizedSeed:
    return GeneralizedSeed.initial(
        m=2,
        ex=(1, 2),
        d=(1, 1),
        strings=(GeneralizedString.trivial(1), GeneralizedString.trivial(1)),
        bmat=((0, 1), (-1, 0)),
    )


def zero_rank2_seed() -> GeneralizedSeed:
    """Isolated rank-2 seed with trivial strings and no frozen variables."""
    return GeneralizedSeed.initial(
        m=2,
        ex=(1, 2),
        d=(1, 1),
        strings=(GeneralizedString.trivial(1), GeneralizedString.trivial(1)),
        bmat=((0, 0), (0, 0)),
    )


def isolated_n2_seed() -> GeneralizedSeed:
    """Isolated rank-2 seed with one frozen variable y = x3 and a nontrivial
    degree-2 string {1, y, 1}."""
    rho1 = GeneralizedString((LaurentPoly.constant(1), H, LaurentPoly.constant(1)))
    return GeneralizedSeed.initial(
        m=3,
        ex=(1, 2),
        d=(2, 1),
        strings=(rho1, GeneralizedString.trivial(1)),
        bmat=((0, 0), (0, 0), (0, 0)),
    )


def cyclic_rank3_seed() -> GeneralizedSeed:
    """Skew-symmetric seed whose exchange digraph is an oriented 3-cycle."""
    trivial = GeneralizedString.trivial(1)
    return GeneralizedSeed.initial(
        m=3,
        ex=(1, 2, 3),
        d=(1, 1, 1),
        strings=(trivial, trivial, trivial),
        bmat=((0, -1, 1), (1, 0, -1), (-1, 1, 0)),
    )


def random_seed(
    rng: random.Random,
    n_max: int = 4,
    m_max: int = 6,
    b_max: int = 3,
    d_max: int = 3,
    acyclic: bool = False,
    n_min: int = 1,
) -> GeneralizedSeed:
    """A random valid seed within the stated size box.

    The principal part is built as b_ij = dtilde_j * t_ij for a random skew
    integer matrix t and positive diagonal dtilde, which is always
    skew-symmetrizable; the acyclic variant orients every nonzero pair along
    a random linear order.
    """
    n = rng.randint(n_min, n_max)
    extra = rng.randint(0, max(0, min(2, m_max - n)))
    m = n + extra
    ex = tuple(sorted(rng.sample(range(1, m + 1), n)))
    frozen = [j for j in range(1, m + 1) if j not in ex]

    dtilde = [rng.randint(1, min(d_max, b_max)) for _ in range(n)]
    t = [[0] * n for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: pos for pos, v in enumerate(order)}
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.6:
                v = rng.choice([-1, 1])
                if acyclic:
                    # Every edge points down the random order, so the
                    # exchange digraph is a DAG.
                    hi, lo = (a, b) if rank[a] > rank[b] else (b, a)
                    t[hi][lo] = 1
                    t[lo][hi] = -1
                else:
                    t[a][b] = v
                    t[b][a] = -v
    principal = [[dtilde[j] * t[i][j] for j in range(n)] for i in range(n)]

    d = []
    for j in range(n):
        entries = [abs(principal[i][j]) for i in range(n) if principal[i][j]]
        g = 0
        for e in entries:
            g = e if g == 0 else math.gcd(g, e)
        divisors = [k for k in range(1, d_max + 1) if g == 0 or g % k == 0]
        d.append(rng.choice(divisors))

    rows = {i: list(principal[pos]) for pos, i in enumerate(ex)}
    for j in frozen:
        rows[j] = [d[c] * rng.randint(-1, 1) for c in range(n)]
    bmat = [rows[i] for i in range(1, m + 1)]

    strings = []
    for c in range(n):
        entries = [LaurentPoly.constant(1)]
        for _ in range(d[c] - 1):
            if frozen and rng.random() < 0.5:
                entries.append(
                    LaurentPoly.term(rng.randint(1, 2), {rng.choice(frozen): rng.randint(0, 1)})
                )
            else:
                entries.append(LaurentPoly.constant(rng.randint(1, 2)))
        entries.append(LaurentPoly.constant(1))
        strings.append(GeneralizedString(tuple(entries)))

    return GeneralizedSeed.initial(m=m, ex=ex, d=d, strings=strings, bmat=bmat)


def to_sympy(p: LaurentPoly, names: dict[int, str] | None = None) -> sp.Expr:
    """Structural bridge from a LaurentPoly to a sympy expression."""
    names = names or {}
    total = sp.Integer(0)
    for mono, coeff in p.items():
        term = sp.Integer(coeff)
        for v, e in mono:
            term *= sp.Symbol(names.get(v, f"x{v}")) ** e
        total += term
    return total
