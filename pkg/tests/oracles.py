"""Independent reference computations used as test oracles.

Everything here is computed with sympy rational arithmetic and never calls
into the package under test, so agreement is meaningful.  The rank-2
exploration oracle drives the exchange recurrence x_{k-1} x_{k+1} = P(x_k)
directly on simplified rational expressions.
"""

from __future__ import annotations

import sympy as sp

T = sp.Symbol("t")


def canonical(expr):
    """A hashable canonical form of a rational expression."""
    c = sp.cancel(sp.together(expr))
    num, den = sp.fraction(c)
    num = sp.expand(num)
    den = sp.expand(den)
    # Fix the sign so p/q and (-p)/(-q) collide.
    lead = sp.LC(sp.Poly(den, *sorted(den.free_symbols, key=str) or [T]))
    if lead < 0:
        num, den = -num, -den
    return sp.srepr(num), sp.srepr(den)


def alternating_sequence(p1, p2, x1, x2, steps):
    """Cluster variable sequence of a rank-2 seed under alternating mutation.

    ``p1`` and ``p2`` are the exchange polynomials as expressions in the
    placeholder symbol T (the neighbor variable); frozen symbols may appear
    freely.  Returns [v1, v2, v3, ...] with steps extra terms.
    """
    seq = [x1, x2]
    a, b = x1, x2
    for k in range(steps):
        if k % 2 == 0:
            a = sp.cancel(p1.subs(T, b) / a)
            seq.append(a)
        else:
            b = sp.cancel(p2.subs(T, a) / b)
            seq.append(b)
    return seq


def rank2_closure(p1, p2, x1, x2, cap=64):
    """Distinct variables and the sequence period of a rank-2 seed, or None.

    Returns (distinct_count, period) where the period is the least p with
    v_{k+p} = v_k along the alternating sequence; None when the recurrence
    does not close within the cap.
    """
    a, b = x1, x2
    states = [(canonical(a), canonical(b))]
    seq = [canonical(a), canonical(b)]
    for k in range(cap):
        if k % 2 == 0:
            a = sp.cancel(p1.subs(T, b) / a)
            seq.append(canonical(a))
        else:
            b = sp.cancel(p2.subs(T, a) / b)
            seq.append(canonical(b))
        states.append((canonical(a), canonical(b)))
        if (k + 1) % 2 == 0 and states[-1] == states[0]:
            q = k + 1
            window = seq[:q]
            period = next(
                p
                for p in range(1, q + 1)
                if all(window[(i + p) % q] == window[i] for i in range(q))
            )
            return len(set(window)), period
    return None


def exchange_poly_reference(symbols, column, d_i, string_entries):
    """Direct evaluation of the multinomial exchange sum.

    ``symbols`` maps variable index -> sympy symbol, ``column`` maps variable
    index -> matrix entry b_{ji}, and ``string_entries`` are sympy
    expressions rho_0..rho_d.
    """
    total = sp.Integer(0)
    for r, rho in enumerate(string_entries):
        term = rho
        for j, sym in symbols.items():
            beta = sp.Rational(column.get(j, 0), d_i)
            e = r * max(beta, 0) + (d_i - r) * max(-beta, 0)
            term *= sym ** int(e)
        total += term
    return sp.expand(total)
