"""Exchange-graph exploration and the cover/isolated-algebra checks.

Exploration is a breadth-first walk applying every mutation direction,
deduplicating by labeled seed equality.  Every mutation performs exactly
one exact division, so the walk doubles as a Laurent-phenomenon audit.
The finite intersection of the explored seeds' Laurent rings approximates
the generalized upper cluster algebra; it is exact whenever the walk
closes, and the report says whether it did.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

from .errors import (
    DirectionNotExchangeable,
    NoNegativeEntry,
    NotASource,
    NotDivisible,
    NotIsolated,
    RankNotTwo,
)
from .laurent import (
    LaurentPoly,
    compose,
    decompose_by_variable,
    divide_exact,
    fraction_parts,
)
from .seed import GeneralizedSeed, exchange_polynomial, mutate
from .structure import gamma_graph, is_acyclic
from .verdicts import MembershipVerdict

DEFAULT_MAX_DEPTH = 12
DEFAULT_MAX_SEEDS = 10_000


def _seed_cap(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    return int(os.environ.get("GCA_MAX_SEEDS", DEFAULT_MAX_SEEDS))


@dataclass(frozen=True)
class SeedNode:
    """One discovered seed, its BFS depth, and the mutation path that reached it."""

    seed: GeneralizedSeed
    depth: int
    path: tuple[int, ...]


@dataclass
class ExplorationReport:
    root: GeneralizedSeed
    nodes: tuple[SeedNode, ...]
    variables: tuple[LaurentPoly, ...]
    depth: int
    frontier_exhausted: bool
    period: int | None
    laurent_audit: int

    @property
    def seeds(self) -> tuple[GeneralizedSeed, ...]:
        return tuple(node.seed for node in self.nodes)


def explore_exchange_graph(
    s: GeneralizedSeed,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_seeds: int | None = None,
) -> ExplorationReport:
    """BFS over all mutation directions with labeled-seed deduplication.

    Stops at closure, at ``max_depth``, or at the seed cap (overridable via
    the GCA_MAX_SEEDS environment variable); directions are expanded in
    ascending order so reports are deterministic.
    """
    cap = _seed_cap(max_seeds)
    visited: dict[GeneralizedSeed, SeedNode] = {}
    variables: dict[LaurentPoly, None] = {}
    audit = 0
    exhausted = True
    deepest = 0

    root_node = SeedNode(seed=s, depth=0, path=())
    visited[s] = root_node
    for i in s.ex:
        variables.setdefault(s.cluster[i - 1])
    queue: deque[SeedNode] = deque([root_node])

    while queue:
        node = queue.popleft()
        if node.depth >= max_depth:
            exhausted = False
            continue
        for i in node.seed.ex:
            child = mutate(node.seed, i)
            audit += 1
            if child in visited:
                continue
            if len(visited) >= cap:
                exhausted = False
                continue
            child_node = SeedNode(seed=child, depth=node.depth + 1, path=node.path + (i,))
            visited[child] = child_node
            deepest = max(deepest, child_node.depth)
            for j in child.ex:
                variables.setdefault(child.cluster[j - 1])
            queue.append(child_node)

    period = detect_period(s) if s.n == 2 else None
    return ExplorationReport(
        root=s,
        nodes=tuple(visited.values()),
        variables=tuple(variables),
        depth=deepest,
        frontier_exhausted=exhausted,
        period=period,
        laurent_audit=audit,
    )


def detect_period(s: GeneralizedSeed, cap: int = 64) -> int | None:
    """Least p with x_{k+p} = x_k along the alternating mutation sequence.

    Rank 2 only: mutations alternate between the two directions, extending
    the doubly infinite sequence of cluster variables; the search gives up
    after ``cap`` steps without the chain closing.
    """
    if s.n != 2:
        raise RankNotTwo(f"alternating period needs rank 2, got rank {s.n}")
    first, second = s.ex
    sequence = [s.cluster[first - 1], s.cluster[second - 1]]
    current = s
    steps = 0
    seed_period = None
    while steps < cap:
        direction = first if steps % 2 == 0 else second
        current = mutate(current, direction)
        steps += 1
        sequence.append(current.cluster[direction - 1])
        if steps % 2 == 0 and current == s:
            seed_period = steps
            break
    if seed_period is None:
        return None
    # The variable sequence is seed_period-periodic; find its least period.
    window = sequence[:seed_period]
    for p in range(1, seed_period + 1):
        if all(window[(k + p) % seed_period] == window[k] for k in range(seed_period)):
            return p
    return seed_period


def verify_laurent_phenomenon(report: ExplorationReport) -> bool:
    """Audit the exploration: all divisions succeeded and every variable is
    a Laurent polynomial whose denominator is a single monomial."""
    if report.laurent_audit < len(report.nodes) - 1:
        return False
    for v in report.variables:
        if v.is_zero():
            return False
        numerator, _ = fraction_parts(v)
        # fraction_parts already produced an ordinary polynomial over a
        # monomial; re-check the minimal exponents for good measure.
        if any(numerator.min_exponent(var) < 0 for var in numerator.variables()):
            return False
    return True


@dataclass(frozen=True)
class UnitIdealCertificate:
    """Witness that 1 lies in the ideal generated by x_l and a neighbor x_k.

    ``product_piece`` is x_l x_l' scaled by the inverse frozen monomial and
    ``subtracted`` holds the lower string terms scaled the same way; the
    identity product_piece - sum(subtracted) must evaluate to exactly 1.
    """

    source: int
    witness: int
    product_piece: LaurentPoly
    subtracted: tuple[LaurentPoly, ...]

    def value(self) -> LaurentPoly:
        total = self.product_piece
        for piece in self.subtracted:
            total = total - piece
        return total

    def verified(self) -> bool:
        return self.value().is_one()


def unit_ideal_certificate(s: GeneralizedSeed, l: int) -> UnitIdealCertificate:
    """Build and verify the unit-ideal identity at a source direction l.

    Requires an acyclic seed, l a source of the exchange digraph, and some
    exchangeable k with b_{kl} < 0; the identity rewrites the exchange
    relation so that its top term becomes the constant 1.
    """
    if l not in s.ex:
        raise DirectionNotExchangeable(f"variable {l} is not exchangeable")
    if not is_acyclic(s):
        raise NotASource("certificate requires an acyclic seed")
    edges = gamma_graph(s).edges
    if any(j == l for _, j in edges):
        raise NotASource(f"direction {l} has an incoming edge")
    witness = next((k for k in s.ex if s.b(k, l) < 0), None)
    if witness is None:
        raise NoNegativeEntry(f"no exchangeable k with b_k{l} < 0; {l} is isolated")

    c = s.col(l)
    dl = s.d[c]
    beta = [s.bmat[r][c] // dl for r in range(s.m)]
    frozen_exps = {j: max(0, s.bmat[j - 1][c]) for j in s.frozen}
    inv_frozen = LaurentPoly.term(1, {j: -e for j, e in frozen_exps.items() if e})

    subs = {j: s.cluster[j - 1] for j in range(1, s.m + 1)}
    p_init = compose(exchange_polynomial(s, l).poly, subs)
    product_piece = p_init * inv_frozen

    subtracted = []
    for r in range(dl):
        exps = {}
        for j in range(1, s.m + 1):
            e = r * max(0, beta[j - 1]) + (dl - r) * max(0, -beta[j - 1])
            if e:
                exps[j] = e
        piece = s.strings[c].entries[r] * LaurentPoly.term(1, exps)
        subtracted.append(compose(piece, subs) * inv_frozen)

    cert = UnitIdealCertificate(
        source=l,
        witness=witness,
        product_piece=product_piece,
        subtracted=tuple(subtracted),
    )
    if not cert.verified():
        raise ArithmeticError("unit-ideal identity did not evaluate to 1")
    return cert


def isolated_closure(s: GeneralizedSeed) -> ExplorationReport:
    """Exhaustive exploration of a seed with zero principal part.

    Each direction toggles x_i with x_i' (the exchange polynomial is
    supported on frozen variables only), so closure is reached by depth n
    with 2^n seeds and 2n variables.
    """
    if any(x != 0 for row in s.principal() for x in row):
        raise NotIsolated("principal part is not zero")
    report = explore_exchange_graph(s, max_depth=s.n + 1, max_seeds=2 ** s.n + 1)
    if not report.frontier_exhausted:
        raise AssertionError("isolated exploration failed to close")
    return report


def inverse_cluster_map(
    root: GeneralizedSeed,
    path: tuple[int, ...],
    _cache: dict | None = None,
) -> tuple[LaurentPoly, ...]:
    """Initial variables written in the labels of the seed reached by ``path``.

    Replays the mutation path, rewriting through each exchange relation
    z_i = P_i(others) / z_i'; every division is exact by the Laurent
    phenomenon applied in the reverse direction.
    """
    cache = _cache if _cache is not None else {}
    if path in cache:
        return cache[path]
    if not path:
        result = tuple(LaurentPoly.variable(t) for t in range(1, root.m + 1))
        cache[()] = result
        return result
    prefix, direction = path[:-1], path[-1]
    prev_inv = inverse_cluster_map(root, prefix, cache)
    seed_key = ("seed", prefix)
    if seed_key in cache:
        seed = cache[seed_key]
    else:
        seed = root
        for i in prefix:
            seed = mutate(seed, i)
        cache[seed_key] = seed
    p_sym = exchange_polynomial(seed, direction).poly
    result = tuple(_substitute_inverse(e, direction, p_sym) for e in prev_inv)
    cache[path] = result
    cache[("seed", path)] = mutate(seed, direction)
    return result


def _substitute_inverse(expr: LaurentPoly, i: int, p_sym: LaurentPoly) -> LaurentPoly:
    """Rewrite expr under z_i := P_i / z_i (the label swap of one mutation)."""
    out = LaurentPoly.zero()
    for k, c in decompose_by_variable(expr, i).items():
        shifted = c * LaurentPoly.term(1, {i: -k})
        if k >= 0:
            out = out + shifted * p_sym ** k
        else:
            out = out + divide_exact(shifted, p_sym ** (-k))
    return out


def finite_upper_intersection_membership(
    report: ExplorationReport, y: LaurentPoly
) -> MembershipVerdict:
    """Membership of y in the intersection of all explored seeds' Laurent rings.

    y is rewritten into every seed's cluster coordinates through the inverse
    cluster map; membership in each ring amounts to one exact division by
    the rewritten monomial denominator.  When the exploration closed, the
    finite intersection equals the generalized upper cluster algebra;
    otherwise the verdict is only an upper envelope and says so.
    """
    numerator, denominator = fraction_parts(y)
    cache: dict = {}
    for node in report.nodes:
        inv = inverse_cluster_map(report.root, node.path, cache)
        num = compose(numerator, {t + 1: inv[t] for t in range(report.root.m)})
        den = LaurentPoly.constant(1)
        for v, e in denominator.items():
            den = den * inv[v - 1] ** e
        try:
            divide_exact(num, den)
        except NotDivisible:
            return MembershipVerdict(
                member=False,
                failing=node.path,
                exhaustive=report.frontier_exhausted,
            )
    return MembershipVerdict(member=True, exhaustive=report.frontier_exhausted)
