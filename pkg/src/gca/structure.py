"""Combinatorial predicates on seeds: exchange digraph, acyclicity, coprimality."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .laurent import gcd
from .seed import GeneralizedSeed, exchange_polynomial
from .verdicts import MembershipVerdict


@dataclass(frozen=True)
class GammaGraph:
    """Directed graph on the exchangeable indices with an edge (i, j) iff b_ij > 0."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AcyclicCertificate:
    """A permutation sigma of ex with b_{sigma(l), sigma(k)} >= 0 for k < l.

    ``order`` is None when the exchange digraph has an oriented cycle.  The
    normalization puts sinks first and sources last, so relabeling the seed
    by sigma makes the lower triangle of the principal part nonnegative.
    """

    order: tuple[int, ...] | None

    @property
    def present(self) -> bool:
        return self.order is not None


def gamma_graph(s: GeneralizedSeed) -> GammaGraph:
    edges = tuple(
        (i, j)
        for i in s.ex
        for j in s.ex
        if i != j and s.b(i, j) > 0
    )
    return GammaGraph(vertices=s.ex, edges=edges)


def acyclic_certificate(s: GeneralizedSeed) -> AcyclicCertificate:
    """Topologically order the exchange digraph and reverse it, sinks first.

    Ties are broken toward the identity order on a zero matrix.
    """
    graph = gamma_graph(s)
    succ: dict[int, list[int]] = {v: [] for v in graph.vertices}
    indeg = {v: 0 for v in graph.vertices}
    for i, j in graph.edges:
        succ[i].append(j)
        indeg[j] += 1

    # Largest available vertex first; the reversal then starts at the
    # smallest sink, which yields the identity when there are no edges.
    heap = [-v for v in graph.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    topo: list[int] = []
    while heap:
        v = -heapq.heappop(heap)
        topo.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, -w)
    if len(topo) != len(graph.vertices):
        return AcyclicCertificate(None)

    order = tuple(reversed(topo))
    for l in range(len(order)):
        for k in range(l):
            assert s.b(order[l], order[k]) >= 0, "normalization violated"
    return AcyclicCertificate(order)


def is_acyclic(s: GeneralizedSeed) -> bool:
    return acyclic_certificate(s).present


def coprimality_check(s: GeneralizedSeed) -> MembershipVerdict:
    """Pairwise coprimality of the exchange polynomials.

    The gcd is normalized with monomial content stripped, so the pair is
    coprime exactly when the gcd is 1; a constant gcd like 2 is a genuine
    common factor because 2 is not a unit of the coefficient ring.
    """
    polys = {i: exchange_polynomial(s, i).poly for i in s.ex}
    for a in range(len(s.ex)):
        for b in range(a + 1, len(s.ex)):
            i, j = s.ex[a], s.ex[b]
            g = gcd(polys[i], polys[j])
            if not g.is_one():
                return MembershipVerdict(member=False, failing=(i, j), witness=g)
    return MembershipVerdict(member=True)
