"""Exchange-graph exploration, acyclicity, and source-mutation twists."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .qtorus import TorusElement
from .seed import QuantumSeed, canonical_form, mutate


class AcyclicityError(ValueError):
    """Raised when a twist is requested on a cyclic quiver."""


@dataclass
class ExchangeGraph:
    nodes: dict[tuple, QuantumSeed]
    edges: set[tuple[tuple, int, tuple]]
    root: tuple
    depth: dict[tuple, int] = field(default_factory=dict)

    def sorted_keys(self) -> list[tuple]:
        return sorted(self.nodes)

    def node_count(self) -> int:
        return len(self.nodes)


def explore(root: QuantumSeed, depth: int) -> ExchangeGraph:
    """Breadth-first closure of a seed under all mutable mutations.

    Seeds are identified up to simultaneous relabeling of mutable indices
    (canonical_form), so finite types close up and report exact counts.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root_key = canonical_form(root)
    nodes = {root_key: root}
    depths = {root_key: 0}
    frontier = [root_key]
    for level in range(depth):
        next_frontier = []
        for key in frontier:
            seed = nodes[key]
            for k in range(seed.mutable_count):
                neighbor = mutate(seed, k)
                nkey = canonical_form(neighbor)
                if nkey not in nodes:
                    nodes[nkey] = neighbor
                    depths[nkey] = level + 1
                    next_frontier.append(nkey)
        frontier = next_frontier
        if not frontier:
            break
    # record edges relative to each stored representative, so that every
    # (u, k, v) satisfies canonical_form(mutate(nodes[u], k)) == v
    edges: set[tuple[tuple, int, tuple]] = set()
    for key, seed in nodes.items():
        for k in range(seed.mutable_count):
            nkey = canonical_form(mutate(seed, k))
            if nkey in nodes:
                edges.add((key, k, nkey))
    return ExchangeGraph(nodes=nodes, edges=edges, root=root_key, depth=depths)


def quiver_digraph(seed: QuantumSeed) -> dict[int, set[int]]:
    """Directed adjacency on mutable vertices: i -> j iff b_ij > 0."""
    m = seed.mutable_count
    b = seed.exchange.entries
    return {i: {j for j in range(m) if b[i][j] > 0} for i in range(m)}


def is_acyclic(seed: QuantumSeed) -> tuple[bool, Optional[list[int]]]:
    """Decide acyclicity of the mutable quiver; return a source-first order."""
    m = seed.mutable_count
    adj = quiver_digraph(seed)
    indeg = {j: 0 for j in range(m)}
    for i in range(m):
        for j in adj[i]:
            indeg[j] += 1
    order = []
    ready = sorted(j for j in range(m) if indeg[j] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for j in sorted(adj[v]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
        ready.sort()
    if len(order) < m:
        return False, None
    return True, order


def twist(seed: QuantumSeed) -> tuple[QuantumSeed, list[int]]:
    """Mutate once at every mutable vertex, always at a current source.

    Sources are recomputed as the quiver changes; among several the lowest
    index wins, which fixes the (cosmetically free) order.
    """
    ok, _ = is_acyclic(seed)
    if not ok:
        raise AcyclicityError("twist is defined for acyclic quivers only")
    m = seed.mutable_count
    used: set[int] = set()
    sequence: list[int] = []
    current = seed
    for _ in range(m):
        adj = quiver_digraph(current)
        incoming = {j for targets in adj.values() for j in targets}
        choices = sorted(v for v in range(m) if v not in used and v not in incoming)
        if not choices:
            raise AcyclicityError("no unused source available; quiver became cyclic")
        v = choices[0]
        current = mutate(current, v)
        used.add(v)
        sequence.append(v)
    return current, sequence


def variable_inventory(graph: ExchangeGraph) -> list[TorusElement]:
    """All distinct cluster variables in the graph, canonically ordered."""
    seen: dict[tuple, TorusElement] = {}
    for key in graph.sorted_keys():
        for var in graph.nodes[key].variables:
            seen.setdefault(var.key(), var)
    return [seen[k] for k in sorted(seen)]
