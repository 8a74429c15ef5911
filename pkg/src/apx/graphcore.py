"""Simple undirected graphs: contraction, cycle space, balanced cycles.

Nodes are labelled 0..n.  Edges are unordered pairs stored as sorted
tuples.  An edge subset ("subgraph") is any frozenset of such pairs; its
vertex set is the set of endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DisconnectedGraph,
    EdgeNotInGraph,
    NoSuchSpanningTree,
    NotACycle,
    ParseError,
)

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple graph on nodes 0..node_count-1."""

    node_count: int
    edges: EdgeSet

    @classmethod
    def from_edges(cls, pairs, node_count: int | None = None) -> "Graph":
        es = frozenset(edge(u, v) for u, v in pairs)
        n = max((v for e in es for v in e), default=-1) + 1
        if node_count is not None:
            if node_count < n:
                raise ValueError("node_count below largest edge label")
            n = node_count
        return cls(n, es)

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """One "u v" pair per line; blank lines and '#' comments ignored."""
        pairs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: non-integer label") from exc
            if u < 0 or v < 0:
                raise ParseError(f"line {lineno}: negative node label")
            if u == v:
                raise ParseError(f"line {lineno}: loop at node {u}")
            pairs.append((u, v))
        if not pairs:
            raise ParseError("no edges in input")
        return cls.from_edges(pairs)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        """JSON object {"edges": [[u, v], ...]}."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict) or "edges" not in data:
            raise ParseError('expected an object with an "edges" key')
        pairs = data["edges"]
        try:
            pairs = [(int(u), int(v)) for u, v in pairs]
        except (TypeError, ValueError) as exc:
            raise ParseError("edges must be pairs of integers") from exc
        if not pairs:
            raise ParseError("no edges in input")
        if any(u == v or u < 0 or v < 0 for u, v in pairs):
            raise ParseError("edges must join two distinct nonnegative labels")
        return cls.from_edges(pairs)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, e: Edge) -> bool:
        return edge(*e) in self.edges

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.node_count)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        if self.node_count <= 1:
            return True
        return len(_component_of(0, self.adjacency())) == self.node_count

    def to_json_dict(self) -> dict:
        return {"node_count": self.node_count, "edges": [list(e) for e in self.sorted_edges()]}


def _component_of(start: int, adj: dict[int, set[int]]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def vertices_of(edges) -> set[int]:
    return {v for e in edges for v in e}


def components_of_edges(edges) -> list[set[int]]:
    """Connected components of the subgraph spanned by an edge set."""
    verts = vertices_of(edges)
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    comps = []
    remaining = set(verts)
    while remaining:
        comp = _component_of(next(iter(remaining)), adj)
        comps.append(comp)
        remaining -= comp
    return comps


def contract_edge(g: Graph, e: Edge) -> tuple[Graph, dict[int, int]]:
    """Contract g along e; returns (G // e, node relabelling map).

    Endpoints merge into min(k1, k2); labels above max(k1, k2) shift down
    so the result is contiguous on 0..n-1.  Parallel edges collapse and
    the loop is dropped (simple-graph contraction).
    """
    e = edge(*e)
    if e not in g.edges:
        raise EdgeNotInGraph(f"{e} not in graph")
    lo, hi = e
    mapping = {}
    for v in range(g.node_count):
        if v == hi:
            mapping[v] = lo
        elif v > hi:
            mapping[v] = v - 1
        else:
            mapping[v] = v
    new_edges = set()
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        if a != b:
            new_edges.add(edge(a, b))
    return Graph(g.node_count - 1, frozenset(new_edges)), mapping


def contract_subgraph_edges(edges, e: Edge, mapping: dict[int, int]) -> EdgeSet:
    """Image of an edge subset under the contraction relabelling.

    If e is not among the edges the subset is untouched except for the
    relabelling (H // e = H convention, endpoint labels kept via the same
    compaction map).
    """
    out = set()
    for u, v in edges:
        a, b = mapping[u], mapping[v]
        if a != b:
            out.add(edge(a, b))
    return frozenset(out)


def cyclomatic_number(edges) -> int:
    """|E| - |V| + number of connected components of the edge set."""
    edges = frozenset(edges)
    if not edges:
        return 0
    return len(edges) - len(vertices_of(edges)) + len(components_of_edges(edges))


@dataclass(frozen=True)
class CycleBasis:
    spanning_tree: EdgeSet
    nontree_edges: tuple[Edge, ...]
    fundamental_cycles: tuple[EdgeSet, ...]


def _tree_path(tree: EdgeSet, u: int, v: int) -> list[int]:
    """Vertex path from u to v inside a forest; raises if not connected."""
    adj: dict[int, list[int]] = {}
    for a, b in tree:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    parent = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    if v not in parent:
        raise NoSuchSpanningTree(f"no tree path {u}..{v}")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def spanning_tree_of(edges, require: Edge | None = None, forbid: Edge | None = None) -> EdgeSet:
    """Spanning tree of a connected edge set, honoring one constraint.

    ``require``: the edge must be in the tree (always possible).
    ``forbid``: the edge must be left out; fails iff it is a bridge.
    """
    edges = frozenset(edges)
    verts = vertices_of(edges)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()

    def try_add(e):
        a, b = find(e[0]), find(e[1])
        if a != b:
            parent[a] = b
            tree.add(e)

    if require is not None:
        require = edge(*require)
        if require not in edges:
            raise EdgeNotInGraph(f"{require} not in edge set")
        try_add(require)
    for e in sorted(edges):
        if forbid is not None and e == edge(*forbid):
            continue
        try_add(e)
    if len(tree) != len(verts) - len(components_of_edges(edges)):
        raise NoSuchSpanningTree(f"cannot avoid bridge {forbid}")
    return frozenset(tree)


def fundamental_cycle_basis(
    g: Graph, required_edge: Edge | None = None, mode: str = "include"
) -> CycleBasis:
    """Spanning tree plus the fundamental cycle of each non-tree edge.

    ``mode`` is "include" or "exclude" and applies to ``required_edge``;
    exclude mode raises NoSuchSpanningTree when the edge is a bridge.
    """
    if not g.is_connected():
        raise DisconnectedGraph("cycle basis needs a connected graph")
    require = forbid = None
    if required_edge is not None:
        if mode == "include":
            require = required_edge
        elif mode == "exclude":
            forbid = edge(*required_edge)
            if forbid not in g.edges:
                raise EdgeNotInGraph(f"{forbid} not in graph")
        else:
            raise ValueError(f"unknown mode {mode!r}")
    if g.node_count == 1:
        return CycleBasis(frozenset(), (), ())
    tree = spanning_tree_of(g.edges, require=require, forbid=forbid)
    nontree = tuple(sorted(g.edges - tree))
    cycles = []
    for u, v in nontree:
        path = _tree_path(tree, u, v)
        cyc = {edge(path[i], path[i + 1]) for i in range(len(path) - 1)}
        cyc.add(edge(u, v))
        cycles.append(frozenset(cyc))
    return CycleBasis(tree, nontree, tuple(cycles))


def is_cycle(edges) -> bool:
    """True iff the edge set is a single cycle (connected, all degrees 2)."""
    edges = frozenset(edges)
    if len(edges) < 3 or len(components_of_edges(edges)) != 1:
        return False
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(d == 2 for d in deg.values())


def is_balanced_cycle(cycle_edges, e: Edge) -> bool:
    """A cycle is balanced when it has an even number of edges besides e."""
    cycle_edges = frozenset(cycle_edges)
    if not is_cycle(cycle_edges):
        raise NotACycle("edge set is not a single cycle")
    return len(cycle_edges - {edge(*e)}) % 2 == 0


def is_balanced_subgraph(edges, e: Edge) -> bool:
    """True iff every cycle of the edge set is balanced w.r.t. e.

    Balancedness is Z2-linear on the cycle space (each edge weighs 1,
    the contracted edge 0; symmetric differences cancel pairs), so it
    suffices to test the fundamental cycles of any spanning forest.
    """
    edges = frozenset(edges)
    e = edge(*e)
    for basis_cycle in fundamental_cycles_of(edges):
        if len(basis_cycle - {e}) % 2 != 0:
            return False
    return True


def fundamental_cycles_of(edges, forbid: Edge | None = None) -> list[EdgeSet]:
    """Fundamental cycles of an arbitrary edge set w.r.t. a spanning
    forest, optionally one avoiding ``forbid`` (raises on a bridge)."""
    edges = frozenset(edges)
    if not edges:
        return []
    tree = spanning_tree_of(edges, forbid=forbid)
    cycles = []
    for u, v in sorted(edges - tree):
        path = _tree_path(tree, u, v)
        cyc = {edge(path[i], path[i + 1]) for i in range(len(path) - 1)}
        cyc.add(edge(u, v))
        cycles.append(frozenset(cyc))
    return cycles


def all_cycles(edges) -> list[EdgeSet]:
    """Every simple cycle of the edge set, via cycle-space combinations.

    An element of the Z2 cycle space is a single cycle exactly when it is
    connected and 2-regular.  Exponential in the cyclomatic number, which
    stays tiny at the scales this package targets.
    """
    edges = frozenset(edges)
    basis = fundamental_cycles_of(edges)
    cycles = []
    for r in range(1, len(basis) + 1):
        for combo in combinations(basis, r):
            member = frozenset()
            for cyc in combo:
                member = member ^ cyc
            if member and is_cycle(member):
                cycles.append(member)
    return sorted(set(cycles), key=lambda c: (len(c), sorted(c)))


def circumference(edges) -> int:
    """Length of the longest cycle; 0 for forests."""
    cycles = all_cycles(edges)
    return max((len(c) for c in cycles), default=0)


def balanced_circuit_rank(g: Graph, e: Edge) -> int:
    """Maximum cyclomatic number over balanced subgraphs w.r.t. e.

    A subgraph is balanced iff its edge weights (1 off e, 0 on e) form a
    Z2 coboundary, i.e. some 2-coloring p of the nodes has every subgraph
    edge bicolored except e, whose endpoints must agree.  The maximal
    balanced subgraph for a coloring p collects exactly those edges, and
    cyclomatic number is monotone under adding edges, so scanning the
    2^(n-1) colorings (up to global flip) is exhaustive and exact.
    """
    e = edge(*e)
    if e not in g.edges:
        raise EdgeNotInGraph(f"{e} not in graph")
    n = g.node_count
    edges = g.sorted_edges()
    best = 0
    for bits in range(1 << (n - 1)):
        color = [0] + [(bits >> i) & 1 for i in range(n - 1)]
        chosen = [f for f in edges if f != e and color[f[0]] != color[f[1]]]
        if color[e[0]] == color[e[1]]:
            chosen.append(e)
        best = max(best, cyclomatic_number(chosen))
    return best


def graph_to_dot(g: Graph, contraction_edge: Edge | None = None, name: str = "G") -> str:
    """DOT rendering; the contraction edge is doubled and highlighted."""
    ce = edge(*contraction_edge) if contraction_edge is not None else None
    lines = [f"graph {name} {{"]
    for v in range(g.node_count):
        lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        if (u, v) == ce:
            lines.append(f'  {u} -- {v} [color="red:red", penwidth=2];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def directed_subgraph_to_dot(arcs, contraction_edge: Edge | None = None, name: str = "cell") -> str:
    """DOT rendering of a directed cell subgraph.

    The contracted edge appears as its two arcs, highlighted to match the
    doubled-edge styling of the undirected exports.
    """
    ce = edge(*contraction_edge) if contraction_edge is not None else None
    lines = [f"digraph {name} {{"]
    for v in sorted({x for a in arcs for x in a}):
        lines.append(f"  {v};")
    for i, j in sorted(arcs):
        if ce is not None and edge(i, j) == ce:
            lines.append(f"  {i} -> {j} [color=red, penwidth=2];")
        else:
            lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
