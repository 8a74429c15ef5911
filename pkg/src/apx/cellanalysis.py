"""Cell subgraphs and the combinatorics of cells and their subsets:
structural properties, affine independence/circuits/corank, signatures,
maximum corank realization, and closed-form cell volumes.

Every closed form is cross-checked against the exact triangulation
oracle, so these functions double as theorem checkers; a disagreement
raises instead of returning silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin
from .errors import (
    EdgeNotInGraph,
    NoSuchSpanningTree,
    NotCorankOne,
    NoValidCyclePair,
    PreconditionViolated,
    TreeMissingContractedEdge,
    UnsupportedCorank,
)
from .graphcore import (
    Graph,
    all_cycles,
    circumference,
    components_of_edges,
    cyclomatic_number,
    edge,
    fundamental_cycles_of,
    is_balanced_subgraph,
    is_cycle,
    vertices_of,
    _tree_path,
)
from .polytope import DirectedEdge, normalized_volume_of_cell, phi, regular_subdivision_supports
from .subdivision import Cell, edge_contraction_subdivision

Edge = tuple[int, int]


def cell_subgraphs(labels) -> tuple[frozenset[DirectedEdge], frozenset[Edge]]:
    """Directed and undirected subgraphs whose edges label a point set."""
    arcs = frozenset((i, j) for i, j in labels)
    return arcs, frozenset(edge(i, j) for i, j in labels)


def _contracted_pair(e: Edge) -> tuple[DirectedEdge, DirectedEdge]:
    k1, k2 = e
    return (k1, k2), (k2, k1)


def _check_pairing(labels, e: Edge) -> bool:
    """Both or neither of the contracted pair; True iff both present."""
    p, q = _contracted_pair(e)
    has_p, has_q = p in labels, q in labels
    if has_p != has_q:
        raise PreconditionViolated(
            f"subset contains exactly one of the contracted points {p}, {q}"
        )
    return has_p


def _vectors(labels, dim) -> list[tuple[int, ...]]:
    return [phi(lab, dim) for lab in labels]


def point_corank(labels, dim: int) -> int:
    """|X| - dim(X) - 1 straight from exact affine rank (no graph check)."""
    return len(tuple(labels)) - exactlin.affine_rank(_vectors(labels, dim))


def subset_is_affinely_independent(labels, e: Edge, dim: int) -> bool:
    """Affine independence of a cell subset; agrees with G_X being a
    forest (checked here, a failure means the theorem broke)."""
    labels = tuple(labels)
    _check_pairing(labels, e)
    affine = exactlin.is_affinely_independent(_vectors(labels, dim))
    _, undirected = cell_subgraphs(labels)
    forest = cyclomatic_number(undirected) == 0
    assert affine == forest, f"affine independence {affine} != forest test {forest}"
    return affine


def subset_is_circuit(labels, e: Edge, dim: int) -> bool:
    """Minimal affine dependence; agrees with G_X being a plain cycle
    (the contracted pair counting as one undirected edge)."""
    labels = tuple(labels)
    _check_pairing(labels, e)
    vectors = _vectors(labels, dim)
    dependent = not exactlin.is_affinely_independent(vectors)
    minimal = dependent and all(
        exactlin.is_affinely_independent(vectors[:i] + vectors[i + 1 :])
        for i in range(len(vectors))
    )
    _, undirected = cell_subgraphs(labels)
    graph_side = is_cycle(undirected)
    assert minimal == graph_side, f"circuit test {minimal} != cycle test {graph_side}"
    return minimal


def subset_dimension(labels, e: Edge, dim: int) -> int:
    """Affine dimension; must equal |V(G_X)| + [e in G_X] - m - 1."""
    labels = tuple(labels)
    has_pair = _check_pairing(labels, e)
    affine_dim = exactlin.affine_dimension(_vectors(labels, dim))
    _, undirected = cell_subgraphs(labels)
    # Under the pairing precondition the contracted edge is in G_X exactly
    # when both of its points are in X.
    indicator = 1 if has_pair else 0
    m = len(components_of_edges(undirected))
    formula = len(vertices_of(undirected)) + indicator - m - 1
    assert affine_dim == formula, f"dimension {affine_dim} != formula {formula}"
    return affine_dim


def subset_corank(labels, e: Edge, dim: int) -> int:
    """|X| - dim(X) - 1; must equal the cyclomatic number of G_X."""
    labels = tuple(labels)
    _check_pairing(labels, e)
    corank = len(labels) - subset_dimension(labels, e, dim) - 1
    _, undirected = cell_subgraphs(labels)
    assert corank == cyclomatic_number(undirected), "corank != cyclomatic number"
    return corank


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def signature_of_corank1(labels, e: Edge, dim: int) -> Signature:
    """Sign census of the affine dependence of a corank-1 subset,
    canonicalized so positive >= negative; must match the closed form
    (ceil(m/2), ceil(m/2), |X| - 2 ceil(m/2)) with m the circumference."""
    labels = tuple(labels)
    _check_pairing(labels, e)
    if point_corank(labels, dim) != 1:
        raise NotCorankOne(f"corank {point_corank(labels, dim)} != 1")
    lam = exactlin.affine_dependence(_vectors(labels, dim))
    assert lam is not None
    pos = sum(1 for x in lam if x > 0)
    neg = sum(1 for x in lam if x < 0)
    zero = len(lam) - pos - neg
    if pos < neg:
        pos, neg = neg, pos
    _, undirected = cell_subgraphs(labels)
    m = circumference(undirected)
    half = -(-m // 2)
    expected = (half, half, len(labels) - 2 * half)
    assert (pos, neg, zero) == expected, f"signature {(pos, neg, zero)} != {expected}"
    return Signature(pos, neg, zero)


def dependence_separates_contracted_pair(labels, e: Edge, dim: int) -> bool:
    """For a corank-1 circuit through the contracted pair, the two points
    carry dependence coefficients of opposite signs (Radon split)."""
    labels = tuple(labels)
    lam = exactlin.affine_dependence(_vectors(labels, dim))
    if lam is None:
        return False
    p, q = _contracted_pair(e)
    cp = lam[labels.index(p)]
    cq = lam[labels.index(q)]
    return cp * cq < 0


# ---------------------------------------------------------------------------
# The five structural properties of a cell's subgraphs.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellPropertiesReport:
    only_directed_cycle_is_pair: bool
    spans_all_nodes: bool
    closed_under_swap: bool
    undirected_balanced: bool
    basis_odd_cycles: int

    @property
    def at_most_one_odd(self) -> bool:
        return self.basis_odd_cycles <= 1

    def all_pass(self) -> bool:
        return (
            self.only_directed_cycle_is_pair
            and self.spans_all_nodes
            and self.closed_under_swap
            and self.undirected_balanced
            and self.at_most_one_odd
        )

    def to_json_dict(self) -> dict:
        return {
            "only_directed_cycle_is_pair": self.only_directed_cycle_is_pair,
            "spans_all_nodes": self.spans_all_nodes,
            "closed_under_swap": self.closed_under_swap,
            "undirected_balanced": self.undirected_balanced,
            "basis_odd_cycles": self.basis_odd_cycles,
            "at_most_one_odd": self.at_most_one_odd,
        }


def _digraph_has_cycle(arcs) -> bool:
    adj: dict[int, list[int]] = {}
    for i, j in arcs:
        adj.setdefault(i, []).append(j)
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[int, int] = {}

    def visit(v) -> bool:
        color[v] = GRAY
        for w in adj.get(v, ()):
            c = color.get(w, WHITE)
            if c == GRAY or (c == WHITE and visit(w)):
                return True
        color[v] = BLACK
        return False

    return any(color.get(v, WHITE) == WHITE and visit(v) for v in list(adj))


def _reachable(arcs, start: int, goal: int) -> bool:
    adj: dict[int, list[int]] = {}
    for i, j in arcs:
        adj.setdefault(i, []).append(j)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w == goal:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def verify_cell_properties(g: Graph, e: Edge, cell: Cell) -> CellPropertiesReport:
    """Check the five structural properties of the cell subgraphs."""
    k1, k2 = e
    arcs, undirected = cell_subgraphs(cell.points)
    p, q = _contracted_pair(e)

    rest = frozenset(arcs) - {p, q}
    only_cycle = (
        p in arcs
        and q in arcs
        and not _digraph_has_cycle(rest)
        and not _reachable(rest, k2, k1)
        and not _reachable(rest, k1, k2)
    )

    spans = vertices_of(undirected) == set(range(g.node_count))

    def swap(v: int) -> int:
        return k2 if v == k1 else k1 if v == k2 else v

    closed = True
    for i, j in arcs:
        si, sj = swap(i), swap(j)
        if si == sj:
            continue
        if edge(si, sj) in g.edges and (si, sj) not in arcs:
            closed = False
            break

    balanced = is_balanced_subgraph(undirected, e)

    try:
        basis_cycles = fundamental_cycles_of(undirected, forbid=edge(*e))
    except NoSuchSpanningTree:
        # The contracted edge is a bridge of G_C: no cycle contains it.
        basis_cycles = fundamental_cycles_of(undirected)
    odd = sum(1 for cyc in basis_cycles if len(cyc) % 2 == 1)

    return CellPropertiesReport(only_cycle, spans, closed, balanced, odd)


# ---------------------------------------------------------------------------
# Maximum corank and the alternating spanning-tree basis.
# ---------------------------------------------------------------------------


def max_corank(g: Graph, e: Edge, cells: list[Cell] | None = None) -> tuple[int, Cell]:
    """Maximum corank over the subdivision's cells, with a witness cell."""
    if cells is None:
        cells = edge_contraction_subdivision(g, e)
    best_cell = None
    best = -1
    for cell in cells:
        corank = subset_corank(cell.points, e, cell.dim)
        if corank > best:
            best, best_cell = corank, cell
    return best, best_cell


def build_alternating_basis(g: Graph, e: Edge, tree_edges) -> tuple[DirectedEdge, ...]:
    """Simplex basis of a cell from a spanning tree through the contracted
    edge: walk from k1 to each node, orienting path edges alternately, and
    add both contracted points.  The result is affinely independent, its
    graph is the tree, and it spans a lower face of the lifted polytope
    (checked), hence lies in a unique cell of the subdivision."""
    k1, k2 = e
    tree = frozenset(edge(u, v) for u, v in tree_edges)
    if not tree <= g.edges:
        raise EdgeNotInGraph("tree edges must be graph edges")
    if edge(k1, k2) not in tree:
        raise TreeMissingContractedEdge(f"{e} not in the spanning tree")
    if len(tree) != g.node_count - 1 or cyclomatic_number(tree) != 0:
        raise ValueError("edge set is not a spanning tree")
    if vertices_of(tree) != set(range(g.node_count)) and g.node_count > 1:
        raise ValueError("tree does not span the graph")

    labels = list(_contracted_pair(e))
    for i in range(g.node_count):
        if i in (k1, k2):
            continue
        path = _tree_path(tree, k1, i)
        r = len(path) - 1
        a, b = path[-1], path[-2]
        sign = (-1) ** (r - 1) if path[1] == k2 else (-1) ** r
        labels.append((a, b) if sign == 1 else (b, a))

    x = tuple(sorted(labels))
    arcs, undirected = cell_subgraphs(x)
    assert undirected == tree
    vectors = _vectors(x, g.node_count - 1)
    assert exactlin.is_affinely_independent(vectors)

    # The unique alpha with <x, alpha> = -lift(x) on the basis must support
    # the whole lifted configuration from below.
    n = g.node_count - 1
    rows, rhs = [], []
    for lab in x:
        if lab == (k2, k1):
            continue
        rows.append(phi(lab, n))
        rhs.append(Fraction(0) if lab == (k1, k2) else Fraction(-1))
    alpha = exactlin.solve_unique(rows, rhs)
    for u, v in g.edges:
        for lab in ((u, v), (v, u)):
            w = 0 if edge(u, v) == edge(k1, k2) else 1
            value = exactlin.dot(phi(lab, n), alpha) + w
            assert value >= 0, f"basis functional fails below point {lab}"
    return x


# ---------------------------------------------------------------------------
# Closed-form cell volumes.
# ---------------------------------------------------------------------------


def corank2_cycle_pair(undirected, e: Edge) -> tuple[frozenset[Edge], frozenset[Edge]]:
    """Basis pair of plain cycles for a corank-2 cell subgraph: the second
    cycle even and avoiding the contracted edge; lexicographically least
    such pair.  Any two distinct cycles of a cyclomatic-number-2 graph
    are a basis of its cycle space."""
    e = edge(*e)
    cycles = all_cycles(undirected)
    candidates = []
    for o2 in cycles:
        if len(o2) % 2 != 0 or e in o2:
            continue
        for o1 in cycles:
            if o1 != o2:
                candidates.append((tuple(sorted(o1)), tuple(sorted(o2))))
    if not candidates:
        raise NoValidCyclePair("no basis pair with an even cycle avoiding the edge")
    o1, o2 = min(candidates)
    return frozenset(o1), frozenset(o2)


def _cycle_vertex_order(cycle_edges) -> list[int]:
    adj: dict[int, list[int]] = {}
    for u, v in cycle_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    order = [start, min(adj[start])]
    while len(order) < len(adj):
        prev, cur = order[-2], order[-1]
        order.append(next(w for w in adj[cur] if w != prev))
    return order


def _arc_signs_along(cycle_edges, arcs) -> dict[Edge, int]:
    """Sign of each cycle edge's arc relative to one traversal: +1 when
    the arc of the directed cell subgraph points along the traversal."""
    order = _cycle_vertex_order(cycle_edges)
    signs = {}
    m = len(order)
    for i in range(m):
        u, v = order[i], order[(i + 1) % m]
        if (u, v) in arcs:
            signs[edge(u, v)] = 1
        else:
            assert (v, u) in arcs, f"cycle edge {(u, v)} missing from the cell"
            signs[edge(u, v)] = -1
    return signs


def corank2_gamma_delta(
    arcs, o1, o2, e: Edge, reference: Edge | None = None
) -> tuple[int, int]:
    """Orientation census of the shared edges of the two basis cycles.

    gamma counts shared edges in the same orientation class as the
    reference edge (a point of the even cycle outside the other one)
    along the even cycle; delta the rest.  Swapping the reference swaps
    gamma and delta, so the product used by the volume formula is
    reference independent.
    """
    o1, o2 = frozenset(o1), frozenset(o2)
    shared = o1 & o2
    if not shared:
        return 0, 0
    signs = _arc_signs_along(o2, arcs)
    outside = sorted(o2 - o1)
    if reference is None:
        reference = outside[0]
    reference = edge(*reference)
    if reference not in o2 - o1:
        raise ValueError("reference must be an edge of the even cycle only")
    ref_sign = signs[reference]
    gamma = sum(1 for f in sorted(shared) if signs[f] == ref_sign)
    return gamma, len(shared) - gamma


def cell_volume_closed_form(cell: Cell, e: Edge, oracle: int | None = None) -> int:
    """Closed-form normalized volume for cells of corank 0, 1, 2; always
    cross-checked against the triangulation oracle."""
    corank = subset_corank(cell.points, e, cell.dim)
    arcs, undirected = cell_subgraphs(cell.points)
    if corank == 0:
        result = 2
    elif corank == 1:
        result = circumference(undirected)
    elif corank == 2:
        o1, o2 = corank2_cycle_pair(undirected, e)
        gamma, delta = corank2_gamma_delta(arcs, o1, o2, e)
        m1, m2 = len(o1), len(o2)
        value = Fraction(m1 * m2, 2) - 2 * gamma * delta
        assert value.denominator == 1 and value > 0
        result = int(value)
    else:
        raise UnsupportedCorank(f"corank {corank}: triangulation oracle only")
    if oracle is None:
        oracle = normalized_volume_of_cell(cell.vectors())
    assert result == oracle, f"closed form {result} != oracle {oracle}"
    return result


def interior_lift_subcells(cell: Cell, point: DirectedEdge) -> list[tuple[DirectedEdge, ...]]:
    """Subcells of the regular subdivision of a cell induced by lifting a
    single point to height 1 (the census used in the corank-2 proof)."""
    if point not in cell.points:
        raise ValueError(f"{point} not a point of the cell")
    weights = [1 if lab == point else 0 for lab in cell.points]
    vectors = cell.vectors()
    subcells = []
    for _, _, mask in regular_subdivision_supports(vectors, weights):
        subcells.append(
            tuple(cell.points[i] for i in range(len(cell.points)) if mask >> i & 1)
        )
    return subcells


@dataclass(frozen=True)
class CellInvariantReport:
    """Everything the theorems say about one cell, with pass/fail flags."""

    corank: int
    cyclomatic: int
    simplicial: bool
    circuit: bool
    properties: CellPropertiesReport
    volume_closed_form: int | None
    volume_oracle: int
    checks: dict

    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json_dict(self) -> dict:
        return {
            "corank": self.corank,
            "cyclomatic": self.cyclomatic,
            "simplicial": self.simplicial,
            "circuit": self.circuit,
            "properties": self.properties.to_json_dict(),
            "volume_closed_form": self.volume_closed_form,
            "volume_oracle": self.volume_oracle,
            "checks": dict(sorted(self.checks.items())),
        }


def analyze_cell(g: Graph, e: Edge, cell: Cell) -> CellInvariantReport:
    """Evaluate every per-cell statement: the five subgraph properties,
    corank = cyclomatic number, simplicial iff spanning tree, circuit iff
    plain cycle, signatures of corank-1 cells, and volume closed forms
    against the oracle."""
    arcs, undirected = cell_subgraphs(cell.points)
    properties = verify_cell_properties(g, e, cell)
    corank = subset_corank(cell.points, e, cell.dim)
    cyclomatic = cyclomatic_number(undirected)
    simplicial = cell.is_simplicial()
    spanning_tree = (
        cyclomatic == 0
        and vertices_of(undirected) == set(range(g.node_count))
        and len(components_of_edges(undirected)) == 1
    )
    circuit = subset_is_circuit(cell.points, e, cell.dim)
    dependent = not exactlin.is_affinely_independent(_vectors(cell.points, cell.dim))
    oracle = normalized_volume_of_cell(cell.vectors())
    closed: int | None
    if corank <= 2:
        closed = cell_volume_closed_form(cell, e, oracle=oracle)
    else:
        closed = None
    checks = {
        "properties": properties.all_pass(),
        "corank_equals_cyclomatic": corank == cyclomatic,
        "simplicial_iff_spanning_tree": simplicial == spanning_tree,
        "circuit_iff_plain_cycle": circuit == is_cycle(undirected),
        "dependent_iff_cyclic": dependent == (cyclomatic > 0),
        "volume_closed_form": closed is None or closed == oracle,
    }
    if corank == 1:
        signature = signature_of_corank1(cell.points, e, cell.dim)
        checks["signature_closed_form"] = signature.positive == signature.negative
        if circuit:
            checks["radon_split"] = dependence_separates_contracted_pair(
                cell.points, e, cell.dim
            )
    return CellInvariantReport(
        corank, cyclomatic, simplicial, circuit, properties, closed, oracle, checks
    )


# ---------------------------------------------------------------------------
# Special graph families.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialGraphReport:
    graph_class: str
    all_simplicial: bool | None = None
    all_circuits: bool | None = None

    def passed(self) -> bool:
        return all(v is not False for v in (self.all_simplicial, self.all_circuits))

    def to_json_dict(self) -> dict:
        out: dict = {"graph_class": self.graph_class}
        if self.all_simplicial is not None:
            out["all_simplicial"] = self.all_simplicial
        if self.all_circuits is not None:
            out["all_circuits"] = self.all_circuits
        return out


def classify_special_graphs(g: Graph, e: Edge, cells: list[Cell]) -> SpecialGraphReport:
    """Check the tree / even cycle / odd cycle statements when they apply:
    trees and even cycles give only simplicial cells (a triangulation),
    odd cycles give only circuits."""
    edges = g.edges
    if cyclomatic_number(edges) == 0:
        kind = "tree"
    elif is_cycle(edges) and vertices_of(edges) == set(range(g.node_count)):
        kind = "even_cycle" if len(edges) % 2 == 0 else "odd_cycle"
    else:
        return SpecialGraphReport("general")
    if kind in ("tree", "even_cycle"):
        return SpecialGraphReport(kind, all_simplicial=all(c.is_simplicial() for c in cells))
    return SpecialGraphReport(
        kind, all_circuits=all(subset_is_circuit(c.points, e, c.dim) for c in cells)
    )
