import random

import pytest

from conftest import (
    CORANK2_CELL_ARCS,
    cycle_graph,
    running_example,
    random_connected_graph,
    star_graph,
)

from apx.cellanalysis import (
    Signature,
    build_alternating_basis,
    cell_subgraphs,
    cell_volume_closed_form,
    classify_special_graphs,
    corank2_cycle_pair,
    corank2_gamma_delta,
    dependence_separates_contracted_pair,
    interior_lift_subcells,
    max_corank,
    point_corank,
    signature_of_corank1,
    subset_corank,
    subset_dimension,
    subset_is_affinely_independent,
    subset_is_circuit,
    verify_cell_properties,
)
from apx.errors import (
    NotCorankOne,
    PreconditionViolated,
    TreeMissingContractedEdge,
    UnsupportedCorank,
)
from apx.graphcore import Graph, balanced_circuit_rank, edge
from apx.polytope import normalized_volume_of_cell
from apx.subdivision import edge_contraction_subdivision


def corank2_cell():
    cells = edge_contraction_subdivision(running_example(), (0, 3))
    target = frozenset(CORANK2_CELL_ARCS)
    (cell,) = [c for c in cells if frozenset(c.points) == target]
    return cell


def test_cell_subgraphs_single_point():
    arcs, undirected = cell_subgraphs([(1, 2)])
    assert arcs == frozenset({(1, 2)})
    assert undirected == frozenset({(1, 2)})


def test_corank2_cell_subgraph():
    cell = corank2_cell()
    arcs, undirected = cell_subgraphs(cell.points)
    assert arcs == frozenset(CORANK2_CELL_ARCS)
    assert len(cell.points) == 9
    assert edge(0, 3) in undirected


def test_c5_cells_are_six_arrow_graphs():
    cells = edge_contraction_subdivision(cycle_graph(5), (0, 4))
    for cell in cells:
        arcs, undirected = cell_subgraphs(cell.points)
        assert len(arcs) == 6
        assert undirected == cycle_graph(5).edges


def test_cell_properties_c4():
    g = cycle_graph(4)
    for cell in edge_contraction_subdivision(g, (0, 3)):
        report = verify_cell_properties(g, (0, 3), cell)
        assert report.all_pass()
        _, undirected = cell_subgraphs(cell.points)
        # Simplicial cells: spanning tree plus the doubled edge.
        assert len(undirected) == 3 and len(cell.points) == 4


def test_cell_properties_running_example_all_cells():
    g = running_example()
    for cell in edge_contraction_subdivision(g, (0, 3)):
        assert verify_cell_properties(g, (0, 3), cell).all_pass()


def test_cell_properties_corank2_cell_basis():
    report = verify_cell_properties(running_example(), (0, 3), corank2_cell())
    assert report.all_pass()
    assert report.basis_odd_cycles == 1


def test_subset_independent_empty():
    assert subset_is_affinely_independent((), (0, 3), 3) is True


def test_subset_even_cycle_circuit_dependent():
    cell = corank2_cell()
    even_cycle = ((0, 2), (3, 2), (3, 5), (0, 5))
    assert subset_is_affinely_independent(even_cycle, (0, 3), cell.dim) is False
    assert subset_is_circuit(even_cycle, (0, 3), cell.dim) is True


def test_subset_odd_cycle_with_pair_dependent():
    cell = corank2_cell()
    triangle = ((0, 2), (3, 2), (0, 3), (3, 0))
    assert subset_is_affinely_independent(triangle, (0, 3), cell.dim) is False
    assert subset_is_circuit(triangle, (0, 3), cell.dim) is True
    assert dependence_separates_contracted_pair(triangle, (0, 3), cell.dim)


def test_subset_forest_not_circuit():
    cell = corank2_cell()
    assert subset_is_circuit(((0, 2), (3, 5)), (0, 3), cell.dim) is False


def test_subset_dependent_but_not_minimal():
    cell = corank2_cell()
    bigger = ((0, 2), (3, 2), (3, 5), (0, 5), (0, 6))
    assert subset_is_affinely_independent(bigger, (0, 3), cell.dim) is False
    assert subset_is_circuit(bigger, (0, 3), cell.dim) is False


def test_pairing_precondition():
    cell = corank2_cell()
    with pytest.raises(PreconditionViolated):
        subset_is_affinely_independent(((0, 3), (0, 2)), (0, 3), cell.dim)


def test_one_sided_pair_is_independent_despite_cycle():
    # The restriction in the subset theorems is necessary: with only one
    # contracted point the cycle's points are affinely independent.
    cell = corank2_cell()
    from apx import exactlin
    from apx.polytope import phi

    one_sided = [(0, 2), (3, 2), (0, 3)]
    assert exactlin.is_affinely_independent([phi(l, cell.dim) for l in one_sided])


def test_subset_dimension_examples():
    assert subset_dimension(((1, 2),), (0, 3), 3) == 0
    assert subset_dimension(((0, 3), (3, 0)), (0, 3), 3) == 1
    cells = edge_contraction_subdivision(cycle_graph(5), (0, 4))
    assert subset_dimension(cells[0].points, (0, 4), 4) == 4


def test_subset_corank_examples():
    for cell in edge_contraction_subdivision(cycle_graph(4), (0, 3)):
        assert subset_corank(cell.points, (0, 3), cell.dim) == 0
    for cell in edge_contraction_subdivision(cycle_graph(5), (0, 4)):
        assert subset_corank(cell.points, (0, 4), cell.dim) == 1
    assert subset_corank(corank2_cell().points, (0, 3), 6) == 2


def test_signature_c5_cell():
    cells = edge_contraction_subdivision(cycle_graph(5), (0, 4))
    for cell in cells:
        assert signature_of_corank1(cell.points, (0, 4), cell.dim) == Signature(3, 3, 0)


def test_signature_even_cycle_circuit():
    cell = corank2_cell()
    even_cycle = ((0, 2), (3, 2), (3, 5), (0, 5))
    assert signature_of_corank1(even_cycle, (0, 3), cell.dim) == Signature(2, 2, 0)


def test_signature_with_pendant_edge():
    cell = corank2_cell()
    with_pendant = ((0, 2), (3, 2), (3, 5), (0, 5), (0, 6))
    assert signature_of_corank1(with_pendant, (0, 3), cell.dim) == Signature(2, 2, 1)


def test_signature_requires_corank_one():
    with pytest.raises(NotCorankOne):
        signature_of_corank1(corank2_cell().points, (0, 3), 6)


def test_radon_split_on_corank1_circuits():
    rng = random.Random(97)
    seen = 0
    for _ in range(15):
        g = random_connected_graph(rng, max_nodes=6, max_edges=9)
        e = rng.choice(g.sorted_edges())
        for cell in edge_contraction_subdivision(g, e):
            if subset_corank(cell.points, e, cell.dim) != 1:
                continue
            if not subset_is_circuit(cell.points, e, cell.dim):
                continue
            assert dependence_separates_contracted_pair(cell.points, e, cell.dim)
            seen += 1
    assert seen > 0


def test_max_corank_examples():
    value, witness = max_corank(cycle_graph(4), (0, 3))
    assert value == 0 and witness.is_simplicial()
    value, _ = max_corank(cycle_graph(5), (0, 4))
    assert value == 1
    value, witness = max_corank(running_example(), (0, 3))
    assert value == 2 and len(witness.points) == 9


def test_max_corank_equals_balanced_circuit_rank():
    rng = random.Random(101)
    for _ in range(10):
        g = random_connected_graph(rng, max_nodes=6, max_edges=9)
        e = rng.choice(g.sorted_edges())
        value, _ = max_corank(g, e)
        assert value == balanced_circuit_rank(g, e)


def test_alternating_basis_c4():
    g = cycle_graph(4)
    tree = [(0, 1), (1, 2), (0, 3)]
    x = build_alternating_basis(g, (0, 3), tree)
    assert x == ((0, 1), (0, 3), (2, 1), (3, 0))
    cells = edge_contraction_subdivision(g, (0, 3))
    containing = [c for c in cells if set(x) <= set(c.points)]
    assert len(containing) == 1 and containing[0].is_simplicial()


def test_alternating_basis_single_edge():
    g = Graph.from_edges([(0, 1)])
    x = build_alternating_basis(g, (0, 1), [(0, 1)])
    assert x == ((0, 1), (1, 0))


def test_alternating_basis_requires_contracted_edge():
    with pytest.raises(TreeMissingContractedEdge):
        build_alternating_basis(cycle_graph(4), (0, 3), [(0, 1), (1, 2), (2, 3)])


def test_alternating_basis_running_example_corank2_completion():
    # Tree through {0, 3} whose non-tree fundamental cycles include two
    # balanced ones: the completing cell picks up one extra point per
    # balanced cycle, reaching the maximum corank 2.
    g = running_example()
    tree = [(0, 3), (0, 2), (3, 5), (0, 1), (3, 4), (0, 6)]
    x = build_alternating_basis(g, (0, 3), tree)
    assert len(x) == g.node_count
    cells = edge_contraction_subdivision(g, (0, 3))
    containing = [c for c in cells if set(x) <= set(c.points)]
    assert len(containing) == 1
    assert subset_corank(containing[0].points, (0, 3), 6) == 2


def test_alternating_basis_random_properties():
    rng = random.Random(103)
    from apx.graphcore import spanning_tree_of

    for _ in range(15):
        g = random_connected_graph(rng, max_nodes=7, max_edges=11)
        e = rng.choice(g.sorted_edges())
        tree = spanning_tree_of(g.edges, require=e)
        x = build_alternating_basis(g, e, tree)
        assert len(x) == g.node_count
        _, undirected = cell_subgraphs(x)
        assert undirected == tree


def test_cell_volume_c4_and_c5():
    for cell in edge_contraction_subdivision(cycle_graph(4), (0, 3)):
        assert cell_volume_closed_form(cell, (0, 3)) == 2
    for cell in edge_contraction_subdivision(cycle_graph(5), (0, 4)):
        assert cell_volume_closed_form(cell, (0, 4)) == 5


def test_cell_volume_corank2_cell():
    cell = corank2_cell()
    arcs, undirected = cell_subgraphs(cell.points)
    o1, o2 = corank2_cycle_pair(undirected, (0, 3))
    assert sorted(o1) == [(0, 2), (0, 3), (2, 3)]
    assert sorted(o2) == [(0, 2), (0, 5), (2, 3), (3, 5)]
    gamma, delta = corank2_gamma_delta(arcs, o1, o2, (0, 3))
    assert gamma * delta == 1
    assert cell_volume_closed_form(cell, (0, 3)) == 4
    assert normalized_volume_of_cell(cell.vectors()) == 4


def test_unsupported_corank_raises():
    # Gluing three triangles along the contracted edge gives balanced
    # circuit rank 3, so some cell has corank 3.
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    cells = edge_contraction_subdivision(g, (0, 1))
    value, witness = max_corank(g, (0, 1), cells)
    assert value == 3
    with pytest.raises(UnsupportedCorank):
        cell_volume_closed_form(witness, (0, 1))


def test_interior_lift_census_corank2_cell():
    # Lifting one point of the even cycle splits the corank-2 cell into
    # m2/2 - gamma corank-1 subcells (census from the volume proof).
    cell = corank2_cell()
    arcs, undirected = cell_subgraphs(cell.points)
    o1, o2 = corank2_cycle_pair(undirected, (0, 3))
    for a in ((3, 5), (0, 5)):
        gamma, _ = corank2_gamma_delta(arcs, o1, o2, (0, 3), reference=edge(*a))
        subcells = interior_lift_subcells(cell, a)
        corank1 = [s for s in subcells if point_corank(s, cell.dim) == 1]
        assert len(corank1) == len(o2) // 2 - gamma
        total = sum(normalized_volume_of_cell([c for c in _vecs(s)]) for s in subcells)
        assert total == 4


def _vecs(labels):
    from apx.polytope import phi

    return [phi(lab, 6) for lab in labels]


def test_corank1_cells_volume_property():
    rng = random.Random(107)
    for _ in range(10):
        g = random_connected_graph(rng, max_nodes=6, max_edges=9)
        e = rng.choice(g.sorted_edges())
        for cell in edge_contraction_subdivision(g, e):
            corank = subset_corank(cell.points, e, cell.dim)
            if corank <= 2:
                assert cell_volume_closed_form(cell, e) == normalized_volume_of_cell(
                    cell.vectors()
                )


def test_classify_special_graphs():
    star = star_graph(4)
    report = classify_special_graphs(
        star, (0, 1), edge_contraction_subdivision(star, (0, 1))
    )
    assert report.graph_class == "tree" and report.all_simplicial

    c4 = cycle_graph(4)
    report = classify_special_graphs(c4, (0, 3), edge_contraction_subdivision(c4, (0, 3)))
    assert report.graph_class == "even_cycle" and report.all_simplicial

    c5 = cycle_graph(5)
    report = classify_special_graphs(c5, (0, 4), edge_contraction_subdivision(c5, (0, 4)))
    assert report.graph_class == "odd_cycle" and report.all_circuits

    sample = running_example()
    report = classify_special_graphs(sample, (0, 3), [])
    assert report.graph_class == "general" and report.passed()
