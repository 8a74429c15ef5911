"""Exact adjacency (symmetric edge) polytopes of graphs: facets,
edge contraction subdivisions, cell subgraphs, and their invariants."""

from .graphcore import Graph, contract_edge
from .polytope import (
    FacetCertificate,
    PointConfiguration,
    build_configuration,
    enumerate_facets,
    normalized_volume,
    normalized_volume_of_cell,
)
from .subdivision import Cell, edge_contraction_subdivision, facet_correspondence

__all__ = [
    "Graph",
    "contract_edge",
    "PointConfiguration",
    "FacetCertificate",
    "build_configuration",
    "enumerate_facets",
    "normalized_volume",
    "normalized_volume_of_cell",
    "Cell",
    "edge_contraction_subdivision",
    "facet_correspondence",
]
