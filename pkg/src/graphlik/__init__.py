"""graphlik: exact likelihood of graphs under uniform random vertex addition."""

from .canonical import (
    CanonicalKey,
    are_isomorphic,
    automorphism_count,
    canonical_key,
    canonical_relabel,
    enumerate_nonisomorphic,
)
from .errors import EdgeListParseError, Graph6ParseError, LimitExceededError
from .graphs import (
    FamilySpec,
    Graph,
    complement,
    family_graph,
    induced_subgraph,
    parse_edge_json,
    parse_graph6,
    relabel,
    to_edge_json,
    to_graph6,
)
from .growth import (
    Estimate,
    GrowthStep,
    GrowthTrace,
    SplitMix64,
    estimate_likelihood,
    graph_from_trace,
    grow,
    uniform_subset,
)
from .likelihood import (
    CensusEntry,
    LikelihoodBounds,
    NoClosedFormError,
    PathConstruction,
    cycle_from_path_relation,
    enumerate_path_constructions,
    family_closed_form,
    likelihood_bounds,
    likelihood_by_orderings,
    likelihood_census,
    likelihood_exact,
    likelihood_from_paths,
    ordering_probability,
    process_distribution_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalKey",
    "CensusEntry",
    "EdgeListParseError",
    "Estimate",
    "FamilySpec",
    "Graph",
    "Graph6ParseError",
    "GrowthStep",
    "GrowthTrace",
    "LikelihoodBounds",
    "LimitExceededError",
    "NoClosedFormError",
    "PathConstruction",
    "SplitMix64",
    "are_isomorphic",
    "automorphism_count",
    "canonical_key",
    "canonical_relabel",
    "complement",
    "cycle_from_path_relation",
    "enumerate_nonisomorphic",
    "enumerate_path_constructions",
    "estimate_likelihood",
    "family_closed_form",
    "family_graph",
    "graph_from_trace",
    "grow",
    "induced_subgraph",
    "likelihood_bounds",
    "likelihood_by_orderings",
    "likelihood_census",
    "likelihood_exact",
    "likelihood_from_paths",
    "ordering_probability",
    "parse_edge_json",
    "parse_graph6",
    "process_distribution_oracle",
    "relabel",
    "to_edge_json",
    "to_graph6",
    "uniform_subset",
    "__version__",
]
