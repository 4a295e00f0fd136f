"""Community detection with an adaptive GA over a maximum-similarity spanning tree."""

from .encoding import Chromosome, EncodingError, Partition, decode, encode, evaluate
from .ga import (
    AdaptiveState,
    EvolutionResult,
    GaConfig,
    MutationDistribution,
    MutationKind,
    build_mutation_distribution,
    crossover,
    evolve,
    generate_initial_individual,
    generate_initial_population,
    mutate,
    roulette_select,
    update_alpha,
)
from .graph import Graph, GraphFormatError, WeightedGraph, load_edge_list, read_edge_list
from .metrics import GroundTruth, community_q, modularity, nmi
from .similarity import Measure, SimilarityKind, weigh_edges
from .skeleton import SkeletonTree, build_mst

__version__ = "0.1.0"
