"""Persistent homology with cophenetic matroids, ramification forests and
the cophenetic distance between homology classes."""

from .field import QQ, PrimeField, parse_field
from .filtration import (FilteredComplex, Simplex, build_cech, build_vietoris_rips, clique_complex,
                         load_filtration, nerve, save_filtration)
from .homology import (Barcode, ChainVector, PersistencePair, boundary_apply, compute_persistence,
                       cophenetic_rank, cycle_snapshot)
from .matroid import (FilteredMatroid, IrreducibleSet, RankOracle, check_submodular, cophenetic_matroid,
                      coordinate_zeroing, cz_rank, induced_rank, irreducible_cover, is_irreducible,
                      linear_rank)
from .forest import (RamificationForest, RamificationNode, auto_seed, build_forest, export_dot,
                     export_newick, export_svg, ramification_value)
from .distance import DistanceMatrix, cophenetic_distance, distance_matrix

__version__ = "0.1.0"
