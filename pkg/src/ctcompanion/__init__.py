"""Companion bases, c-vectors and Ringel's map for cluster-tilted algebras of Dynkin type."""

from .companion import CompanionBasis, d_set, d_vector, expand_in_basis, is_companion_basis, search_companion_bases
from .exchange import Quiver, Seed, dynkin_quiver, gamma_quiver, initial_seed, mutate_seed, positive_c_vectors
from .repq import build_indecomposable, companion_from_ringel, phi_B_positive, ringel_matrix, tilting_from_dims
from .root_system import RootSystem, build_root_system, cartan_datum, root_system
from .verify import verify_class, verify_seed

__version__ = "0.1.0"
