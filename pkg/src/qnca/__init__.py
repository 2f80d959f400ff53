"""Exact quantum cluster seeds from iterated skew-polynomial algebras.

The pipeline: a presentation (generators, diagonal torus action,
lower-order straightening data) is validated, its canonical ladder of
homogeneous prime elements is computed, the quasi-commutation pairing and
the unique exchange matrix are derived, and the resulting quantum seed can
be mutated with an exact membership oracle for the Laurent property.  A
semiclassical (Poisson) mirror of the pipeline and closed-form exchange
matrices for Schubert and double Bruhat cells are included.
"""

from .catalog import (BZData, CartanData, QuantumMatrixAlgebra, ReducedWordData,
                      bz_exchange_matrix, cartan_data, quantum_matrices,
                      quantum_minor, schubert_exchange_matrix,
                      solid_minor_positions, word_data)
from .errors import (DegreeCapExceeded, InfeasibleSystem, MembershipError,
                     NonLaurentSolution, NotExactlyDivisible, PresentationError,
                     QncaError, UniquenessViolation, ValidationFailure)
from .mutation import (ExplorationReport, TorusEmbedding, embed_in_torus,
                       explore_exchange_graph, membership_in_R, mutate,
                       torus_multiply)
from .ore import (CGLPresentation, NCPoly, ValidationReport, ensure_hstar,
                  solve_h_star, validate_cgl)
from .poisson import (CPoly, PoissonPresentation, classical_seed_and_gsv_check,
                      poisson_matrices, poisson_prime_sequence, validate_poisson)
from .primes import (OmegaTable, PrimeSequence, compute_prime_sequence,
                     enumerate_xi, is_interval_permutation,
                     quasi_commutation_scalars, tau_presentation)
from .scalars import LaurentScalar, QPower, parse_scalar, scalar_to_text
from .seeds import (ConditionReport, QuantumSeed, build_seed, check_conditions,
                    initial_seed, solve_exchange_matrix)
from .torus import TorusElement

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
