"""Finite-dimensional compact quantum groups given by exact structure constants."""

from .characters import (NotACharacter, NotExactlyRepresentable, characters, commutator_ideal,
                         convolution_table, is_star_character, translate)
from .core import (FiniteQuantumGroup, GroupTable, InvalidQuantumGroup, check_morphism, cyclic_group,
                   direct_product_table, function_algebra, group_algebra, solve_antipode, solve_counit,
                   symmetric_group, tensor_functional, tensor_product, trivial_quantum_group)
from .corep import CorepDecomposition, Corepresentation, CorepError, corep_decompose
from .haar import (GnsData, MultiplicativeUnitary, NotAState, NotFaithful, Quotient, Reduced, gns,
                   gram_matrix, haar_solve, is_positive, is_state, left_kernel, multiplicative_unitary,
                   quotient_algebra, reduce, tensor_haar_norm2)
