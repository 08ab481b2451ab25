"""SU_q(2): PBW normal form, Hopf structure, Haar state and truncated representation."""

from .algebra import (SUq2Algebra, SUq2Element, SUq2View, algebra, antipode, character, comultiply,
                      counit, format_terms, haar, monomials_upto)
from .rep import TruncatedRep, spectral_witness, truncated_rep
from .rewriting import letter_action_normal_form, parse_element, random_words, rewrite
