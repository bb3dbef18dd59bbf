"""Symplectic normal forms for prime-order mapping classes of closed surfaces."""

from .classdata import (ConjugacyClass, RotationData, enumerate_classes, genus_of, mod_inverse,
                        normalize_class, rotation_data, validate_class)
from .errors import InvariantError, ValidationError
from .intersection import (PairLabel, adapted_intersection, identification_matrix, kept_pairs,
                           pair_intersection, presentation_intersection, symbol_intersection)
from .intmatrix import (IntMatrix, adapted_block_matrix, conjugate, is_symplectic, matrix_order,
                        nonperm_block, perm_block, standard_J, unimodular_inverse)
from .normalform import CandidateVerdict, NormalFormResult, candidate_check, normal_form, render
from .presentation import (Presentation, abelianize, adapted_action_matrix, build_presentation,
                           h_image, t0_presentation)
from .reduction import find_link, free_reduce, link_step, tighten
from .words import Generator, format_word, parse_word, power_word

__version__ = "0.1.0"
