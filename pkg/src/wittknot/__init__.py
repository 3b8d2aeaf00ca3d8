"""Exact rational Witt classes of knots and crossing-change obstructions."""
from .arith import factorize, is_prime, is_square_mod, squarefree_part
from .witt import (
    ZERO,
    DiagonalForm,
    LocalClass,
    WittInvariant,
    boundary_p,
    direct_sum,
    is_equal,
    negate,
    separating_primes,
    signature,
    tensor_gen,
    torsion_order,
    witt_invariant,
)
from .seifert import (
    SeifertMatrix,
    gram_schmidt,
    gram_schmidt_diagonalize,
    knot_determinant,
    knot_signature,
    mirror,
    rational_witt_class,
    stabilize,
    symmetrize,
)
from .unknotting import (
    CrossingContext,
    LensSurgeryDescription,
    chain_form,
    crossing_change_image,
    lickorish_solvable,
    solve_a,
    u1_obstruction,
    u1_targets,
    u2_candidate_filter,
    u2_target_forms,
)
from .pretzel import (
    PretzelParams,
    check_pretzel1,
    check_pretzel2,
    pretzel_class,
    upward_stabilize,
)
from .records import KnotRecord, emit, ingest

__version__ = "0.1.0"
