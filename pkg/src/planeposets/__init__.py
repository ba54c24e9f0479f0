"""Exact computations on plane posets: the bijection with permutations, the
weak Bruhat order, the two products, q-deformed coproducts and the pairing."""

from .bruhat import HasseGraph, covers, hasse, leq, saturated_chain, weak_bruhat_leq
from .hopf import (
    TensorElement,
    VectorElement,
    delta_prime_q,
    delta_q,
    delta_tilde_q,
    gram_matrix,
    gram_rank_at,
    pairing,
    phi,
    product_m,
    product_under,
)
from .poset import (
    EMPTY,
    POINT,
    Permutation,
    PlanePoset,
    antichain,
    biideals,
    chain,
    compose,
    enumerate_posets,
    iota,
    is_plane_forest,
    level,
    parse_poset,
    psi,
    psi_inverse,
    restrict,
    under,
    validate,
)
from .qpoly import QPolynomial
from .verify import verify_identity

__version__ = "0.1.0"
