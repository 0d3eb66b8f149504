"""Finite-model verification of frame-valued topology and order structures.

The package builds desk-scale instances of frames, fuzzy topologies, fuzzy
orders, open-filter spaces and their monad/algebra structure, and checks the
governing laws by exhaustive (or explicitly sampled) enumeration,
cross-validated against an independent two-valued oracle.
"""

from .caps import Caps, DEFAULT_CAPS
from .errors import (
    InvalidParameterError,
    LatcheckError,
    NotALatticeError,
    NotDistributiveError,
    PreconditionError,
    ResourceLimitError,
)
from .frame import Frame, bound, check_frame_laws, from_cover_relation, make_chain, make_powerset, make_product
from .lset import CarrierMap, LSubset, constant, image, preimage, sub
from .ltop import LTopSpace, generate_topology, is_continuous, is_t0, specialization_order
from .lorder import LOrder, check_axioms, inf_of, is_complete, is_dcpo, is_directed, is_ideal, sup_of
from .report import CheckEntry, VerificationReport

__all__ = [
    "Caps",
    "DEFAULT_CAPS",
    "CarrierMap",
    "CheckEntry",
    "Frame",
    "LOrder",
    "LSubset",
    "LTopSpace",
    "LatcheckError",
    "InvalidParameterError",
    "NotALatticeError",
    "NotDistributiveError",
    "PreconditionError",
    "ResourceLimitError",
    "VerificationReport",
    "bound",
    "check_axioms",
    "check_frame_laws",
    "constant",
    "from_cover_relation",
    "generate_topology",
    "image",
    "inf_of",
    "is_complete",
    "is_continuous",
    "is_dcpo",
    "is_directed",
    "is_ideal",
    "is_t0",
    "make_chain",
    "make_powerset",
    "make_product",
    "preimage",
    "specialization_order",
    "sub",
    "sup_of",
]
