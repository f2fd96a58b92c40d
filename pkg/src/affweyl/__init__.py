"""Extended affine Weyl groups with Frobenius action.

Exact computation of generic Newton points, lambda invariants, Kottwitz
points, defects and cordiality for elements of extended affine Weyl groups,
together with the quantum Bruhat graph and a Bruhat-order brute-force oracle.
"""

from __future__ import annotations

from .affine import (
    AffineElement,
    affine_identity,
    canonical_lp,
    enumerate_length_le,
    eta_sigma,
    from_affine_word,
    from_parts,
    is_fundamental,
    lower_interval,
    lp_set,
    translation,
    virtual_dimension,
)
from .conjclass import (
    SigmaClass,
    class_of,
    identity_class,
    kottwitz_point,
    newton_point,
)
from .generic import (
    CordialResult,
    GenericResult,
    generic_class,
    generic_class_general,
    generic_lambda,
    generic_newton,
    generic_newton_general,
    is_cordial,
    is_cordial_general,
    oracle_generic_class,
)
from .qbg import QBGraph
from .rootdata import RootDatum, datum
from .weyl import WeylElement, from_word, weyl_group

__all__ = [
    "AffineElement",
    "CordialResult",
    "GenericResult",
    "QBGraph",
    "RootDatum",
    "SigmaClass",
    "WeylElement",
    "affine_identity",
    "canonical_lp",
    "class_of",
    "datum",
    "enumerate_length_le",
    "eta_sigma",
    "from_affine_word",
    "from_parts",
    "from_word",
    "generic_class",
    "generic_class_general",
    "generic_lambda",
    "generic_newton",
    "generic_newton_general",
    "identity_class",
    "is_cordial",
    "is_cordial_general",
    "is_fundamental",
    "kottwitz_point",
    "lower_interval",
    "lp_set",
    "newton_point",
    "oracle_generic_class",
    "translation",
    "virtual_dimension",
    "weyl_group",
]
__version__ = "0.1.0"
