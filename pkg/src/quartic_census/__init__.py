"""Exact arithmetic of binary quartic forms, their quartic rings, and
desk-scale censuses of the dihedral and Klein fields they cut out."""

__version__ = "0.1.0"

from .forms import (  # noqa: F401
    BinQuadForm,
    BinQuartForm,
    FamilyCoords,
    GL2Mat,
    act_quadratic,
    act_quartic,
    disc_quadratic,
    disc_quartic,
    family_membership,
    from_form,
    jacobian_det,
    to_form,
)
