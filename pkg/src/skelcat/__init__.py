"""Finite categories, coequalizer normal forms and the (groupoid, skeletal) pretorsion theory."""
from __future__ import annotations

__version__ = "0.1.0"

from .coeq import IdentificationSpec, QArrow, QuotientCat, coequalize
from .errors import BudgetExceeded, CategoryError, SkelcatError
from .fincat import (
    FinCat,
    Functor,
    classify,
    enumerate_functors,
    make_category,
    make_functor,
    subgroupoid,
    validate_category,
)
from .kernel import BACKEND
from .words import closure_oracle, is_reduced, phi, reduce, star

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CategoryError",
    "FinCat",
    "Functor",
    "IdentificationSpec",
    "QArrow",
    "QuotientCat",
    "SkelcatError",
    "classify",
    "closure_oracle",
    "coequalize",
    "enumerate_functors",
    "is_reduced",
    "make_category",
    "make_functor",
    "phi",
    "reduce",
    "star",
    "subgroupoid",
    "validate_category",
]
