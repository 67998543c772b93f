"""Exact tableau, flip-operator and multiline-queue machinery for symmetric
Macdonald polynomials, their integral forms, modified Macdonald polynomials
and Jack polynomials."""

from .fillings import Filling
from .formulas import build, build_J_super, jack, schur_oracle, verify_suite
from .mlq import MultilineQueue, f_alpha
from .qtalg import PolyAlpha, PolyQT, QTRat, XPoly

__version__ = "0.1.0"

__all__ = [
    "Filling",
    "MultilineQueue",
    "PolyAlpha",
    "PolyQT",
    "QTRat",
    "XPoly",
    "build",
    "build_J_super",
    "f_alpha",
    "jack",
    "schur_oracle",
    "verify_suite",
    "__version__",
]
