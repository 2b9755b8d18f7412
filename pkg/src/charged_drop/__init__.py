"""Discrete-charge charged-drop solver.

Exact two-charge minimizers via unduloid geometry and elliptic integrals,
many-charge Coulomb configuration optimization inside a ball, and existence
phase diagrams over (eps, gamma, N).
"""

from . import charges, cli, elliptic, regime, svg, two_charge, unduloid
from .charges import ChargeConfig, coulomb_energy, evaporation_margin, optimize
from .errors import (
    BadBracketError,
    ChargedDropError,
    DegenerateGeometryError,
    DomainError,
    InfeasibleError,
    NoRootError,
)
from .regime import ClassifierConstants, Label, RegimeCell, classify
from .two_charge import TwoChargeSolution, generalized_energy, minimize
from .unduloid import CaseKind, UnduloidSection

__version__ = "0.1.0"

__all__ = [
    "charges", "cli", "elliptic", "regime", "svg", "two_charge", "unduloid",
    "ChargeConfig", "coulomb_energy", "evaporation_margin", "optimize",
    "ChargedDropError", "DomainError", "DegenerateGeometryError",
    "NoRootError", "BadBracketError", "InfeasibleError",
    "ClassifierConstants", "Label", "RegimeCell", "classify",
    "TwoChargeSolution", "generalized_energy", "minimize",
    "CaseKind", "UnduloidSection",
    "__version__",
]
