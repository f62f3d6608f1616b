"""Exact subring and ideal counting in rings of finite additive rank, local zeta
factors, monomial cone integrals and truncated p-adic integration."""

from .algebra import StructureConstantAlgebra, validate
from .catalog import CATALOG, verify_catalog
from .dirichlet import ZetaClosedForm, ZetaFactor, closed_form_coefficients, fit_rational_local
from .rational import LocalSeries, PadicRationalFunction
from .sublattices import ClosureKind, count, local_coefficients

__version__ = "0.1.0"

__all__ = ["StructureConstantAlgebra", "validate", "CATALOG", "verify_catalog", "ZetaClosedForm",
           "ZetaFactor", "closed_form_coefficients", "fit_rational_local", "LocalSeries",
           "PadicRationalFunction", "ClosureKind", "count", "local_coefficients"]
