"""Entropy bounds for pseudo-Anosov pure surface braids.

``pf`` bracket Perron-Frobenius eigenvalues and turn them into dilatations,
``curves`` builds the filling multicurve configurations, ``bounds`` holds the
closed-form inequalities, ``appendix`` the hyperbolic-geometry estimates and
``harness`` the sweeps behind the ``purebraid`` command.
"""

from .bounds import bound_profile, main_upper, thm61_lower
from .curves import Configuration, build_configuration, configuration_dilatation
from .harness import SweepSpec, run_sweep
from .pf import IntersectionMatrix, PFBracket, dilatation_from_mu, gram, pf_eigenvalue

__all__ = [
    "Configuration",
    "IntersectionMatrix",
    "PFBracket",
    "SweepSpec",
    "bound_profile",
    "build_configuration",
    "configuration_dilatation",
    "dilatation_from_mu",
    "gram",
    "main_upper",
    "pf_eigenvalue",
    "run_sweep",
    "thm61_lower",
]
