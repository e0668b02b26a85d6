"""Travelling-wave minimal tori in the three-sphere."""

from .clifford import (CliffordParams, closed_chart, closed_embedding, isometry_functions,
                       reparametrize_to_square, verify_isometry, verify_minimal_closed_form)
from .elliptic import carlson_rf, carlson_rj, elliptic_pi_incomplete
from .errors import (DegenerateError, DomainError, NoRealRootError, NoSolutionError,
                     PoleProximityError, SingularityError, ToleranceError, TorusError)
from .isothermal import solve_uv, verify_isothermal_metric
from .mechanics import (TorusParams, e_from_energy, energy_from_e, hamiltonian,
                        integrate_theta, potential, turning_points)
from .mesh import RunConfig, SurfaceMesh, export, generate_mesh, stereographic_project
from .periodicity import (closure_check, period_elliptic, period_quadrature,
                          search_rational_period)
from .surface import (SurfaceChart, curvature_report, embed_point, fundamental_forms,
                      minimality_residual, normal_vector)

__version__ = "0.1.0"
