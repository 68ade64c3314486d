"""Planar (perfect nonlinear) functions over GF(2^n), exactly.

Layers: fields (GF(2^n) and tower views), linearized (q-polynomials and
the Dickson permutation test), planar (planarity predicates, coefficient
criteria, families, sweeps), surfaces (companion hypersurfaces, linear
factors, point counts), semifields (products induced by planar functions
and their nuclei). Hot sweeps run through kernels, which carries numba
and numpy backends; set PLANAR2_NO_NUMBA=1 to force the numpy path.
"""

__version__ = "0.1.0"

from .fields import (BudgetError, Fe, FieldSpec, TowerView, field, fe_from_hex,
                     smallest_irreducible, tower)
from .linearized import (LinearizedPoly, dickson_det, inverse_map, is_permutation,
                         kernel)
from .planar import (FAMILIES, AuditReport, DOPoly, FamilyParams, family_audit,
                     family_coeffs, family_param_space, fraction_image_set,
                     fraction_map_two_to_one, is_planar_bruteforce,
                     is_planar_linearized, norm_trace_zero_set, offdiagonal_search,
                     planar_by_criterion, planar_criterion_k2, planar_criterion_k3,
                     planar_criterion_k4)
from .semifields import (NucleiReport, Presemifield, TraceChain, kantor_mul,
                         kantor_presemifield, knuth_mul, knuth_presemifield,
                         nuclei, presemifield_from_planar, quartic_example_check,
                         to_semifield)
from .surfaces import (LinearForm, MvPoly, build_G, count_points_affine,
                       count_points_projective, eval_orbit, langweil_check,
                       langweil_rhs, linear_factor_search, orbit_has_zero,
                       specialize_normal)
