"""Exact q-expansion arithmetic for Siegel modular forms and nearly holomorphic forms."""

__version__ = "0.1.0"

from .derham import (DeRhamCoefficient, DeRhamRing, gauss_manin, phi_matrix, phi_rank, phi_realize,
                     unit_root_realize)
from .eisenstein import (bernoulli, e2_star, eisenstein_e2, eisenstein_q, load_coefficient_table,
                         nearly_eisenstein)
from .errors import (GenusMismatch, IncompatibleExpansions, IntegralityError, InterchangeError, LadderError,
                     ResourceLimitError, SiegelqError, SubstitutionError, TruncationError, UnsupportedRing)
from .interchange import deserialize, serialize
from .nearcalc import (SymForm, SymRing, contract, contract_expansion, delta_ladder, det_form, epsilon,
                       maass_delta, partial_z, shimura_D, trace_form)
from .padic import congruence_check, dp_operator, padic_realize, reduce_mod, theta_op, weight_congruent
from .polyring import SparsePolynomial, poly_derive, poly_mul, poly_substitute
from .qseries import (GateResult, QExpansion, WeightTag, coefficient_at, integrality_gate, qexp_add, qexp_mul,
                      r_to_zero, rescale_level)
from .rings import QQ, CoeffVector, PolynomialRing, Residue, ResidueRing, VectorRing
from .tmatrix import HalfIntegralMatrix, det_rational, enumerate_psd, is_psd
from .weights import DominantWeight, dim_gl, dim_sp
