"""Subspace codes over finite fields: arithmetic, linear algebra, group
actions, automorphism groups and isometry tests."""

from .action import (
    GroupClosure,
    NotAnAutomorphism,
    SemilinearMap,
    act,
    act_code,
    automorphism_group,
    closure,
    compose,
    inverse,
    is_automorphism,
    stabilizer_condition,
    stabilizer_order,
)
from .codes import (
    CodeReport,
    RankMetricCode,
    SubspaceCode,
    analyze,
    desarguesian_spread,
    is_spread,
    lift,
    min_rank_distance,
    orbit_code,
    rank_automorphisms,
    rank_distance,
    spread_aut_order,
)
from .field import FieldError, FieldSpec, Frobenius, field_arith, field_make, frobenius_apply
from .isometry import IsometryWitness, cyclic_conjugate, isometric, orbit_isometry_transport
from .linalg import CapExceeded, MatrixGF, SingularMatrix, enumerate_gl, gl_order, rref
from .poly import PolyGF
from .rcf import RcfReport, rational_canonical_form
from .space import Subspace, distance, injection_distance, intersect, subspace_distance, subspace_sum

__version__ = "0.1.0"
