"""fmwalls: exact wall-and-chamber computations for Mukai vectors on abelian
surfaces, with a stability-preservation verdict for the cohomological
Fourier-Mukai transform."""

from .charge import EQUAL, GREATER, LESS, LineCharge, charge_general, charge_line, slope_compare
from .lattice import HSplit, InvalidInput, Surface, UnsupportedSurface
from .mukai import (
    MukaiVector,
    classify_isotropic_shift,
    ell_of,
    fm_dual,
    fm_shift,
    fm_transform,
    format_vector,
    is_isotropic,
    is_primitive,
    mv,
    pairing,
    parse_vector,
    square,
    twist,
)
from .oracle import brute_force_I1, crosscheck_walls
from .regimes import (
    AnnotatedWall,
    CheckReport,
    CrossingClass,
    FmCaseTag,
    RegimeReport,
    RolePair,
    appendix_verify,
    assign_roles,
    classify_crossing,
    classify_crossing_fm,
    compute_regimes,
    dual_regimes,
    dual_wall_map,
    mukai_uu_identity,
)
from .verdict import (
    ExceptionalCase,
    PreservationVerdict,
    corollary_check,
    decide_preservation,
    detect_exceptional,
)
from .walls import (
    AmpWallWitness,
    Decomposition,
    WallOnLine,
    WallPosition,
    WallScan,
    amp_decompositions,
    amp_irreducibility_check,
    defines_wall,
    enumerate_tss_walls_line,
    in_I1,
    max_wall_tsq,
    tss_decompose,
    wall_position_line,
)

__version__ = "0.1.0"
