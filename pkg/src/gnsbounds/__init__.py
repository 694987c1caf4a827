"""GNS constants on R^d, convex domains and cubes: bounds, certificates,
shooting solver and cube experiments."""

from .special_math import BallGeometry, ball_geometry, beta_fn, gamma_fn
from .euclidean import (
    RdBounds,
    alpha_of,
    babenko_beckner,
    g_nasibov,
    g_rumin,
    nasibov_kn,
    rd_bounds,
    sobolev_constant,
)
from .lattice import (
    CountCertificate,
    LatticeMode,
    ResourceLimitError,
    analytic_nd_bound,
    certify_nd,
    refined_nd,
    tail_bound,
    weighted_count,
)
from .domains import (
    ConvexDomainSpec,
    DomainBoundReport,
    convex_gns_constant,
    cube_gns_constant,
    davies_constant,
    hls_constant,
    hls_constant_back_solved,
    weak_norm_kernel,
)
from .ground_state import (
    RadialProfile,
    ShootingError,
    cube_upper_bound,
    gns_numeric,
    scaled_test_function,
    solve_ground_state,
)
from .cube_lab import (
    GridFunction,
    QuotientBreakdown,
    RearrangeConfig,
    SupportTooLargeError,
    concentration_experiment,
    corner_bump,
    default_rearrange_config,
    dirichlet_energy,
    grid_from_callable,
    minimize,
    neumann_project,
    perimeter_threshold_check,
    quotient,
    random_bandlimited_function,
    random_supported_function,
    rearrange_corner,
)

__version__ = "0.1.0"
