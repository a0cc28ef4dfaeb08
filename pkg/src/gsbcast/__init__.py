"""Inner and outer bounds on the distortion region of a Gaussian source sent
over a degraded Gaussian broadcast channel with bandwidth mismatch."""

from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .mutual_info import (
    AuxNoiseParams,
    gaussian_oracle_mi,
    mi_difference_lower_bound,
    mi_lower_bound,
    monte_carlo_mi_estimate,
)
from .model import (
    EXAMPLE_CHANNEL,
    BroadcastChannel,
    DistortionVector,
    TauVector,
    canonical_order,
    delta_noise,
    validate_channel,
    validate_distortions,
)
from .regions import (
    INNER,
    OUTER_K,
    OUTER_POW2,
    POINT_TO_POINT,
    BoundaryCurve,
    MembershipResult,
    Region,
    RegionKind,
    boundary_solve,
    inner_lhs,
    membership,
    membership_with_zeros,
    outer_K_lhs,
    parametric_brackets,
    outer_pow2_lhs,
    parametric_outer_lhs,
    point_to_point_distortion,
    point_to_point_lhs,
    region_lhs,
    read_curve_csv,
    trace_boundary,
)
from .separation import (
    RateVector,
    GapCertificate,
    GenieReport,
    capacity_lhs,
    capacity_membership,
    genie_report,
    distortions_from_rates,
    gap_certificate,
    genie_p2p_check,
    genie_rates,
    inner_membership_via_rates,
    rates_from_distortions,
)
from .tau import (
    KfactorCertificate,
    RelaxedVector,
    collapsed_relaxed_sum,
    label_budget,
    relaxed_vector,
    tau_for_Kfactor,
    tau_for_pow2,
    tau_for_relaxed,
    verify_Kfactor,
)

__version__ = "0.1.0"
