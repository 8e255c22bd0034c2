"""Connectivity mass, full-connectivity estimates and boundary design rules for multi-antenna wireless networks."""

__version__ = "0.1.0"

from .channel import (
    AntennaScheme,
    ChannelParams,
    EmpiricalCdf,
    gain_cdf_mrc,
    gain_cdf_stbc,
    lower_incomplete_gamma_regularized,
    path_gain,
    sample_lambda_max,
)
from .connectivity import (
    ConnectionFunction,
    ConstantConnection,
    StepConnection,
    pair_conn_dc,
    pair_conn_mrc,
    pair_conn_mrc_step,
    pair_conn_rate,
    pair_conn_siso,
)
from .design import (
    antennas_for_boundary,
    compare_schemes,
    critical_ratio,
    power_for_boundary,
)
from .geometry import (
    Domain,
    ball,
    boundary_solid_angle,
    box,
    corner_solid_angle_ngon,
    full_solid_angle,
    sample_uniform,
    volume,
    wedge,
)
from .global_connectivity import (
    is_fully_connected,
    isolation_probability,
    pfc_analytic,
    simulate_pfc,
    simulate_realization,
)
from .mass import (
    MassResult,
    mass_bf_asymptotic,
    mass_bf_error_term,
    mass_bf_numeric,
    mass_dc_asymptotic,
    mass_dc_closed,
    mass_leading_siso,
    mass_radial,
    mass_spatial,
)
