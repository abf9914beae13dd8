"""Blow-up time bounds and simulations for two-component reaction-diffusion
systems with Robin boundary conditions."""

from .bounds import (
    LowerBoundResult,
    UpperBoundResult,
    compute_K,
    lower_bound_blowup,
    lower_bound_pipeline,
    select_betas,
    upper_bound_blowup,
)
from .functionals import (
    EnergySample,
    FieldPair,
    check_trace_monitors,
    discrete_gradient_energy,
    energy_E,
    energy_sample,
    energy_scriptE,
    functional_J,
)
from .geometry import (
    DomainSpec,
    GeometryConstants,
    Mesh,
    boundary_integral,
    build_mesh,
    geometry_constants,
    interior_integral,
)
from .nonlinearity import (
    HypothesisReport,
    Nonlinearity,
    check_A2_A3,
    check_A2prime,
    check_H1,
    check_H2_H3,
    classify_absorption,
    make_absorption,
    make_gradient_homogeneous,
    make_power_product,
    shape_constant,
    shape_exp_decay,
    shape_power,
)
from .oracle import OdeTrace, brute_force_integral, ode_reduce
from .solver import (
    BlowupEstimate,
    SolveTrace,
    SolverConfig,
    estimate_blowup_time,
    rhs,
    simulate,
    step,
)

__version__ = "0.1.0"
