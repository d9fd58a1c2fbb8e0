"""Question-order effects for binary POVM measurements.

Sequential answer probabilities, the QQ statistic and its operator form,
state dependence of violations, and Neumark lifts that restore the
QQ-equality.
"""

__version__ = "0.1.0"

from .linalg import (
    DimensionError,
    NotPSDError,
    Tolerance,
    adjoint,
    eig_hermitian,
    is_hermitian,
    principal_sqrt,
    real_trace_product,
    trace,
)
from .measurement import (
    BinaryMeasurement,
    Convention,
    Effect,
    InvalidMeasurementError,
    InvalidStateError,
    Order,
    OutcomeTable,
    QuantumState,
    ValidationReport,
    ZeroProbabilityError,
    outcome_distribution,
    post_state,
    sequential_joint_prob,
    update_operator,
    validate_measurement,
)
from .models import REFERENCE_QQ_CONSTANT, lifted_reference_pair, reference_pair, uniform_state, zero_states
from .montecarlo import (
    EmpiricalReport,
    ExperimentConfig,
    UnsupportedConventionError,
    convergence_sweep,
    simulate,
)
from .neumark import (
    Certificate,
    Dilation,
    common_space_lift,
    dilate_binary,
    lifted_qq_check,
    verify_dilation,
)
from .qq import (
    QqReport,
    max_violation,
    qq_operator,
    qq_statistic,
    zero_manifold_mask,
    zero_manifold_scan,
    zero_state_condition,
)
