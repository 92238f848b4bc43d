"""Stopping on the last success of Bernoulli trials with unknown odds.

A computational laboratory around the plug-in odds rule: exact dynamic
programming and Monte Carlo for its win probability W_n(p), closed forms for
the known-p oracle benchmark V_n(p), exact-arithmetic certification of the
monotonicity of W_n, and the deficit sweeps (worst-case, sparse-regime,
critical-regime) that map where oracle-free stopping succeeds and fails.
"""

from ._kernel import COMPILED, backend_name
from .analysis import (
    CriticalReport,
    DeficitRecord,
    SparseRecord,
    SupDeficitReport,
    UniformRangeReport,
    closed_form_check,
    critical_bound_constant,
    critical_regime,
    deficit,
    fixed_p_decay,
    records_to_csv,
    sparse_check,
    sup_deficit,
    sweep_grid,
    uniform_range_sweep,
)
from .dp import (
    ScalarAlgebra,
    StateTable,
    StopDistribution,
    cutoff,
    earliest_stop,
    float_algebra,
    plugin_polynomial,
    plugin_value,
    polynomial_algebra,
    rational_algebra,
    state_table,
    stop_distribution,
    win_probability,
)
from .isolation import (
    NEGATIVE_SOMEWHERE,
    NON_NEGATIVE,
    RootInterval,
    SignCertificate,
    isolate_negative_region,
    isolate_roots01,
    monotonicity_certificate,
)
from .oracle import (
    BoundarySet,
    ProblemInstance,
    boundary_distance,
    boundary_set,
    odds_count,
    oracle_threshold,
    oracle_value,
    threshold_value,
)
from .polynomial import (
    IntPolynomial,
    eval_rational,
    poly_add,
    poly_derivative,
    poly_mul,
)
from .rules import (
    CoinFlipRule,
    FirstSuccessRule,
    FixedThresholdRule,
    LastTrialRule,
    OracleRule,
    PluginRule,
    StoppingRule,
    apply_rule,
    enumerate_exact,
    exact_reference,
    first_rule,
    fixed_threshold_rule,
    last_rule,
    oracle_rule,
    plugin_rule,
)
from .simulate import DEFAULT_SEED, SimResult, estimate_win, sample_stop_times

__version__ = "0.1.0"
