"""Exact and simulated verification of tail bounds for random walks of
partial products in metric semigroups with translation-invariant metrics."""

from .bounds import (
    BoundParams,
    EvaluationReport,
    PriorBoundReport,
    TailVariant,
    compute_I0,
    evaluate_hj,
    hm_bound,
    lt_bound,
    main_term_min_form,
    main_term_product_form,
    rhs_main,
    specialize,
    tail_term,
    tail_u,
    zeta,
)
from .distributions import (
    FiniteDistribution,
    Scenario,
    enumerate_outcomes,
    event_probability,
    exact_paths,
    iid_scenario,
    make_distribution,
    path_statistics,
    point_mass,
    uniform,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    HJError,
    HypothesisViolated,
    InstanceMismatch,
    InternalCheckFailed,
    InvalidLevel,
    NonPositiveProbability,
    ProbabilitiesDoNotSumToOne,
)
from .montecarlo import ArcStep, GaussianStep, McReport, mc_estimate
from .proof import (
    p_first_passage,
    p_increment,
    stopping_times,
    verify_decomposition,
    verify_ebounds,
)
from .rng import CounterRng
from .semigroup import (
    Circle,
    Cyclic,
    Element,
    Euclidean,
    HammingCube,
    IntLine,
    MetricSemigroup,
    PosInts,
    SymCayley,
    SymHamming,
    check_axioms,
    combine,
    distance,
    graph_space,
    make_semigroup,
    norm_increment,
)

__version__ = "0.1.0"
