"""Rank-based dependency matrices, their eigenvalue spectra, and the limiting
laws they converge to."""

from .datagen import (
    DataMatrix,
    DistributionSpec,
    RowPattern,
    bernoulli,
    constant,
    pareto,
    quantile,
    sample_matrix,
    standard_normal,
    student_t,
    uniform01,
)
from .depmat import (
    SphereMatrix,
    SymmetricMatrix,
    correlation_rows,
    gram,
    kendall_T,
    kendall_tau,
    offdiag,
    sample_correlation,
    spearman,
)
from .errors import (
    DegenerateRowError,
    DomainError,
    NumericError,
    ParameterError,
    RankSpectraError,
    UnsupportedCombinationError,
    ZeroScalingError,
)
from .harness import ExperimentConfig, ExperimentResult, config_from_dict, emit, reference_law, run
from .lsd import (
    LawModel,
    law_cdf,
    law_density,
    law_quantile,
    law_support,
    mp_atom,
    mp_density,
    mp_support,
    mp_to_semicircle_residual,
    semicircle_density,
    stieltjes,
)
from .moments import (
    MomentReport,
    bernoulli_variance_factor,
    estimate_conditions,
    pareto_truncated_fourth_moment,
    regvar_condition,
    variance_factor,
)
from .ranks import (
    RankMatrix,
    ScalingDiag,
    degeneracy_diagnostic,
    fractional_ranks,
    kendall_scaling,
    rank_rows,
    spearman_rows,
)
from .spectra import (
    HistogramResult,
    SpectralSample,
    affine_spectrum,
    companion_check,
    eigenvalues_sym,
    empirical_stieltjes,
    histogram,
    ks_distance,
    ks_two_sample,
)

__version__ = "0.1.0"
