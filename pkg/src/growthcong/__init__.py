"""Conjugacy growth series, partition congruences, and eta-quotient
operator machinery, verified at finite precision."""

from .qseries import (
    ZZ,
    CoefficientRing,
    NonUnitLeadingCoefficientError,
    QSeries,
    RingMismatchError,
    TruncationError,
    Zmod,
    dump_qseries,
    is_congruent,
    load_qseries,
    monomial,
)
from .partitions import (
    PartitionTable,
    asymptotic_ratio,
    brute_force_p,
    brute_force_pk,
    colored_series,
    colored_table,
    euler_series,
    partition_series,
    partition_table,
)
from .growth import GrowthTables, InexactDivisionError
from .eta import EtaQuotient, cusp_order, cusp_width, expand, modularity_check
from .operators import hecke, kronecker, u_op, v_op
from .treneer import (
    PipelineContext,
    build_F,
    build_f,
    build_fm,
    build_g,
    choose_beta,
    m_ell,
    make_context,
)
from .congruence import (
    BudgetExceededError,
    WitnessCandidate,
    beta_delta,
    residues_cong1,
    scan_progressions,
    example_progression_block,
    verify_atkin_k2,
    verify_cong1,
    verify_examples_11_12,
    verify_gamma_progression,
    verify_ramanujan,
    verify_sym,
    witness_search,
)
from .reports import CongruenceClaim, VerificationReport, reports_to_csv, reports_to_json
from .cache import RunConfig, SeriesCache

__version__ = "0.1.0"
