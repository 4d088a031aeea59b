"""Statistical procedures over exported logs and rater sheets."""

from .agreement import (
    BUCKET_ALMOST_PERFECT,
    BUCKET_FAIR,
    BUCKET_LESS_THAN_CHANCE,
    BUCKET_MODERATE,
    BUCKET_SLIGHT,
    BUCKET_SUBSTANTIAL,
    BUCKET_UNDEFINED,
    CategoryAgreement,
    KappaResult,
    cohen_kappa,
    kappa_bucket,
    kappa_report,
)
from .alignment import (
    CORRECT,
    DEFAULT_TOLERANCE_MS,
    INCORRECT,
    MISSING,
    AlignmentResult,
    CandidateEvent,
    ReferenceEntry,
    align,
)
from .completeness import (
    CompletenessAudit,
    EmptyAuditError,
    SourceCompleteness,
    TypeCompleteness,
    completeness_audit,
    drop_all_error_records,
)
from .contingency import (
    ChiSquareResult,
    ContingencyTable2x2,
    OddsRatioResult,
    UndefinedTestError,
    chi2_sf_df1,
    chi_square_2x2,
    odds_ratio,
)
from .frequency import (
    FrequencyCell,
    FrequencyTable,
    UnresolvedDisagreementError,
    consensus_merge,
    frequency_table,
)
from .reports import (
    agreement_report,
    alignment_report,
    comparison_table,
    completeness_report,
    frequency_report,
)
