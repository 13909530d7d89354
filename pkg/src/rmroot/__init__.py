"""Root numbers of abelian varieties with real multiplication.

Closed-form local/global signs from tame reduction data, validated against
the arithmetic constraints real multiplication imposes, plus an independent
Gauss-sum oracle that re-derives every sign from first principles.
"""

from .cyclotomic import CyclotomicValue
from .engine import (
    CaseTag,
    PlaceSign,
    RootNumberReport,
    sign_global,
    sign_place,
    sign_pot_good_abelian,
    sign_pot_good_induced,
    sign_toric,
)
from .errors import (
    DeskScaleExceeded,
    DivisibilityViolation,
    EvenCharacteristic,
    NonSignValue,
    NotTrivialOnSubfield,
    OddConductor,
    RootNumberError,
    TrivialCharacter,
    UnsupportedCase,
    ValidationFailed,
    ZeroArgument,
)
from .jobs import JobParseError, load_job, parse_job, serialize_job
from .oracle import (
    EtaClass,
    TameCharacterDatum,
    artin_conductor_tame,
    froehlich_queyrut_check,
    oracle_abelian_pair,
    oracle_induced,
    oracle_sp2,
    unramified_twist_epsilon_shift,
)
from .places import (
    Good,
    PlaceData,
    PotentiallyGood,
    PotentiallyToric,
    ReductionClass,
    RmVarietyData,
    ToricSubtype,
    ValidationReport,
    Violation,
    ViolationCode,
    euler_phi,
    validate_place,
    validate_variety,
)
from .residuefield import (
    FieldElement,
    MultiplicativeCharacter,
    PrimePower,
    ResidueField,
    char_at_minus_one,
    char_eval,
    gauss_sum,
    residue_field_new,
    trace_to_prime_field,
)

__version__ = "0.1.0"
