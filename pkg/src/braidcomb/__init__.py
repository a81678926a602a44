"""braidcomb: combing normal forms and boundary calculus for braid towers."""

from .errors import (
    BraidCombError,
    InvalidArgumentError,
    MissingImageError,
    NoUnitCoordinateError,
    WordSizeExceededError,
)
from .words import (
    GenFamily,
    GeneratorSymbol,
    Letter,
    Word,
    IDENTITY,
    orbit_gen,
    band_gen,
    surface_gen,
    reduce,
    concat,
    invert,
    exponent_sum,
    apply_homomorphism,
    parse_word,
    format_word,
)
from .presentations import (
    Presentation,
    TowerLevel,
    TowerSpec,
    orbit_presentation,
    artin_presentation,
    quotient_by,
    element_D,
    element_C,
    element_E,
    element_Theta,
    element_full_twist,
    action_conjugator,
    export_presentation,
    parse_presentation,
)
from .combing import (
    DEFAULT_WORD_CAP,
    NormalForm,
    CenterReport,
    conjugation_action,
    comb,
    words_equal,
    is_identity,
    project_qn,
    section_sn,
    section_sprime,
    theta_decompose,
    center_check,
)
from .abelian import (
    IntMatrix,
    SmithForm,
    FGAbelianGroup,
    has_torsion,
    smith_normal_form,
    relation_matrix,
    cokernel,
    h1,
    hom_on_h1,
)
from .fibration import (
    Surface,
    FibreElement,
    Pi2Basis,
    ExactnessReport,
    QuotientReport,
    SplitReport,
    NonSplitReport,
    BoundarySumReport,
    fibre_presentation,
    fibre_elements_equal,
    pi2_basis,
    delta_generator,
    tau_hat,
    boundary_image,
    strict_corollary_image,
    strict_corollary_discrepancy,
    boundary_matrix_ab,
    exactness_report,
    quotient_check,
    iota_sharp_vector,
    split_ses_check,
    nonsplit_witness_s2,
    boundary_sum_identity,
    upsilon_images,
)

__version__ = "0.1.0"
