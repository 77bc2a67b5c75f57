"""Entanglement analysis and measurement-protocol simulation for three-qubit
pure states: entanglement vector, three-tangle, pair concurrences,
concurrence of assistance, SLOCC classification, and the copy-based
projective-measurement formulations of all of them.
"""

from .classify import Classification, ClassifierConfig, InconsistentVectorError, classify
from .copies import (
    BIdentityReport,
    BIdentityVerdict,
    DEFAULT_LAYOUT,
    PairingLayout,
    antisym_projector,
    cut_concurrence_via_copies,
    observable_a_expectation,
    observable_b_expectation,
    resolve_b_identity,
    singlet_vector,
    tau_via_copies,
)
from .linalg import HermitianSpectrum, herm_eig, kron, partial_trace, psd_sqrt
from .measures import (
    EntanglementVector,
    IdentityReport,
    alt_entanglement_vector,
    coa,
    entanglement_vector,
    pure_cut_concurrence,
    reduced,
    spin_flip,
    tangle_matrix,
    three_tangle,
    three_tangle_ckw,
    tr_rho_rhotilde,
    verify_identities,
    wootters_concurrence,
    wootters_spectrum,
)
from .shots import (
    DegenerateObservableError,
    NoiseSpec,
    Observable,
    ShotPlan,
    ShotResult,
    noisy_expectation,
    precision_plan,
    sample,
)
from .states import (
    NormalizationWarning,
    PureTripartiteState,
    SloccClass,
    StateFileError,
    bipartite_product,
    generalized_ghz,
    ghz,
    haar_corpus,
    haar_random,
    parse_state,
    product_state,
    random_in_class,
    serialize_state,
    w,
)

__version__ = "0.1.0"
