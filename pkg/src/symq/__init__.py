"""Pairwise entanglement of symmetric multiqubit states via two-qubit local invariants."""

from .classify import (
    ClassFlags,
    SeparableEnsemble,
    classify,
    ppt_entangled,
    separable_pair,
    theorem2_audit,
)
from .collective import (
    PureSymmetricState,
    SpinOps,
    bath_mean_s3,
    dicke_state,
    kitagawa_ueda_state,
    random_symmetric_state,
    spin_operators,
    squeezed_bath_state,
    wigner_d_half_pi,
)
from .invariants import (
    InvariantSet,
    Rotation3,
    bath_invariants_closed,
    canonical_form,
    compute_invariants,
    dicke_invariants_closed,
    ku_invariants_closed,
    local_rotate,
)
from .reduction import (
    NonPhysicalStateError,
    PairDensity,
    PairState,
    bath_pair_closed,
    dicke_pair_closed,
    ku_pair_closed,
    pair_density,
    reduce_pure,
)
from .squeezing import (
    AlignedPair,
    SqueezingReport,
    align_mean_spin,
    collective_signatures,
    i5_collective_identity,
    korbicz_scan,
    max_fluctuation,
    squeezing_report,
    xi_squared,
)

__version__ = "0.1.0"
