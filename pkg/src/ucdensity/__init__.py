"""Exact density, abundance and minimum-density search for union-closed families."""

from .bounds import (
    SK_TABLE,
    CheckOutcome,
    Verdict,
    check_corollary2,
    check_density_lower,
    check_reimer,
    check_theorem1,
    conjectured_sn,
    corollary1_upper,
    corollary2_threshold,
    g_inverse,
    proofstep_e_inequality,
)
from .family import (
    AbundanceProfile,
    SetFamily,
    UnionClosedFamily,
    abundance_profile,
    chain_family,
    delete_element,
    density,
    is_union_closed,
    minimal_nonempty,
    normalize,
    powerset_family,
    union_closure,
    wojcik_family,
)
from .search import (
    BACKEND,
    CanonicalForm,
    Mode,
    canonical_form,
    compute_sn,
    enumerate_ucf,
    sample_random_ucf,
    verify_conjecture2,
)
from .witness import Witness, check_frankl, equal_pair_direct, lemma1_conclusion, lemma2_witness

__version__ = "0.1.0"
