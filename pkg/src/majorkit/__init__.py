"""Exact tools for vector and matrix majorization and their linear preservers."""
from .birkhoff import (
    BirkhoffDecomposition,
    birkhoff_decompose,
    random_column_stochastic,
    random_distribution,
    random_doubly_stochastic,
    random_zero_sum,
)
from .errors import (
    MajorkitError,
    NotMajorizedError,
    ParseError,
    PreconditionError,
    ShapeError,
    UnsupportedError,
)
from .exact import (
    Permutation,
    RMatrix,
    format_rational,
    is_column_stochastic,
    is_doubly_stochastic,
    is_row_stochastic,
    parse_rational,
)
from .lp import FeasibilitySystem, Feasible, Infeasible, solve_feasibility
from .matrix import (
    MajorizationVerdict,
    check_directional,
    check_strong,
    check_strong_equiv,
    check_weak,
)
from .preservers import (
    Ando1,
    Ando2,
    CSForm,
    LiPoon1,
    LiPoon2,
    OperatorGrid,
    VectorOperator,
    ZeroSumForm,
    check_condition_alpha,
    classify_prob_preserver,
    classify_strong_preserver,
    classify_vector_preserver,
    classify_zero_sum_preserver,
    decompose_operator,
    extract_cs_preserver_form,
    is_cs_preserver,
    make_ando1,
    make_ando2,
    make_cs_form,
    make_li_poon1,
    make_li_poon2,
    make_zero_sum,
)
from .propcheck import Counterexample, RelationSpec, fuzz_preserver, gen_pair, lemma_suite
from .reductions import (
    ReductionCertificate,
    reduce_diag_scale,
    reduce_shift_normalize,
    theta,
    zero_one_bridge,
)
from .vector import (
    check_vector_equiv,
    check_vector_majorization,
    hlp_chain,
    hlp_witness,
    reduce_vector_to_distributions,
)

__version__ = "0.1.0"
