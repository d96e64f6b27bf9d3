"""sgx: a signed-graph spectral toolkit.

Signed graphs with switching classes, a deterministic symmetric eigensolver,
exact integer characteristic polynomials, equitable quotient matrices,
extremal family constructors, forbidden-configuration predicates, and
exhaustive/stochastic extremal-index search.
"""

from .core import (
    NormalForm,
    SignedGraph,
    SizeLimitError,
    cycle_sign,
    is_balanced,
    is_switching_equivalent,
    is_switching_isomorphic,
    new_signed_graph,
    relabel,
    switch,
    switching_normal_form,
    switching_representative,
    unbalanced_triangles,
)
from .families import g_poly, gamma, kn_minus, parse_family, pq1_poly, pq2_poly, q1_matrix, q2_matrix, sigma, u1
from .forbidden import (
    ForbiddenSpec,
    book_count,
    count_unbalanced_triangles,
    friendship_count,
    is_forbidden_free,
    parse_forbidden,
)
from .search import (
    ClassificationTag,
    SearchReport,
    VerifyReport,
    classify,
    enumerate_extremal,
    local_search,
    verify_crossing,
    verify_extremal,
    verify_identities,
    verify_spectral_bound,
    verify_u1_gap,
)
from .sgio import from_sg_text, read_graph, to_sg_text, write_graph
from .spectra import (
    CharPoly,
    QuotientMatrix,
    Spectrum,
    char_poly_exact,
    eigenvalues_symmetric,
    index,
    largest_real_root,
    quotient_matrix,
    spectral_radius,
    verify_quotient_spectrum,
)

__version__ = "0.1.0"
