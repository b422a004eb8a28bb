"""phasekit: phase-space analysis of Gaussian and Toeplitz quantum states.

Symplectic linear algebra (Williamson normal form, symplectic spectra),
Gaussian state validity and decomposition, separability tests (partial
transpose, Werner-Wolf certificates, disentangling rotations), and grid
numerics for Wigner/ambiguity transforms, Weyl quantization, and Toeplitz
operators in one degree of freedom.
"""

from .errors import (
    AccuracyWarning,
    DimensionError,
    DomainError,
    PhasekitError,
    PreconditionError,
)
from .gaussian import (
    GaussianWindow,
    PositivityReport,
    gaussian_convolve,
    gaussian_toeplitz_decompose,
    gaussian_wigner,
    is_pure,
    symplectic_spectrum_admissible,
    quantum_positivity,
    window_from_gramian,
    window_gramian,
    window_wigner,
)
from .grids import (
    Grid1D,
    OperatorMatrix,
    PhaseFunction,
    PhaseGrid,
    WaveFunction,
    heisenberg_translate,
    hermite1,
    sample_gaussian_window,
    standard_gaussian,
)
from .operators import (
    DensityReport,
    anti_wick,
    toeplitz_density,
    toeplitz_operator_direct,
    toeplitz_operator_weyl,
    toeplitz_weyl_symbol,
    trace_via_symbol,
    verify_density_operator,
)
from .selfcheck import CheckResult, run_all
from .separability import (
    PPTReport,
    SeparabilityCertificate,
    certificate_ww_factors,
    direct_sum_cov,
    disentangle_by_rotation,
    gaussian_window_partial_transpose,
    partial_transpose_cov,
    ppt_check,
    product_window_partial_transpose,
    two_mode_squeezed,
    verify_ww_certificate,
)
from .symplectic import (
    AB_INTERLEAVED,
    XP_BLOCK,
    check_covariance,
    diagonalize_pds,
    is_symplectic,
    partial_reflection_matrix,
    random_symplectic,
    reorder,
    standard_symplectic_form,
    symplectic_eigenvalues,
    symplecticity_residual,
    williamson,
    xp_to_ab_permutation,
)
from .transforms import (
    ambiguity,
    cross_wigner,
    kernel_to_weyl_symbol,
    linear_convolve,
    sample_phase_function,
    symplectic_fourier,
    weyl_symbol_to_kernel,
    wigner,
)

__version__ = "0.1.0"
