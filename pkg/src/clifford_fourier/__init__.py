"""Numerical Clifford-Fourier transform in Cl(0, m).

Kernel evaluation by several independent routes, transforms by quadrature,
the Hermite-type eigenbasis, generalized translation and convolution.
"""
from .algebra import (
    Multivector,
    conj,
    embed_vector,
    geometric_product,
    grade_part,
    inner,
    wedge,
)
from .kernel import (
    ClosedEven,
    Dim2,
    KernelBatch,
    KernelValue,
    OddIntegral3,
    Series,
    bound_ratio,
    kernel_batch,
    kernel_closed_even,
    kernel_dim2,
    kernel_inverse_minus,
    kernel_inverse_plus,
    kernel_minus,
    kernel_plus,
    kernel_series,
)
from .poly import PolyMV, dirac, fischer_project, gamma, gamma_exp_on_harmonic, monogenic_basis
from .quadrature import ProductGrid, fullspace_rule, gauss_legendre, radial_rule, sphere_rule
from .special import SpecialFnConfig, bessel_j, bessel_j_tilde, gegenbauer, laguerre, legendre
from .transform import (
    BasisIndex,
    CliffordFunction,
    basis_psi,
    cft,
    cft_inverse,
    cft_radial_monogenic,
    expected_eigenvalue,
    hankel_radial,
)
from .translation import (
    TranslationPlan,
    convolve,
    gaussian_smooth,
    sphere_identity_check,
    translate,
)

__version__ = "0.1.0"
