"""Poisson Fourier modes on Omega = {(z, w) : zw != 1}.

Exact combinatorics and hypergeometric identities, the modes and their
basis change, quadrature on the rotated diagonal, complex spherical and
zonal harmonics, and the Moebius group acting on Omega.
"""

from .exact import GaussianRational, SqrtPiScaled
from .moebius import MoebiusMap, SphereMoebius, apply, compose, inverse
from .pfm import INF, ExtendedComplex, OmegaPoint, OutsideDomain, PFMIndex, f_pq, pfm, pfm_eval
from .quadrature import CoefficientTable, SphereQuadrature, decompose, inner_product
from .sphere import SpherePointC, stereo, stereo_inv
from .zonal import ZonalEvaluator, zonal_pullback

__all__ = [
    "INF",
    "CoefficientTable",
    "ExtendedComplex",
    "GaussianRational",
    "MoebiusMap",
    "OmegaPoint",
    "OutsideDomain",
    "PFMIndex",
    "SphereMoebius",
    "SpherePointC",
    "SphereQuadrature",
    "SqrtPiScaled",
    "ZonalEvaluator",
    "apply",
    "compose",
    "decompose",
    "f_pq",
    "inner_product",
    "inverse",
    "pfm",
    "pfm_eval",
    "stereo",
    "stereo_inv",
    "zonal_pullback",
]
