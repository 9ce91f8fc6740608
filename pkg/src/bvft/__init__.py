"""Numerical lab for sine/cosine transforms of functions of bounded variation.

Submodules: ``specfun`` (Si, Ci), ``quadrature`` (adaptive, oscillatory and
principal-value integrals), ``testfns`` (function registry), ``transforms``
(Fourier, Hilbert and related transforms), ``verify`` (norm inequalities and
identities) and ``cli``.
"""
from bvft._backend import COMPILED
from bvft.quadrature import QuadOptions, QuadratureResult, Status
from bvft.specfun import ci, si
from bvft.testfns import FamilySpec, TestFunction, list_families, odd_kernel, registry_get
from bvft.transforms import (
    TransformGrid,
    fourier_cosine,
    fourier_sine,
    h0_script_t_cisi,
    hilbert_odd,
    script_t,
    t_transform,
)
from bvft.verify import Precision, Tri

__version__ = "0.1.0"

__all__ = [
    "COMPILED", "FamilySpec", "Precision", "QuadOptions", "QuadratureResult", "Status", "TestFunction",
    "TransformGrid", "Tri", "ci", "fourier_cosine", "fourier_sine", "h0_script_t_cisi", "hilbert_odd",
    "list_families", "odd_kernel", "registry_get", "script_t", "si", "t_transform",
]
