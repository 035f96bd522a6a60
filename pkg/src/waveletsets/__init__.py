"""Exact wavelet-set tilings, fractal interpolation, and reflection-group
multiresolution analysis.

Submodules:
  scalars      exact rational multiples of powers of pi
  geometry     exact vectors, matrices, affine maps, hyperplanes
  reflections  root systems, foldable figures, tessellation groups
  tiles        dyadic box sets, congruence certificates, wavelet-set fixtures
  fif          fractal interpolation functions on an interval
  surfaces     self-affine surfaces over foldable figures
  mra          multiresolution filter banks from subdivided box figures
  render       deterministic CSV/SVG exporters
  cli          command-line front end
"""

from .scalars import ExactScalar, PI
from .geometry import AffineIsometry, AffineMap, Hyperplane, Mat, Vec, is_expansive, vec
from .reflections import (
    FoldableFigure,
    RootSystem,
    affine_reflection,
    box_figure,
    centered_square_figure,
    enumerate_group,
    fold,
    klein_four_root_system,
    right_triangle_figure,
    subdivide,
    unit_square_figure,
)
from .tiles import (
    CongruenceCertificate,
    DyadicBoxSet,
    build_w1,
    build_w2,
    construct_wavelet_set,
    dilation_congruent,
    intersection_group,
    is_fundamental_domain,
    is_wavelet_set_1d,
    shannon_set,
    three_way_check,
    translation_congruent,
    weyl_congruent,
)
from .fif import FractalFunction, cardinal_basis, uniform_cardinal_basis
from .surfaces import (
    FractalSurface,
    SurfaceSpec,
    basis_surfaces,
    extend_global,
    fixed_point,
    refine_basis,
    validate_condition_star,
)
from .mra import FilterBank, MRAConfig, MultiresolutionBasis, delta_kappa

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
