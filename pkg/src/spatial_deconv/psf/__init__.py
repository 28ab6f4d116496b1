"""
Point-spread function construction and representation.

This module provides the three PSF representations used by the
convolution operators, generators for the standard blur families,
the adjoint, representation conversions and the sparse text format.
"""

from .generators import make_box_psf, make_diagonal_psf, make_disc_psf, make_line_psf
from .io import (
    PsfFormatError,
    format_sparse_psf,
    load_sparse_psf,
    parse_psf_spec,
    parse_sparse_psf,
    save_sparse_psf,
)
from .kernels import (
    MASS_TOLERANCE,
    DensePsf,
    Psf,
    SparsePsf,
    UniformConvexPsf,
    adjoint,
    bounding_box,
    is_uniform_line,
    rectangle_extent,
    to_dense,
    to_sparse,
    to_uniform_convex,
    weight_maps_close,
)

__all__ = [
    # Representations
    "DensePsf",
    "UniformConvexPsf",
    "SparsePsf",
    "Psf",
    "MASS_TOLERANCE",
    # Generators
    "make_line_psf",
    "make_box_psf",
    "make_disc_psf",
    "make_diagonal_psf",
    # Transforms
    "adjoint",
    "to_dense",
    "to_sparse",
    "to_uniform_convex",
    "bounding_box",
    "rectangle_extent",
    "is_uniform_line",
    "weight_maps_close",
    # Text format
    "PsfFormatError",
    "parse_sparse_psf",
    "format_sparse_psf",
    "load_sparse_psf",
    "save_sparse_psf",
    "parse_psf_spec",
]
