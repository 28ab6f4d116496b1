"""
Core image utilities shared by every other module.

This module provides the grey-value image container, replicate padding,
PGM file I/O and quality metrics.
"""

from .image import Image, PaddedImage, pad_replicate, pad_replicate_array
from .metrics import format_db, snr_db
from .pgm import PgmFormatError, load_pgm, read_pgm, save_pgm, write_pgm

__all__ = [
    # Image
    "Image",
    "PaddedImage",
    "pad_replicate",
    "pad_replicate_array",
    # PGM
    "PgmFormatError",
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
    # Metrics
    "snr_db",
    "format_db",
]
