"""
Richardson-Lucy deconvolution, standard and selective, plus blur generation.
"""

from .blur import BLUR_MODES, CYCLIC, REPLICATE, add_noise, blur_image, replicate_kind
from .richardson_lucy import (
    DeconvolutionError,
    IterationRecord,
    RlConfig,
    RlTrace,
    richardson_lucy_step,
    rl_deconvolve,
)
from .selective import DEFAULT_REACTIVATION_PERIOD, ActivityMask, rl_deconvolve_selective

__all__ = [
    "RlConfig",
    "RlTrace",
    "IterationRecord",
    "DeconvolutionError",
    "rl_deconvolve",
    "richardson_lucy_step",
    "ActivityMask",
    "DEFAULT_REACTIVATION_PERIOD",
    "rl_deconvolve_selective",
    "BLUR_MODES",
    "CYCLIC",
    "REPLICATE",
    "blur_image",
    "add_noise",
    "replicate_kind",
]
