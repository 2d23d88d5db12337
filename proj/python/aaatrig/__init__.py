"""Trigonometric rational approximation of periodic functions."""

from ._aaatrig import (
    InputError,
    NumericalError,
    Parity,
    TrigModel,
    aaa_errors,
    derivative,
    diff_matrix,
    far_field,
    fft_eval,
    fit,
    from_json,
    lightning_demo,
    make_model,
    poles_and_zeros,
    to_json,
)

__all__ = [
    "InputError",
    "NumericalError",
    "Parity",
    "TrigModel",
    "aaa_errors",
    "derivative",
    "diff_matrix",
    "far_field",
    "fft_eval",
    "fit",
    "from_json",
    "lightning_demo",
    "make_model",
    "poles_and_zeros",
    "to_json",
]
