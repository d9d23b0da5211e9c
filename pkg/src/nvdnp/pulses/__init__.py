"""Pulse envelopes: square, Gaussian and Shinnar-Le Roux families."""

from nvdnp.pulses.io import read_envelope_csv, render_envelope_csv, write_envelope_csv
from nvdnp.pulses.profile import excitation_profile, generalized_rabi_inversion, sidelobe_maxima
from nvdnp.pulses.shapes import crosstalk_free_rabi, gaussian_envelope, square_envelope
from nvdnp.pulses.slr import SlrDesignError, slr_design

__all__ = [
    "SlrDesignError",
    "crosstalk_free_rabi",
    "excitation_profile",
    "gaussian_envelope",
    "generalized_rabi_inversion",
    "read_envelope_csv",
    "render_envelope_csv",
    "sidelobe_maxima",
    "slr_design",
    "square_envelope",
    "write_envelope_csv",
]
