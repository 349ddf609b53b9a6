"""Cubic NLS on the waveguide R x T: spectral solver and estimate lab."""

from ._core import (
    BlowupError,
    ContaminationError,
    ParameterError,
    boundary_fraction,
    cascade_fraction,
    dealias,
    energy,
    evolve,
    fit_power_law,
    forward,
    inverse,
    mass,
    project_band,
    propagate,
    random_band_spectrum,
    random_shell_spectrum,
    shell_energies,
    simulate,
    sobolev_norm,
    strichartz_trial,
    trilinear_trial,
    xsb_norm,
)

__all__ = [
    "BlowupError",
    "ContaminationError",
    "ParameterError",
    "boundary_fraction",
    "cascade_fraction",
    "dealias",
    "energy",
    "evolve",
    "fit_power_law",
    "forward",
    "inverse",
    "mass",
    "project_band",
    "propagate",
    "random_band_spectrum",
    "random_shell_spectrum",
    "shell_energies",
    "simulate",
    "sobolev_norm",
    "strichartz_trial",
    "trilinear_trial",
    "xsb_norm",
]
