"""Steady-state spectra, populations and four-wave-mixing conversion of
laser-induced continuum structures in ladder and folded schemes."""

__version__ = "0.1.0"
