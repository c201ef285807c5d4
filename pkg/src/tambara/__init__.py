"""Ideal theory and point-free spectra of finite Tambara functors."""

__version__ = "0.1.0"
