"""Deformed commutation relations: canonical forms, exact spectra and numerical checks."""
from __future__ import annotations

__version__ = "0.1.0"
