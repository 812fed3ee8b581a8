"""Exact computation of traces of singular moduli and the identities they satisfy."""

from .report import IdentityReport
from .series import QSeries

__version__ = "0.1.0"

__all__ = ["QSeries", "IdentityReport", "__version__"]
