"""Terminal UI for the SRVT command line"""

from .report import Report

__all__ = ['Report']
