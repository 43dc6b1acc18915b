"""
Elastic SRVT - square root velocity transforms for shape analysis

Discretized absolutely continuous curves in R^d, in the matrix Lie groups
SO(3)/SE(3) and on Riemannian manifolds:
derivative → transport → scaling, plus inverses, distances and alignment.
"""

__version__ = "1.0.0"
__author__ = "Elastic SRVT Contributors"
