"""Verification and extremal-search toolkit for the pointwise curvature
inequality relating scalar curvature, normal scalar curvature and mean
curvature of submanifolds in space forms."""

__version__ = "0.1.0"
