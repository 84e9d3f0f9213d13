"""Pointwise curvature invariants from shape operators in a real space form.

rho and rho_perp are each computed by two independent routes (the Gauss /
Ricci component sums and the traceless-part identities); their agreement is
a property the test suite checks, never an assumption made here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix_core import as_symmetric, commutator, frobenius_norm_sq, traceless_project

TRACELESS_TOL = 1e-12


@dataclass(frozen=True)
class ShapeOperatorSet:
    """m symmetric n x n shape operators plus the ambient curvature c.

    `ops` has shape (m, n, n); each slice is symmetrized on construction.
    """

    ops: np.ndarray
    ambient_c: float = 0.0

    def __post_init__(self):
        ops = np.asarray(self.ops, dtype=float)
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise ValueError(f"expected shape (m, n, n), got {ops.shape}")
        if ops.shape[0] < 1:
            raise ValueError("need at least one shape operator")
        if ops.shape[1] < 2:
            raise ValueError("tangent dimension must be >= 2")
        ops = np.stack([as_symmetric(op) for op in ops])
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "ambient_c", float(self.ambient_c))

    @property
    def m(self):
        return self.ops.shape[0]

    @property
    def n(self):
        return self.ops.shape[1]


@dataclass(frozen=True)
class MatrixTuple:
    """Ordered tuple of m traceless symmetric n x n matrices, shape (m, n, n)."""

    mats: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.mats, dtype=float)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"expected shape (m, n, n), got {mats.shape}")
        mats = np.stack([as_symmetric(b) for b in mats])
        for b in mats:
            scale = max(1.0, np.sqrt(frobenius_norm_sq(b)))
            if abs(np.trace(b)) > TRACELESS_TOL * scale:
                raise ValueError(f"matrix has trace {np.trace(b):.3e}, not traceless")
        mats.setflags(write=False)
        object.__setattr__(self, "mats", mats)

    @property
    def m(self):
        return self.mats.shape[0]

    @property
    def n(self):
        return self.mats.shape[1]

    def norm_sq_total(self):
        return float(np.sum(self.mats * self.mats))


@dataclass(frozen=True)
class CurvatureInvariants:
    rho: float
    rho_perp: float
    h_sq: float
    b_sq: float
    slack: float
    ambient_c: float = 0.0

    def as_dict(self):
        return {
            "rho": self.rho,
            "rho_perp": self.rho_perp,
            "h_sq": self.h_sq,
            "b_sq": self.b_sq,
            "slack": self.slack,
            "ambient_c": self.ambient_c,
        }


def traceless_parts(s: ShapeOperatorSet) -> MatrixTuple:
    """Remove the mean-curvature multiple of the identity from each operator."""
    return MatrixTuple(np.stack([traceless_project(op) for op in s.ops]))


def mean_curvature_sq(s: ShapeOperatorSet) -> float:
    """Squared length of the mean curvature vector, sum of (tr A_a / n)^2."""
    traces = np.trace(s.ops, axis1=1, axis2=2)
    return float(np.sum((traces / s.n) ** 2))


def rho_direct(s: ShapeOperatorSet) -> float:
    """Normalized scalar curvature from the Gauss-equation double sum."""
    n = s.n
    iu, ju = np.triu_indices(n, k=1)
    total = 0.0
    for op in s.ops:
        d = np.diag(op)
        total += float(np.sum(d[iu] * d[ju]) - np.sum(op[iu, ju] ** 2))
    return s.ambient_c + 2.0 * total / (n * (n - 1))


def rho_identity(s: ShapeOperatorSet) -> float:
    """Normalized scalar curvature via c + |H|^2 - |b|^2 / (n(n-1))."""
    n = s.n
    b_sq = traceless_parts(s).norm_sq_total()
    return s.ambient_c + mean_curvature_sq(s) - b_sq / (n * (n - 1))


def rho_perp_direct(s: ShapeOperatorSet) -> float:
    """Normalized normal scalar curvature from Ricci-equation components.

    For a real space form the ambient normal contribution vanishes, so the
    components are the commutator entries <[A_a, A_b] e_i, e_j>, i < j,
    a < b.  Returns 0 for codimension one (no normal 2-plane).
    """
    n, m = s.n, s.m
    if m < 2:
        return 0.0
    iu, ju = np.triu_indices(n, k=1)
    total = 0.0
    for a in range(m):
        for b in range(a + 1, m):
            comm = commutator(s.ops[a], s.ops[b])
            total += float(np.sum(comm[iu, ju] ** 2))
    return 2.0 * np.sqrt(total) / (n * (n - 1))


def rho_perp_commutator(s: ShapeOperatorSet) -> float:
    """Normalized normal scalar curvature from traceless-part commutator norms."""
    n = s.n
    mats = traceless_parts(s).mats
    total = 0.0
    for a in range(s.m):
        for b in range(s.m):
            total += frobenius_norm_sq(commutator(mats[a], mats[b]))
    return np.sqrt(total) / (n * (n - 1))


def invariants(s: ShapeOperatorSet) -> CurvatureInvariants:
    """All pointwise invariants; slack >= 0 iff the conjectured bound holds here."""
    rho = rho_identity(s)
    rho_perp = rho_perp_commutator(s)
    h_sq = mean_curvature_sq(s)
    b_sq = traceless_parts(s).norm_sq_total()
    slack = h_sq - rho_perp + s.ambient_c - rho
    return CurvatureInvariants(
        rho=rho,
        rho_perp=rho_perp,
        h_sq=h_sq,
        b_sq=b_sq,
        slack=slack,
        ambient_c=s.ambient_c,
    )
