"""Decision procedures for the matrix and curvature inequalities.

Each check returns a CheckResult with the two sides, a holds flag and an
equality flag.  Checks on matrix tuples normalize to total norm 1 first
(both sides are degree-4 homogeneous), so one absolute tolerance fits all
scales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import (
    MatrixTuple,
    ShapeOperatorSet,
    invariants,
    traceless_parts,
)
from .matrix_core import as_symmetric, commutator, frobenius_inner, frobenius_norm_sq

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    lhs: float
    rhs: float
    holds: bool
    equality: bool
    tol: float
    label: str

    def as_dict(self):
        return {
            "label": self.label,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": bool(self.holds),
            "equality": bool(self.equality),
            "tol": self.tol,
        }


def _result(lhs, rhs, tol, label):
    scale = max(1.0, abs(rhs))
    equality = bool(abs(lhs - rhs) <= tol * scale)
    holds = bool(equality or lhs <= rhs + tol * scale)
    return CheckResult(lhs=float(lhs), rhs=float(rhs), holds=holds,
                       equality=equality, tol=tol, label=label)


def _as_stack(mats):
    """Coerce a MatrixTuple, (m,n,n) array or list of matrices to a stack."""
    if isinstance(mats, MatrixTuple):
        return np.asarray(mats.mats, dtype=float)
    arr = np.asarray(mats, dtype=float)
    if arr.ndim == 2:
        arr = arr[None, :, :]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError(f"expected (m, n, n) matrices, got shape {arr.shape}")
    return np.stack([as_symmetric(b) for b in arr])


def _normalize_stack(mats):
    total = np.sum(mats * mats)
    if total > 0:
        return mats / np.sqrt(total)  # sum of squared Frobenius norms becomes 1
    return mats


def _commutator_sum_sq(mats):
    """Sum over ordered pairs (a, b) of ||[B_a, B_b]||^2."""
    total = 0.0
    m = mats.shape[0]
    for a in range(m):
        for b in range(a + 1, m):
            total += 2.0 * frobenius_norm_sq(commutator(mats[a], mats[b]))
    return total


def ddvv_check(t, tol=DEFAULT_TOL) -> CheckResult:
    """Commutator-sum bound for traceless symmetric tuples.

    lhs = sum over ordered pairs of ||[B_a, B_b]||^2, rhs = (sum ||B_a||^2)^2.
    Rejects tuples that are not traceless within `tol`.
    """
    mats = _as_stack(t)
    for b in mats:
        scale = max(1.0, np.sqrt(frobenius_norm_sq(b)))
        if abs(np.trace(b)) > tol * scale:
            raise ValueError("ddvv_check requires traceless matrices")
    mats = _normalize_stack(mats)
    lhs = _commutator_sum_sq(mats)
    rhs = float(np.sum(mats * mats)) ** 2
    return _result(lhs, rhs, tol, "ddvv")


def cdk_check(b1, b2, tol=DEFAULT_TOL) -> CheckResult:
    """Pairwise commutator bound ||[B1, B2]||^2 <= 2 ||B1||^2 ||B2||^2."""
    mats = _normalize_stack(_as_stack([b1, b2]))
    lhs = frobenius_norm_sq(commutator(mats[0], mats[1]))
    rhs = 2.0 * frobenius_norm_sq(mats[0]) * frobenius_norm_sq(mats[1])
    return _result(lhs, rhs, tol, "cdk")


def _rank(b, tol):
    norm = np.sqrt(frobenius_norm_sq(b))
    if norm == 0.0:
        return 0
    eigs = np.linalg.eigvalsh(b)
    return int(np.sum(np.abs(eigs) >= tol * norm))


def cdk_equality_detect(b1, b2, tol=DEFAULT_TOL) -> bool:
    """Detect the pairwise-bound equality case.

    Numeric equality of the two sides, plus (for nonzero pairs) the
    structural certificate of the equality form: both matrices of rank at
    most two, traceless, and orthogonal to each other.
    """
    mats = _as_stack([b1, b2])
    check = cdk_check(mats[0], mats[1], tol)
    if not check.equality:
        return False
    mats = _normalize_stack(mats)
    m1, m2 = mats[0], mats[1]
    if frobenius_norm_sq(m1) <= tol and frobenius_norm_sq(m2) <= tol:
        return True
    if _rank(m1, tol) > 2 or _rank(m2, tol) > 2:
        return False
    if abs(frobenius_inner(m1, m2)) > tol:
        return False
    if abs(np.trace(m1)) > tol or abs(np.trace(m2)) > tol:
        return False
    return True


def lili_check(t, tol=DEFAULT_TOL) -> CheckResult:
    """Commutator plus Gram-square bound with constant 3/2.

    Both double sums run over all ordered pairs, including the diagonal
    terms <B_a, B_a>^2 = ||B_a||^4.  Trace-free input is not required.
    """
    mats = _normalize_stack(_as_stack(t))
    m = mats.shape[0]
    lhs = _commutator_sum_sq(mats)
    for a in range(m):
        lhs += frobenius_inner(mats[a], mats[a]) ** 2
        for b in range(a + 1, m):
            lhs += 2.0 * frobenius_inner(mats[a], mats[b]) ** 2
    rhs = 1.5 * float(np.sum(mats * mats)) ** 2
    return _result(lhs, rhs, tol, "li-li")


def weak_constant_m(m: int) -> float:
    """Codimension-based constant sqrt((2m - 1) / (3m - 3))."""
    if m < 2:
        raise ValueError("constant requires m >= 2")
    return float(np.sqrt((2 * m - 1) / (3 * m - 3)))


def weak_constant_n(n: int) -> float:
    """Dimension-based constant sqrt((2/3) (n^2 + n - 3) / (n^2 + n - 4)).

    Equals weak_constant_m(n(n+1)/2 - 1): the codimension can be replaced
    by the dimension of the image of the traceless second fundamental form,
    which is at most n(n+1)/2 - 1.
    """
    if n < 2:
        raise ValueError("constant requires n >= 2")
    return float(np.sqrt((2.0 / 3.0) * (n * n + n - 3) / (n * n + n - 4)))


def weak_checks(s: ShapeOperatorSet, tol=DEFAULT_TOL):
    """The two provable weakenings rho <= |H|^2 - C rho_perp + c.

    Returns (codimension-constant check, dimension-constant check).  For
    m = 1 the normal curvature vanishes and the codimension constant is
    irrelevant; it is taken as 1 so the check degenerates to Chen's bound.
    """
    inv = invariants(s)
    cm = weak_constant_m(s.m) if s.m >= 2 else 1.0
    cn = weak_constant_n(s.n)
    rm = _result(inv.rho, inv.h_sq - cm * inv.rho_perp + s.ambient_c, tol,
                 "weak-codim")
    rn = _result(inv.rho, inv.h_sq - cn * inv.rho_perp + s.ambient_c, tol,
                 "weak-dim")
    return rm, rn


def chen_check(s: ShapeOperatorSet, tol=DEFAULT_TOL) -> CheckResult:
    """Normally-flat bound rho <= |H|^2 + c; equality iff b vanishes."""
    inv = invariants(s)
    res = _result(inv.rho, inv.h_sq + s.ambient_c, tol, "chen")
    equality = inv.b_sq <= tol
    return CheckResult(lhs=res.lhs, rhs=res.rhs, holds=res.holds,
                       equality=equality, tol=tol, label=res.label)


def gram_diagonalizing_mix(t):
    """Orthogonally mix the tuple so the Gram matrix <B_a, B_b> is diagonal.

    Eigendecomposes the m x m Gram matrix and applies the eigenvector mixing
    B'_b = sum_a O_ab B_a.
    """
    mats = _as_stack(t)
    m = mats.shape[0]
    gram = np.empty((m, m))
    for a in range(m):
        for b in range(m):
            gram[a, b] = frobenius_inner(mats[a], mats[b])
    _, vecs = np.linalg.eigh((gram + gram.T) / 2.0)
    return np.einsum("ab,aij->bij", vecs, mats)
