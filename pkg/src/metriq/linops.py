"""Dense operator algebra for quantum systems with a modified inner product.

Everything in this package works with explicit complex matrices.  A *metric*
is a hermitian positive-definite matrix ``eta`` that redefines the inner
product as ``<psi, eta phi>``; an operator ``A`` is hermitian with respect to
that product when ``A^dag eta == eta A``.  This module holds the generic
machinery: metric validation and square roots, eta-adjoints, similarity maps
to an ordinary hermitian operator, spectra and time evolution.

Conventions
-----------
* Operators are square 2-D ``numpy`` arrays, states are 1-D arrays; both are
  handled as ``complex128``.
* Functions are pure: inputs are never mutated.
* Eigenvalues are always reported sorted by (real part, imaginary part).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "EPS_PD",
    "COND_LIMIT",
    "REALITY_TOL",
    "DEFAULT_TOL",
    "NotHermitianError",
    "NotPositiveDefiniteError",
    "SingularMetricError",
    "DefectiveMatrixError",
    "MetricSpec",
    "SpectrumResult",
    "InnerProductSpace",
    "as_operator",
    "as_state",
    "commutator",
    "anticommutator",
    "eta_adjoint",
    "is_pseudo_hermitian",
    "matrix_sqrt_pd",
    "modified_inner",
    "to_hermitian",
    "map_observable",
    "spectrum",
    "evolve",
]

# Relative floor below which a metric eigenvalue counts as non-positive.
EPS_PD = 1e-12
# Condition-number ceiling for metrics and eigenvector matrices.  Beyond this
# the computation is refused rather than silently degraded.
COND_LIMIT = 1e14
# An eigenvalue counts as real when |Im(lam)| <= REALITY_TOL * (1 + |lam|).
REALITY_TOL = 1e-9
# Default relative tolerance for residual checks.
DEFAULT_TOL = 1e-12


class NotHermitianError(ValueError):
    """A matrix that must be hermitian is not (within tolerance)."""


class NotPositiveDefiniteError(ValueError):
    """A metric candidate has a non-positive eigenvalue.

    The offending smallest eigenvalue is attached as ``min_eigenvalue``.
    """

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = float(min_eigenvalue)


class SingularMetricError(ValueError):
    """A metric is numerically singular (condition number too large)."""


class DefectiveMatrixError(ValueError):
    """A matrix has no well-conditioned eigenbasis; evolution is refused."""


def as_operator(a) -> np.ndarray:
    """Validate and return ``a`` as a square complex matrix.

    Raises ``ValueError`` for non-square or non-finite input.
    """
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("operator dimension must be positive")
    if not np.all(np.isfinite(arr)):
        raise ValueError("operator contains non-finite entries")
    return arr


def as_state(v, dim: int | None = None) -> np.ndarray:
    """Validate and return ``v`` as a 1-D complex vector of length ``dim``."""
    vec = np.asarray(v, dtype=complex)
    if vec.ndim != 1:
        raise ValueError(f"expected a 1-D state vector, got shape {vec.shape}")
    if dim is not None and vec.shape[0] != dim:
        raise ValueError(f"state has length {vec.shape[0]}, operator expects {dim}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("state contains non-finite entries")
    return vec


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    return a @ b + b @ a


def _check_same_dim(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape[0] != b.shape[0]:
        raise ValueError(
            f"dimension mismatch: operator is {a.shape[0]}-dimensional, "
            f"{what} is {b.shape[0]}-dimensional"
        )


def _require_hermitian(a: np.ndarray, tol: float, what: str) -> None:
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(1.0, scale):
        raise NotHermitianError(f"{what} is not hermitian within tolerance {tol}")


def _require_invertible_metric(eta: np.ndarray) -> None:
    cond = np.linalg.cond(eta)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMetricError(
            f"metric condition number {cond:.3e} exceeds limit {COND_LIMIT:.1e}"
        )


@dataclass(frozen=True)
class MetricSpec:
    """Per-mode exponents defining a diagonal-family metric.

    ``gammas[i]`` sets the real deformation of mode/site ``i`` and ``xis[i]``
    the accompanying phase; the combination ``w_i = gamma_i + 1j * xi_i``
    enters the model builders.  Entries must be finite and the two tuples
    must have equal length.
    """

    gammas: tuple[float, ...]
    xis: tuple[float, ...]

    def __init__(self, gammas: Sequence[float], xis: Sequence[float] | None = None):
        g = tuple(float(x) for x in gammas)
        x = tuple(float(v) for v in xis) if xis is not None else (0.0,) * len(g)
        if len(g) != len(x):
            raise ValueError(
                f"gammas has length {len(g)} but xis has length {len(x)}"
            )
        if not g:
            raise ValueError("MetricSpec needs at least one mode")
        for name, vals in (("gammas", g), ("xis", x)):
            if not all(np.isfinite(v) for v in vals):
                raise ValueError(f"{name} contains non-finite entries")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "xis", x)

    @property
    def n(self) -> int:
        return len(self.gammas)

    @property
    def ws(self) -> np.ndarray:
        """Complex deformation parameters ``gamma + 1j * xi`` per mode."""
        return np.asarray(self.gammas) + 1j * np.asarray(self.xis)


@dataclass(frozen=True)
class SpectrumResult:
    """Sorted eigenvalues plus quality-of-solution diagnostics.

    Attributes
    ----------
    eigenvalues : ndarray
        Complex eigenvalues sorted by (real, imaginary) part.
    max_imag_abs : float
        Largest absolute imaginary part, for quick reality checks.
    residual : float
        Largest 2-norm of ``A v - lam v`` over the computed unit eigenvectors.
    """

    eigenvalues: np.ndarray
    max_imag_abs: float
    residual: float

    def is_real(self, tol: float = REALITY_TOL) -> bool:
        """True when every eigenvalue satisfies |Im| <= tol * (1 + |lam|)."""
        lam = self.eigenvalues
        return bool(np.all(np.abs(lam.imag) <= tol * (1.0 + np.abs(lam))))


@dataclass(frozen=True)
class InnerProductSpace:
    """A validated metric together with its positive square root.

    ``rho = sqrt(metric)`` is the hermitian positive root and
    ``rho_inverse`` its inverse; both are computed from one eigenvalue
    decomposition so that ``rho @ rho`` reproduces the metric to rounding.
    """

    metric: np.ndarray
    rho: np.ndarray
    rho_inverse: np.ndarray

    @property
    def dim(self) -> int:
        return self.metric.shape[0]


def eta_adjoint(a, eta) -> np.ndarray:
    """Adjoint of ``a`` with respect to the metric: ``eta^{-1} a^dag eta``.

    The map is an involution and reduces to the ordinary adjoint for
    ``eta = I``.  Raises on dimension mismatch, non-hermitian or numerically
    singular ``eta``.
    """
    a = as_operator(a)
    eta = as_operator(eta)
    _check_same_dim(a, eta, "metric")
    _require_hermitian(eta, 1e-10, "metric")
    _require_invertible_metric(eta)
    return np.linalg.solve(eta, a.conj().T @ eta)


def is_pseudo_hermitian(a, eta, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Test ``a^dag eta == eta a`` and return ``(passed, residual)``.

    The residual is ``||a^dag eta - eta a||_F / (1 + ||eta a||_F)``, so the
    test is relative for large operators but remains meaningful near zero.
    """
    a = as_operator(a)
    eta = as_operator(eta)
    _check_same_dim(a, eta, "metric")
    _require_hermitian(eta, 1e-10, "metric")
    _require_invertible_metric(eta)
    lhs = a.conj().T @ eta
    rhs = eta @ a
    residual = float(np.linalg.norm(lhs - rhs) / (1.0 + np.linalg.norm(rhs)))
    return residual <= tol, residual


def matrix_sqrt_pd(eta) -> InnerProductSpace:
    """Validate a metric and compute its positive square root.

    Uses a hermitian eigendecomposition; eigenvalues must exceed
    ``EPS_PD`` times the largest one, otherwise
    :class:`NotPositiveDefiniteError` reports the smallest eigenvalue.
    """
    eta = as_operator(eta)
    _require_hermitian(eta, 1e-10, "metric")
    vals, vecs = np.linalg.eigh(eta)
    vmin, vmax = float(vals[0]), float(vals[-1])
    if vmax <= 0.0 or vmin <= EPS_PD * vmax:
        raise NotPositiveDefiniteError(
            f"metric is not positive definite: min eigenvalue {vmin:.6e} "
            f"(max {vmax:.6e})",
            min_eigenvalue=vmin,
        )
    root = np.sqrt(vals)
    rho = (vecs * root) @ vecs.conj().T
    rho_inv = (vecs / root) @ vecs.conj().T
    # Symmetrize away the last rounding asymmetry.
    rho = 0.5 * (rho + rho.conj().T)
    rho_inv = 0.5 * (rho_inv + rho_inv.conj().T)
    return InnerProductSpace(metric=eta, rho=rho, rho_inverse=rho_inv)


def modified_inner(psi, phi, eta) -> complex:
    """Inner product ``<psi, eta phi>``; conjugate-linear in ``psi``."""
    eta = as_operator(eta)
    psi = as_state(psi, eta.shape[0])
    phi = as_state(phi, eta.shape[0])
    return complex(np.vdot(psi, eta @ phi))


def to_hermitian(h, space: InnerProductSpace, u=None) -> np.ndarray:
    """Map ``h`` to its hermitian-equivalent form ``(u rho) h (u rho)^{-1}``.

    ``space`` carries the metric square root; ``u`` is an optional unitary
    used to tidy residual phase factors and defaults to the identity.  The
    output is isospectral with ``h`` and is hermitian precisely when ``h``
    is pseudo-hermitian with respect to ``space.metric``.
    """
    h = as_operator(h)
    if h.shape[0] != space.dim:
        raise ValueError(
            f"dimension mismatch: operator is {h.shape[0]}-dimensional, "
            f"inner-product space is {space.dim}-dimensional"
        )
    if u is None:
        left = space.rho
        right = space.rho_inverse
    else:
        u = as_operator(u)
        _check_same_dim(h, u, "unitary")
        defect = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
        if defect > 1e-10 * u.shape[0]:
            raise ValueError(f"u is not unitary: ||u^dag u - I|| = {defect:.3e}")
        left = u @ space.rho
        right = space.rho_inverse @ u.conj().T
    return left @ h @ right


def map_observable(bhat, space: InnerProductSpace) -> np.ndarray:
    """Pull a hermitian observable back to the metric representation.

    Returns ``rho^{-1} bhat rho``, which is pseudo-hermitian with respect to
    ``space.metric`` and preserves commutators: the map is an algebra
    isomorphism.  ``bhat`` must be hermitian.
    """
    bhat = as_operator(bhat)
    if bhat.shape[0] != space.dim:
        raise ValueError(
            f"dimension mismatch: observable is {bhat.shape[0]}-dimensional, "
            f"inner-product space is {space.dim}-dimensional"
        )
    _require_hermitian(bhat, 1e-10, "observable")
    return space.rho_inverse @ bhat @ space.rho


def _sorted_eigenvalues(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((vals.imag, vals.real))
    return vals[order], order


def spectrum(a) -> SpectrumResult:
    """Full eigenvalue set of a general complex matrix.

    Eigenvalues come back sorted by (real, imaginary) part.  The residual is
    the worst ``||A v - lam v||`` over the unit right eigenvectors, which
    stays near machine precision for well-conditioned problems.
    """
    a = as_operator(a)
    vals, vecs = np.linalg.eig(a)
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    norms = np.linalg.norm(vecs, axis=0)
    residual = float(np.max(res / np.where(norms > 0, norms, 1.0)))
    lam, _ = _sorted_eigenvalues(vals)
    return SpectrumResult(
        eigenvalues=lam,
        max_imag_abs=float(np.max(np.abs(lam.imag))) if lam.size else 0.0,
        residual=residual,
    )


def evolve(h, psi0, times) -> np.ndarray:
    """Evolve ``psi0`` under ``exp(-i h t)`` for each ``t`` in ``times``.

    Evolution goes through an eigendecomposition: hermitian generators use
    the stable symmetric solver, anything else the general one.  A general
    matrix whose eigenvector basis has condition number above ``COND_LIMIT``
    is rejected as defective instead of producing quietly wrong results.

    Returns an array of shape ``(len(times), dim)``; ``t == 0`` rows
    reproduce ``psi0`` exactly.
    """
    h = as_operator(h)
    psi0 = as_state(psi0, h.shape[0])
    tgrid = np.atleast_1d(np.asarray(times, dtype=float))
    if tgrid.ndim != 1:
        raise ValueError("times must be a 1-D sequence")
    if not np.all(np.isfinite(tgrid)):
        raise ValueError("times contains non-finite entries")

    hermitian = np.linalg.norm(h - h.conj().T) <= 1e-12 * max(1.0, np.linalg.norm(h))
    if hermitian:
        vals, vecs = np.linalg.eigh(h)
        coeff = vecs.conj().T @ psi0
        reconstruct = vecs
    else:
        vals, vecs = np.linalg.eig(h)
        cond = np.linalg.cond(vecs)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise DefectiveMatrixError(
                f"eigenvector matrix condition {cond:.3e} exceeds "
                f"{COND_LIMIT:.1e}; matrix is numerically defective"
            )
        coeff = np.linalg.solve(vecs, psi0)
        reconstruct = vecs

    out = np.empty((tgrid.size, h.shape[0]), dtype=complex)
    for k, t in enumerate(tgrid):
        if t == 0.0:
            out[k] = psi0
        else:
            out[k] = reconstruct @ (np.exp(-1j * vals * t) * coeff)
    return out
