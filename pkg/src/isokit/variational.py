"""Discrete weighted-length functionals over graph curves and their minimizers.

A profile z(t) with fixed endpoints is weighed by w(t) = t**alpha - lam
(isotropic reference axis) or w(z) = z**alpha - lam (non-isotropic axis)
against the relative length element (1 + z'^2)/2 dt:

    F[z] = sum_i h_i * (w_i + w_{i+1})/2 * (1 + zdot_i^2)/2,

with zdot_i the forward difference on cell i.  The gradient below is the
exact derivative of this discrete functional with the endpoints eliminated,
and the minimizer runs damped Newton on the resulting tridiagonal system
(gradient descent as fallback).  Critical profiles satisfy the continuum
equations alpha*t**(alpha-1)*z' + (t**alpha - lam)*z'' = 0 and
(z**alpha - lam)*z'' = alpha*z**(alpha-1)*(1 - z'^2)/2 respectively.
"""

from dataclasses import dataclass

import numpy as np

from .curves import LX, LZ, CatenaryFamily, PlaneCurve
from .errors import DomainError, NoConvergenceError


@dataclass(frozen=True)
class WeightFunctionalSpec:
    reference: str = LZ
    alpha: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if self.reference not in (LZ, LX):
            raise ValueError(f"unknown reference line {self.reference!r}")


@dataclass
class DiscreteCurve:
    """Profile samples z on a strictly increasing grid t."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 3:
            raise ValueError("grid must be 1-d with at least 3 nodes")
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values must have equal length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")

    def as_plane_curve(self) -> PlaneCurve:
        return PlaneCurve.from_samples(self.grid, self.values)


def _weight_base(spec: WeightFunctionalSpec, t: np.ndarray, z: np.ndarray) -> np.ndarray:
    base = t if spec.reference == LZ else z
    if spec.alpha != round(spec.alpha) and np.any(base <= 0.0):
        raise DomainError(
            "non-integer exponent requires a positive weight base everywhere"
        )
    if spec.alpha < 0 and np.any(base == 0.0):
        raise DomainError("negative exponent with zero weight base")
    return base


def _weights(spec, t, z):
    base = _weight_base(spec, t, z)
    w = base**spec.alpha - spec.lam
    if spec.reference == LX:
        wp = spec.alpha * base ** (spec.alpha - 1.0)
        if spec.alpha == 1.0:
            wpp = np.zeros_like(base)
        else:
            wpp = spec.alpha * (spec.alpha - 1.0) * base ** (spec.alpha - 2.0)
    else:
        wp = np.zeros_like(base)
        wpp = np.zeros_like(base)
    return w, wp, wpp


def evaluate_functional(
    spec: WeightFunctionalSpec, curve: DiscreteCurve, relative: bool = True
) -> float:
    """Discrete weighted length of the profile.

    With ``relative=False`` the plain length element dt replaces the relative
    one; for the isotropic axis the value then depends on the endpoints only.
    """
    t, z = curve.grid, curve.values
    h = np.diff(t)
    w, _, _ = _weights(spec, t, z)
    cell_w = 0.5 * (w[:-1] + w[1:])
    if not relative:
        return float(np.sum(h * cell_w))
    zdot = np.diff(z) / h
    return float(np.sum(h * cell_w * 0.5 * (1.0 + zdot**2)))


def functional_gradient(spec: WeightFunctionalSpec, curve: DiscreteCurve) -> np.ndarray:
    """Exact gradient of the discrete functional at the interior nodes."""
    t, z = curve.grid, curve.values
    h = np.diff(t)
    zdot = np.diff(z) / h
    q = 0.5 * (1.0 + zdot**2)
    w, wp, _ = _weights(spec, t, z)
    cell_w = 0.5 * (w[:-1] + w[1:])
    slope = cell_w[:-1] * zdot[:-1] - cell_w[1:] * zdot[1:]
    weight = 0.5 * wp[1:-1] * (h[:-1] * q[:-1] + h[1:] * q[1:])
    return slope + weight


def _gradient_hessian(spec, t, z):
    """Gradient plus the tridiagonal Hessian bands at the interior nodes."""
    h = np.diff(t)
    zdot = np.diff(z) / h
    q = 0.5 * (1.0 + zdot**2)
    w, wp, wpp = _weights(spec, t, z)
    cell_w = 0.5 * (w[:-1] + w[1:])
    grad = cell_w[:-1] * zdot[:-1] - cell_w[1:] * zdot[1:]
    grad += 0.5 * wp[1:-1] * (h[:-1] * q[:-1] + h[1:] * q[1:])
    diag = (
        0.5 * wpp[1:-1] * (h[:-1] * q[:-1] + h[1:] * q[1:])
        + wp[1:-1] * (zdot[:-1] - zdot[1:])
        + cell_w[:-1] / h[:-1]
        + cell_w[1:] / h[1:]
    )
    # sub/super band between interior nodes j and j+1
    off = 0.5 * (wp[1:-2] - wp[2:-1]) * zdot[1:-1] - cell_w[1:-1] / h[1:-1]
    return grad, diag, off


def _solve_tridiagonal(diag, off, rhs):
    """Thomas elimination for a symmetric tridiagonal system."""
    n = diag.size
    c = np.empty(n - 1) if n > 1 else np.empty(0)
    d = np.empty(n)
    cp = diag[0]
    if cp == 0.0:
        raise ZeroDivisionError("zero pivot in tridiagonal solve")
    d[0] = rhs[0] / cp
    for i in range(1, n):
        c[i - 1] = off[i - 1] / cp
        cp = diag[i] - off[i - 1] * c[i - 1]
        if cp == 0.0:
            raise ZeroDivisionError("zero pivot in tridiagonal solve")
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / cp
    for i in range(n - 2, -1, -1):
        d[i] -= c[i] * d[i + 1]
    return d


def minimize(
    spec: WeightFunctionalSpec,
    endpoints: tuple[float, float, float, float],
    n: int,
    max_iter: int = 10_000,
    tol_scale: float = 1e-10,
) -> DiscreteCurve:
    """Profile with fixed endpoints driving the interior gradient to zero.

    ``endpoints`` is (t_a, z_a, t_b, z_b); ``n`` counts the grid cells.  The
    returned curve satisfies max|gradient| < tol_scale * n.
    """
    t_a, z_a, t_b, z_b = endpoints
    if not t_a < t_b:
        raise ValueError("need t_a < t_b")
    t = np.linspace(t_a, t_b, n + 1)
    z = np.linspace(z_a, z_b, n + 1)
    tol = tol_scale * n

    def grad_norm(zfull):
        g, _, _ = _gradient_hessian(spec, t, zfull)
        return float(np.max(np.abs(g)))

    for _ in range(max_iter + 1):
        grad, diag, off = _gradient_hessian(spec, t, z)
        gn = float(np.max(np.abs(grad)))
        if gn < tol:
            return DiscreteCurve(t, z)
        try:
            step = _solve_tridiagonal(diag, off, -grad)
        except ZeroDivisionError:
            step = -grad
        improved = False
        for damping in (1.0, 0.5, 0.25, 0.125, 0.0625):
            trial = z.copy()
            trial[1:-1] += damping * step
            try:
                if grad_norm(trial) < gn:
                    z = trial
                    improved = True
                    break
            except DomainError:
                continue
        if not improved:
            # gradient-descent fallback with a conservative step
            scale = 0.5 * float(np.min(np.diff(t))) / max(gn, 1e-30)
            for damping in (1.0, 0.25, 0.0625, 0.015625):
                trial = z.copy()
                trial[1:-1] -= damping * scale * grad
                try:
                    if grad_norm(trial) < gn:
                        z = trial
                        improved = True
                        break
                except DomainError:
                    continue
        if not improved:
            raise NoConvergenceError(
                f"no descent step found at gradient norm {gn:.3e}"
            )
    raise NoConvergenceError(f"gradient norm still above {tol:.3e} after {max_iter} iterations")


def el_residual(spec: WeightFunctionalSpec, profile, t: float) -> float:
    """Left-minus-right of the critical-profile equation at t.

    ``profile`` may be a callable t -> (z, z', z''), a PlaneCurve graph, or a
    CatenaryFamily.  For the isotropic axis the equation is
    alpha*t**(alpha-1)*z' + (t**alpha - lam)*z'' = 0; for the non-isotropic
    axis it is (z**alpha - lam)*z'' - alpha*z**(alpha-1)*(1 - z'^2)/2 = 0.
    """
    z, zd, zdd = _profile_at(profile, t)
    a, lam = spec.alpha, spec.lam
    if spec.reference == LZ:
        if t <= 0.0 and a != round(a):
            raise DomainError("non-integer exponent needs t > 0")
        return a * t ** (a - 1.0) * zd + (t**a - lam) * zdd
    if z <= 0.0 and a != round(a):
        raise DomainError("non-integer exponent needs z > 0")
    return (z**a - lam) * zdd - a * z ** (a - 1.0) * 0.5 * (1.0 - zd**2)


def _profile_at(profile, t: float) -> tuple[float, float, float]:
    if isinstance(profile, CatenaryFamily):
        return profile.profile(t)
    if isinstance(profile, PlaneCurve):
        j = profile.at(t)
        return (j.z, j.zd, j.zdd)
    return profile(t)


def discrete_relative_length(curve: DiscreteCurve) -> float:
    """Relative length of the discrete profile: sum of h*(1 + zdot^2)/2."""
    h = np.diff(curve.grid)
    zdot = np.diff(curve.values) / h
    return float(np.sum(h * 0.5 * (1.0 + zdot**2)))


def lambda_sweep(
    reference: str,
    alpha: float,
    lambdas,
    endpoints: tuple[float, float, float, float],
    n: int,
) -> list[dict]:
    """Minimize for each multiplier value; report value and relative length.

    The multiplier enters the weight as a given constant, so constraining the
    relative length to a target reduces to scanning this table.
    """
    out = []
    for lam in lambdas:
        spec = WeightFunctionalSpec(reference=reference, alpha=alpha, lam=lam)
        curve = minimize(spec, endpoints, n)
        out.append(
            {
                "lam": float(lam),
                "curve": curve,
                "value": evaluate_functional(spec, curve),
                "relative_length": discrete_relative_length(curve),
            }
        )
    return out
