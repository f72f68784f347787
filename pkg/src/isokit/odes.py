"""Profile ODEs of invariant surfaces and the degenerate axis-crossing solver.

Three second-order profiles are integrated with fixed-step classical
Runge-Kutta: the non-isotropic weighted-curve equation
(z**alpha - lam) z'' = alpha z**(alpha-1) (1 - z'^2)/2, the revolution
equation z'' + z'/t = (1 - z'^2)/(2 z), and the parabolic-revolution
equation (2z + b c2 t^2) z'' + z'^2 - 2ab c2 t z'/(a^2+b^2)
+ 2b c2 (z + b c2 t^2)/(a^2+b^2) - b^2/(a^2+b^2) = 0.

The revolution equation degenerates at t = 0.  For initial height a > 0 with
z'(0) = 0 it is solved there as the fixed point of

    (T z)(t) = a + int_0^t (1/r) int_0^r tau (1 - z'(tau)^2)/(2 z(tau)) dtau dr

on [0, R], where R keeps T a contractive self-map of the C^1 ball of radius
a/2 around the constant a (Lipschitz constants estimated numerically, then a
0.9 safety factor).  The curvature of the solution at the origin is 1/(4a).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    MaxIterExceededError,
    NonContractionError,
    SingularityError,
    StepFailureError,
)
from .quadrature import cumulative_simpson

DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class ProfileODE:
    kind: str
    rhs: Callable[[float, float, float], float]
    params: dict = field(default_factory=dict)

    @classmethod
    def nonisotropic_alpha_catenary(cls, alpha: float, lam: float = 0.0) -> "ProfileODE":
        def rhs(t, z, zp, _a=alpha, _l=lam):
            del t
            if z <= 0.0 and _a != round(_a):
                raise SingularityError("weight base must stay positive")
            denom = z**_a - _l
            if abs(denom) < DENOM_FLOOR:
                raise SingularityError(f"weight denominator {denom} vanished")
            return _a * z ** (_a - 1.0) * 0.5 * (1.0 - zp * zp) / denom

        return cls("nonisotropic_alpha_catenary", rhs, {"alpha": alpha, "lam": lam})

    @classmethod
    def revolution_nonisotropic(cls) -> "ProfileODE":
        def rhs(t, z, zp):
            if abs(2.0 * z) < DENOM_FLOOR:
                raise SingularityError("profile height vanished")
            core = (1.0 - zp * zp) / (2.0 * z)
            if t < 1e-8:
                # z'/t -> z''(0) as t -> 0, halving the right-hand side
                return 0.5 * core
            return core - zp / t

        return cls("revolution_nonisotropic", rhs)

    @classmethod
    def parabolic_nonisotropic(cls, a: float, b: float, c2: float) -> "ProfileODE":
        if b == 0.0:
            raise ValueError("parabolic profile ODE needs b != 0")
        ab2 = a * a + b * b

        def rhs(t, z, zp):
            denom = 2.0 * z + b * c2 * t * t
            if abs(denom) < DENOM_FLOOR:
                raise SingularityError(f"denominator {denom} vanished")
            num = (
                b * b / ab2
                - zp * zp
                + 2.0 * a * b * c2 * t * zp / ab2
                - 2.0 * b * c2 * (z + b * c2 * t * t) / ab2
            )
            return num / denom

        return cls("parabolic_nonisotropic", rhs, {"a": a, "b": b, "c2": c2})


class SampledProfile(NamedTuple):
    t: np.ndarray
    z: np.ndarray
    zp: np.ndarray


@dataclass
class IVPResult:
    t: np.ndarray
    z: np.ndarray
    zp: np.ndarray
    iterations: int = 0
    contraction_ratios: list = field(default_factory=list)
    zpp_origin: float | None = None
    a: float | None = None
    radius: float | None = None
    epsilon: float | None = None

    def state_at(self, t: float) -> tuple[float, float]:
        ts, zs, ps = self.t, self.z, self.zp
        if ts[0] > ts[-1]:  # backward integration stores a decreasing grid
            ts, zs, ps = ts[::-1], zs[::-1], ps[::-1]
        return (float(np.interp(t, ts, zs)), float(np.interp(t, ts, ps)))

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("t,z,zp\n")
            for ti, zi, pi in zip(self.t, self.z, self.zp):
                fh.write(f"{ti:.17g},{zi:.17g},{pi:.17g}\n")

    def sidecar_dict(self) -> dict:
        return {
            "a": self.a,
            "R": self.radius,
            "epsilon": self.epsilon,
            "iterations": self.iterations,
            "contraction_ratios": list(self.contraction_ratios),
            "zpp_origin": self.zpp_origin,
        }


def integrate(
    ode: ProfileODE, t0: float, z0: float, zp0: float, t1: float, steps: int
) -> IVPResult:
    """Fixed-step classical Runge-Kutta for z'' = rhs(t, z, z').

    Backward integration (t1 < t0) is allowed.  Raises SingularityError when
    a right-hand-side denominator collapses and StepFailureError on
    non-finite state.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    h = (t1 - t0) / steps
    ts = np.empty(steps + 1)
    zs = np.empty(steps + 1)
    ps = np.empty(steps + 1)
    t, z, p = float(t0), float(z0), float(zp0)
    ts[0], zs[0], ps[0] = t, z, p
    for i in range(steps):
        k1z, k1p = p, ode.rhs(t, z, p)
        k2z = p + 0.5 * h * k1p
        k2p = ode.rhs(t + 0.5 * h, z + 0.5 * h * k1z, p + 0.5 * h * k1p)
        k3z = p + 0.5 * h * k2p
        k3p = ode.rhs(t + 0.5 * h, z + 0.5 * h * k2z, p + 0.5 * h * k2p)
        k4z = p + h * k3p
        k4p = ode.rhs(t + h, z + h * k3z, p + h * k3p)
        z += h * (k1z + 2.0 * k2z + 2.0 * k3z + k4z) / 6.0
        p += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        t = t0 + (i + 1) * h
        if not (math.isfinite(z) and math.isfinite(p)):
            raise StepFailureError(f"non-finite state at t={t}")
        ts[i + 1], zs[i + 1], ps[i + 1] = t, z, p
    return IVPResult(ts, zs, ps, iterations=steps)


def ivp_residual(result: IVPResult, ode: ProfileODE) -> float:
    """Max |z'' - rhs| at cell midpoints, reconstructed from the samples.

    The midpoint state comes from the two-point cubic Hermite interpolant and
    z'' from the difference quotient of z', so the bound reflects the
    fourth-order accuracy of the stored solution.
    """
    t, z, zp = result.t, result.z, result.zp
    h = t[1:] - t[:-1]
    tm = 0.5 * (t[:-1] + t[1:])
    zm = 0.5 * (z[:-1] + z[1:]) + h * (zp[:-1] - zp[1:]) / 8.0
    pm = 1.5 * (z[1:] - z[:-1]) / h - 0.25 * (zp[:-1] + zp[1:])
    zppm = (zp[1:] - zp[:-1]) / h
    res = [
        abs(zppm[i] - ode.rhs(float(tm[i]), float(zm[i]), float(pm[i])))
        for i in range(tm.size)
    ]
    return max(res)


def operator_T_apply(a: float, profile: SampledProfile) -> SampledProfile:
    """One application of the degenerate-problem integral operator.

    Inner and outer integrals use the cumulative Simpson rule on the profile's
    own uniform grid; the outer integrand (1/r times the inner integral)
    extends continuously by 0 at the origin.
    """
    t, z, zp = profile
    if np.any(z <= DENOM_FLOOR):
        raise ZeroDivisionError("profile height fell below the division floor")
    h = float(t[1] - t[0])
    g = t * (1.0 - zp**2) / (2.0 * z)
    inner = cumulative_simpson(g, h)
    outer = np.empty_like(inner)
    outer[0] = 0.0
    outer[1:] = inner[1:] / t[1:]
    new_z = a + cumulative_simpson(outer, h)
    return SampledProfile(t, new_z, outer.copy())


def _lipschitz_estimate(f, lo: float, hi: float, n: int = 2001) -> float:
    xs = np.linspace(lo, hi, n)
    ys = np.array([f(x) for x in xs])
    return float(np.max(np.abs(np.diff(ys) / np.diff(xs))))


def picard_radius(a: float, epsilon: float) -> float:
    """Domain radius keeping the operator a contractive self-map (0.9 safety)."""
    if not 0.0 < epsilon < a:
        raise ValueError("need 0 < epsilon < a")
    self_map = min(
        math.sqrt(4.0 * epsilon * (a - epsilon) / (1.0 + epsilon**2)),
        2.0 * epsilon * (a - epsilon) / (1.0 + epsilon**2),
    )
    l1 = _lipschitz_estimate(lambda x: 0.5 / x, a - epsilon, a + epsilon)
    l2 = _lipschitz_estimate(lambda x: 1.0 - x * x, a - epsilon, a + epsilon)
    lip = l1 * l2
    contraction = min(math.sqrt(2.0 / lip), 1.0 / lip)
    return 0.9 * min(self_map, contraction)


def picard_solve_degenerate(
    a: float,
    tol: float = 1e-12,
    max_iter: int = 200,
    nodes: int = 513,
) -> IVPResult:
    """Axis-crossing revolution profile with z(0) = a > 0 and z'(0) = 0.

    Iterates the integral operator from the constant profile until successive
    C^1 corrections (max|dz| + max|dz'|) fall below tol; the curvature at the
    origin is recovered by a least-squares fit of z - a against t^2 and t^4
    over the inner half of the domain.
    """
    if a <= 0.0:
        raise ValueError("need a > 0")
    if nodes % 2 == 0:
        raise ValueError("nested Simpson needs an odd node count")
    epsilon = 0.5 * a
    radius = picard_radius(a, epsilon)
    t = np.linspace(0.0, radius, nodes)
    profile = SampledProfile(t, np.full(nodes, float(a)), np.zeros(nodes))
    ratios: list[float] = []
    prev_diff = None
    for it in range(1, max_iter + 1):
        new = operator_T_apply(a, profile)
        diff = float(np.max(np.abs(new.z - profile.z)) + np.max(np.abs(new.zp - profile.zp)))
        profile = new
        if prev_diff is not None and prev_diff > 0.0:
            ratio = diff / prev_diff
            ratios.append(ratio)
            if ratio >= 1.0 and diff > 1e3 * np.finfo(float).eps:
                raise NonContractionError(
                    f"correction ratio {ratio:.3f} >= 1 at iteration {it}"
                )
        if diff < tol:
            zpp0 = _origin_curvature_fit(profile)
            return IVPResult(
                profile.t,
                profile.z,
                profile.zp,
                iterations=it,
                contraction_ratios=ratios,
                zpp_origin=zpp0,
                a=a,
                radius=radius,
                epsilon=epsilon,
            )
        prev_diff = diff
    raise MaxIterExceededError(f"no convergence to {tol} within {max_iter} iterations")


def _origin_curvature_fit(profile: SampledProfile) -> float:
    """z''(0) from a least-squares even-polynomial fit near the origin."""
    t, z, _ = profile
    cut = t <= 0.5 * t[-1]
    w = float(t[cut][-1])
    s = (t[cut] / w) ** 2
    basis = np.stack([s, s * s], axis=1)
    coef, *_ = np.linalg.lstsq(basis, z[cut] - z[0], rcond=None)
    return 2.0 * float(coef[0]) / w**2


def continuity_in_a(a_values, tol: float = 1e-12, max_iter: int = 200) -> list[IVPResult]:
    """Degenerate solves for each initial height, for tabulated comparison."""
    return [picard_solve_degenerate(a, tol=tol, max_iter=max_iter) for a in a_values]
