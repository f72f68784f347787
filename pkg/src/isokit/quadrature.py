"""Composite Simpson quadrature (1-D, cumulative, and tensor-product 2-D).

Panel-count defaults can be overridden globally through the ISOKIT_PANELS
environment variable; explicit ``panels=`` arguments always win.
"""

import os

import numpy as np

DEFAULT_PANELS_1D = 256
DEFAULT_PANELS_2D = 128


def _env_panels() -> int | None:
    raw = os.environ.get("ISOKIT_PANELS")
    if raw is None:
        return None
    n = int(raw)
    if n < 2:
        raise ValueError("ISOKIT_PANELS must be at least 2")
    return n


def default_panels_1d() -> int:
    return _env_panels() or DEFAULT_PANELS_1D


def default_panels_2d() -> int:
    return _env_panels() or DEFAULT_PANELS_2D


def simpson(f, a: float, b: float, panels: int | None = None) -> float:
    """Integrate f over [a, b] with composite Simpson on an even panel count."""
    n = default_panels_1d() if panels is None else int(panels)
    if n % 2:
        n += 1
    t = np.linspace(a, b, n + 1)
    y = np.array([f(ti) for ti in t], dtype=float)
    return simpson_samples(y, (b - a) / n)


def simpson_samples(y: np.ndarray, h: float) -> float:
    """Composite Simpson for uniformly spaced samples (odd sample count)."""
    y = np.asarray(y, dtype=float)
    if y.size < 3 or y.size % 2 == 0:
        raise ValueError("simpson_samples needs an odd number of samples >= 3")
    return (h / 3.0) * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())


def cumulative_simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Running integral of uniform samples, exact for local parabolas.

    Each sub-interval is integrated from the quadratic through the three
    nearest nodes, so the result is fourth-order accurate like plain Simpson.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 3:
        raise ValueError("cumulative_simpson needs at least 3 samples")
    out = np.empty(n)
    out[0] = 0.0
    # integral over [t_i, t_{i+1}] from the parabola through (i, i+1, i+2)
    left = h * (5.0 * y[:-2] + 8.0 * y[1:-1] - y[2:]) / 12.0
    # same cell from the parabola through (i-1, i, i+1)
    right = h * (-y[:-2] + 8.0 * y[1:-1] + 5.0 * y[2:]) / 12.0
    inc = np.empty(n - 1)
    inc[0] = left[0]
    inc[1:] = right
    np.cumsum(inc, out=out[1:])
    return out


def simpson_2d(
    f,
    u_lo: float,
    u_hi: float,
    v_lo: float,
    v_hi: float,
    panels_u: int | None = None,
    panels_v: int | None = None,
) -> float:
    """Tensor-product composite Simpson of f(u, v) over a rectangle."""
    nu = default_panels_2d() if panels_u is None else int(panels_u)
    nv = default_panels_2d() if panels_v is None else int(panels_v)
    if nu % 2:
        nu += 1
    if nv % 2:
        nv += 1
    us = np.linspace(u_lo, u_hi, nu + 1)
    vs = np.linspace(v_lo, v_hi, nv + 1)
    hu = (u_hi - u_lo) / nu
    rows = np.empty(nu + 1)
    for i, u in enumerate(us):
        vals = np.array([f(u, v) for v in vs], dtype=float)
        rows[i] = simpson_samples(vals, (v_hi - v_lo) / nv)
    return simpson_samples(rows, hu)
