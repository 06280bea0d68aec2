"""Reference computations that share no code with the package.

Both oracles integrate on fine midpoint grids, so they are slow and only
accurate to about 1e-5 on the 0.25-grid fixtures.
"""

import numpy as np


def quantile(values, probs, t):
    """Left quantile inf{x : F(x) >= t}, vectorized over ``t``."""
    order = np.argsort(values)
    v = np.asarray(values, dtype=float)[order]
    F = np.cumsum(np.asarray(probs, dtype=float)[order])
    idx = np.searchsorted(F, np.asarray(t) - 1e-15, side="left")
    return v[np.minimum(idx, len(v) - 1)]


def es_integral(values, probs, p, n=1_000_000):
    """(1/(1-p)) * integral of the quantile over (p, 1), midpoint rule."""
    t = p + (np.arange(n) + 0.5) * (1.0 - p) / n
    return float(np.mean(quantile(values, probs, t)))


def left_es_integral(values, probs, p, n=1_000_000):
    t = (np.arange(n) + 0.5) * p / n
    return float(np.mean(quantile(values, probs, t)))


def choquet_quadrature(h, values, probs, n=100_000):
    """int_0^inf h(S(x)) dx - int_{-inf}^0 (1 - h(S(x))) dx with S(x) = P(X > x)."""
    v = np.asarray(values, dtype=float)
    p = np.asarray(probs, dtype=float)
    lo, hi = min(0.0, v.min()), max(0.0, v.max())
    total = 0.0
    if hi > 0:
        x = (np.arange(n) + 0.5) * hi / n
        S = (p[None, :] * (v[None, :] > x[:, None])).sum(axis=1)
        total += float(np.sum(h(S)) * hi / n)
    if lo < 0:
        x = lo + (np.arange(n) + 0.5) * (-lo) / n
        S = (p[None, :] * (v[None, :] > x[:, None])).sum(axis=1)
        total -= float(np.sum(1.0 - h(S)) * (-lo) / n)
    return total


def piecewise(knots):
    ts = np.array([k[0] for k in knots])
    hs = np.array([k[1] for k in knots])
    return lambda s: np.interp(s, ts, hs)
