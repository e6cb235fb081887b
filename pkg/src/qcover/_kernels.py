"""Compiled inner loops for the cover search objective."""

import numba
import numpy as np


@numba.njit(cache=True)
def hull_area_kernel(xs, ys):
    """Convex hull area by monotone chain; ``xs``/``ys`` are overwritten while sorting."""
    n = xs.shape[0]
    # insertion sort by (x, y); n is small (tens of points)
    for i in range(1, n):
        x, y = xs[i], ys[i]
        j = i - 1
        while j >= 0 and (xs[j] > x or (xs[j] == x and ys[j] > y)):
            xs[j + 1] = xs[j]
            ys[j + 1] = ys[j]
            j -= 1
        xs[j + 1] = x
        ys[j + 1] = y
    hx = np.empty(2 * n)
    hy = np.empty(2 * n)
    k = 0
    for i in range(n):
        while k >= 2 and (hx[k - 1] - hx[k - 2]) * (ys[i] - hy[k - 2]) - (hy[k - 1] - hy[k - 2]) * (xs[i] - hx[k - 2]) <= 0.0:
            k -= 1
        hx[k] = xs[i]
        hy[k] = ys[i]
        k += 1
    lo = k + 1
    for i in range(n - 2, -1, -1):
        while k >= lo and (hx[k - 1] - hx[k - 2]) * (ys[i] - hy[k - 2]) - (hy[k - 1] - hy[k - 2]) * (xs[i] - hx[k - 2]) <= 0.0:
            k -= 1
        hx[k] = xs[i]
        hy[k] = ys[i]
        k += 1
    a = 0.0
    for i in range(k - 1):
        a += hx[i] * hy[i + 1] - hy[i] * hx[i + 1]
    return 0.5 * a


@numba.njit(cache=True)
def placement_hull_area(x, px, py, owner):
    """Hull area of all shape vertices, shape ``c > 0`` shifted by ``x[2c-2:2c]``."""
    n = px.shape[0]
    xs = np.empty(n)
    ys = np.empty(n)
    for i in range(n):
        c = owner[i]
        if c > 0:
            xs[i] = px[i] + x[2 * c - 2]
            ys[i] = py[i] + x[2 * c - 1]
        else:
            xs[i] = px[i]
            ys[i] = py[i]
    return hull_area_kernel(xs, ys)
