"""
tangles.cheb
Chebyshev-type polynomials T_n and S_n for every integer n.

T_n(cos u) = cos(nu) and sin(nu) = sin(u) S_n(cos u). Both are evaluated by the
three-term recurrence, elementwise over numpy arrays or on plain floats, so the
grid evaluation of the tangle polynomials and scalar point checks share one code
path.
"""

from __future__ import annotations

import operator
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from .defaults import CLAMP_TOL
from .errors import DomainError

FloatOrArray = Union[float, np.ndarray]


def _prepare(x: ArrayLike) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.size and np.any(np.abs(arr) - 1.0 > CLAMP_TOL):
        worst = float(np.max(np.abs(arr)))
        raise DomainError("Chebyshev argument outside [-1, 1]", {"max_abs": worst})
    return np.clip(arr, -1.0, 1.0)


def _finish(values: np.ndarray, like: ArrayLike) -> FloatOrArray:
    if np.ndim(like) == 0:
        return float(values)
    return values


def cheb_T(n: int, x: ArrayLike) -> FloatOrArray:
    """Return T_n(x) = cos(n arccos x), with T_{-n} = T_n.

    Args:
        n: Polynomial index of any sign
        x: Scalar or array in [-1, 1]; values within 1e-12 outside are clamped

    Raises:
        DomainError: If some |x| exceeds 1 by more than the clamp tolerance
    """
    m = abs(operator.index(n))
    xs = _prepare(x)
    prev = np.ones_like(xs)
    if m == 0:
        return _finish(prev, x)
    cur = xs.copy()
    for _ in range(1, m):
        prev, cur = cur, 2.0 * xs * cur - prev
    return _finish(cur, x)


def cheb_S(n: int, x: ArrayLike) -> FloatOrArray:
    """Return S_n(x), defined by sin(nu) = sin(u) S_n(cos u), with S_{-n} = -S_n."""
    k = operator.index(n)
    m = abs(k)
    xs = _prepare(x)
    prev = np.zeros_like(xs)
    if m == 0:
        return _finish(prev, x)
    cur = np.ones_like(xs)
    for _ in range(1, m):
        prev, cur = cur, 2.0 * xs * cur - prev
    if k < 0:
        cur = -cur
    return _finish(cur, x)


def cheb_T_over_x(n: int, x: ArrayLike) -> FloatOrArray:
    """Return T_n(x)/x for odd n, exact at x = 0.

    Uses D_1 = 1 and D_{j} = 2 T_{j-1}(x) - D_{j-2}, which follows from dividing
    the T recurrence by x.
    """
    m = abs(operator.index(n))
    if m % 2 == 0:
        raise DomainError("T_n(x)/x is a polynomial only for odd n", {"n": n})
    xs = _prepare(x)
    t_prev = np.ones_like(xs)  # T_0
    t_cur = xs.copy()  # T_1
    quotient = np.ones_like(xs)  # D_1
    for j in range(2, m + 1):
        t_prev, t_cur = t_cur, 2.0 * xs * t_cur - t_prev  # t_cur = T_j
        if j % 2 == 1:
            quotient = 2.0 * t_prev - quotient
    return _finish(quotient, x)


__all__ = ["FloatOrArray", "cheb_S", "cheb_T", "cheb_T_over_x"]
