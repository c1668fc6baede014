"""Pure Python / numpy implementations of the numerical kernels.

Signatures and results match the compiled ``_ckernels`` module; ``_accel``
picks one at import time.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

BACKEND = "python"

# Periods are processed in chunks to bound the (chunk, n, 4) design tensor.
_CHUNK = 64


def local_extrema(close, w):
    """Indices of windowed strict extrema, as ``(maxima, minima)``.

    Index ``k`` (with ``w <= k < n - w``) is a maximum when ``close[k]`` is
    strictly above every earlier value in ``close[k-w:k+w+1]`` and not below
    any later one, so the first of several equal highs wins. Minima mirror it.
    """
    x = np.ascontiguousarray(close, dtype=np.float64)
    n = x.shape[0]
    if n < 2 * w + 1:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    win = sliding_window_view(x, 2 * w + 1)
    centre = x[w:n - w, None]
    before, after = win[:, :w], win[:, w + 1:]
    is_max = np.all(centre > before, axis=1) & np.all(centre >= after, axis=1)
    is_min = np.all(centre < before, axis=1) & np.all(centre <= after, axis=1)
    return (np.flatnonzero(is_max).astype(np.int64) + w,
            np.flatnonzero(is_min).astype(np.int64) + w)


def scan_line_states(state, confirm):
    """Crossing/test state machine over per-day side codes.

    ``state[k]`` is +1 (above the tolerance tube), -1 (below) or 0 (inside).
    Returns ``(ordinals, kinds)`` with kind +1 = cross up, -1 = cross down,
    0 = test. The reference side is set by the first day outside the tube.
    A move to the opposite side counts as a cross only after ``confirm``
    consecutive days there; the event sits on the first day of that run. An
    excursion that comes back to the reference side is one test, dated at
    its first day.
    """
    s = np.asarray(state, dtype=np.int8)
    n = s.shape[0]
    ords, kinds = [], []
    side = 0
    k = 0
    while k < n:
        v = s[k]
        if side == 0:
            if v != 0:
                side = int(v)
            k += 1
            continue
        if v == side:
            k += 1
            continue
        start = k
        j = k
        crossed = False
        while j < n and s[j] != side:
            if s[j] == -side:
                r = j
                while r < n and s[r] == -side:
                    r += 1
                if r - j >= confirm:
                    ords.append(j)
                    kinds.append(-side)
                    side = -side
                    k = r
                    crossed = True
                    break
                j = r
            else:
                j += 1
        if crossed:
            continue
        if j < n:
            ords.append(start)
            kinds.append(0)
        k = j
    return np.asarray(ords, dtype=np.int64), np.asarray(kinds, dtype=np.int8)


def sinusoid_grid(tau, y, periods):
    """Residual sum of squares of ``b0 + b1*tau + a*sin + c*cos`` per period.

    ``tau`` holds the raw day offsets, used as-is for the sinusoid phases; the
    trend column is ``tau`` mapped onto [-1, 1]. ``y`` should have its mean
    removed to limit cancellation in ``y.y - beta.X'y``. Returns
    ``(sse, coef)`` where ``coef[i] = (b0, b1, a, c)`` refers to the mapped
    trend column. Singular systems get ``sse = inf``.
    """
    tau = np.ascontiguousarray(tau, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    periods = np.ascontiguousarray(periods, dtype=np.float64)
    n = tau.shape[0]
    m = periods.shape[0]
    tc, half = _trend_column(tau)
    yy = float(y @ y)
    sse = np.full(m, np.inf)
    coef = np.zeros((m, 4))
    ones = np.ones(n)
    for lo in range(0, m, _CHUNK):
        p = periods[lo:lo + _CHUNK]
        arg = (2.0 * np.pi / p)[:, None] * tau[None, :]
        X = np.empty((p.shape[0], n, 4))
        X[:, :, 0] = ones
        X[:, :, 1] = tc
        X[:, :, 2] = np.sin(arg)
        X[:, :, 3] = np.cos(arg)
        A = np.einsum("pni,pnj->pij", X, X)
        b = np.einsum("pni,n->pi", X, y)
        for i in range(p.shape[0]):
            beta = _solve4(A[i], b[i])
            if beta is None:
                continue
            coef[lo + i] = beta
            sse[lo + i] = max(yy - float(beta @ b[i]), 0.0)
    return sse, coef


def _trend_column(tau):
    centre = 0.5 * (tau[0] + tau[-1])
    half = 0.5 * (tau[-1] - tau[0])
    if half <= 0:
        half = 1.0
    return (tau - centre) / half, half


def _solve4(A, b):
    """Gaussian elimination with partial pivoting, mirroring the C kernel."""
    M = np.array(A, dtype=np.float64)
    r = np.array(b, dtype=np.float64)
    scale = max(abs(M[i, i]) for i in range(4)) or 1.0
    for c in range(4):
        piv = c + int(np.argmax(np.abs(M[c:, c])))
        if abs(M[piv, c]) <= 1e-13 * scale:
            return None
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            r[[c, piv]] = r[[piv, c]]
        for i in range(c + 1, 4):
            f = M[i, c] / M[c, c]
            M[i, c:] -= f * M[c, c:]
            r[i] -= f * r[c]
    x = np.zeros(4)
    for i in range(3, -1, -1):
        x[i] = (r[i] - M[i, i + 1:] @ x[i + 1:]) / M[i, i]
    return x
