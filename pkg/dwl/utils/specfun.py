"""
Hermite and Laguerre functions evaluated through their three-term recurrences.

All functions accept scalars or numpy arrays for the continuous argument and
broadcast over it. Orders are plain integers.
"""
import numpy as np

from utils.errors import ArgumentError


def _check_order(name, n, lowest=0):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < lowest:
        raise ArgumentError(f"{name}: order must be an integer >= {lowest}, got {n!r}")


def hermite_poly(n: int, s):
    """
    Physicists' Hermite polynomial H_n(s), from H_{n+1} = 2s H_n - 2n H_{n-1}.
    """
    _check_order('n', n)
    s = np.asarray(s, dtype=float)

    previous = np.zeros_like(s)
    current = np.ones_like(s)
    for k in range(n):
        previous, current = current, 2.0 * s * current - 2.0 * k * previous
    return current


def hermite_fn(n: int, s, eB: float):
    """
    Oscillator eigenfunction F_n(s) = (eB)^{1/4} (2^n n! sqrt(pi))^{-1/2} e^{-s^2/2} H_n(s).

    NOTE:
        - n = -1 gives the zero function.
        - The normalized form F_n / (eB)^{1/4} is stepped directly, so no factorial
          is ever formed:
              sqrt(2(k+1)) F_{k+1} = 2s F_k - sqrt(2k) F_{k-1}
    """
    _check_order('n', n, lowest=-1)
    if not eB > 0:
        raise ArgumentError(f"eB: magnetic coupling must be positive, got {eB!r}")

    s = np.asarray(s, dtype=float)
    if n == -1:
        return np.zeros_like(s)

    previous = np.zeros_like(s)
    current = np.pi ** -0.25 * np.exp(-0.5 * s * s)
    for k in range(n):
        following = (2.0 * s * current - np.sqrt(2.0 * k) * previous) / np.sqrt(2.0 * (k + 1))
        previous, current = current, following

    return eB ** 0.25 * current


def _laguerre_sequence(n, t):
    """
    L_n(t), L_{n-1}(t) and the partial sum L_0 + ... + L_{n-1}.
    """
    previous = np.zeros_like(t)
    current = np.ones_like(t)
    partial = np.zeros_like(t)
    for k in range(n):
        partial = partial + current
        following = ((2 * k + 1 - t) * current - k * previous) / (k + 1)
        previous, current = current, following
    return current, previous, partial


def laguerre(n: int, t):
    """
    Laguerre polynomial L_n(t), from (k+1) L_{k+1} = (2k+1-t) L_k - k L_{k-1}.
    """
    _check_order('n', n)
    t = np.asarray(t, dtype=float)
    current, _, _ = _laguerre_sequence(n, t)
    return current


def laguerre_deriv(n: int, t):
    """
    dL_n/dt from t L_n'(t) = n (L_n(t) - L_{n-1}(t)).

    Close to t = 0 that quotient cancels badly, so there the equivalent sum
    L_n'(t) = -(L_0 + ... + L_{n-1}) is used; it gives L_n'(0) = -n.
    """
    _check_order('n', n)
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.zeros_like(t)

    current, previous, partial = _laguerre_sequence(n, t)
    small = np.abs(t) < 1.0
    safe_t = np.where(small, 1.0, t)
    return np.where(small, -partial, n * (current - previous) / safe_t)
