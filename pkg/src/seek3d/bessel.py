"""Bessel functions of the first kind, J0 and J1, implemented in-repo.

The averaged dynamics only ever need arguments up to 2*sqrt(2)*a (about 8 for
the perturbation amplitudes of interest), where the defining power series in
double precision is accurate to ~1e-13.  For larger arguments up to 50 we fall
back on the integral representation J_n(x) = (1/pi) * int_0^pi cos(n*t –
x*sin(t)) dt, evaluated with a periodic trapezoid rule (spectrally accurate).
"""

from math import cos, pi, sin

_SERIES_CUTOFF = 8.0
_MAX_ARG = 50.0
_SERIES_TERMS = 40
_QUAD_NODES = 256


def _series(x: float, n: int) -> float:
    # J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
    half = 0.5 * x
    term = half**n
    for k in range(1, n + 1):
        term /= k
    total = term
    q = half * half
    for k in range(1, _SERIES_TERMS):
        term *= -q / (k * (k + n))
        total += term
    return total


def _integral(x: float, n: int) -> float:
    acc = 0.0
    for i in range(_QUAD_NODES):
        t = (i + 0.5) * pi / _QUAD_NODES
        acc += cos(n * t - x * sin(t))
    return acc / _QUAD_NODES


def bessel_j0(x: float) -> float:
    """J0(x) for |x| <= 50, absolute error below 1e-12."""
    x = abs(x)
    if x > _MAX_ARG:
        raise ValueError(f"bessel_j0: |x| = {x} outside supported range [0, {_MAX_ARG}]")
    if x <= _SERIES_CUTOFF:
        return _series(x, 0)
    return _integral(x, 0)


def bessel_j1(x: float) -> float:
    """J1(x) for |x| <= 50, absolute error below 1e-12. Odd in x."""
    sign = -1.0 if x < 0 else 1.0
    x = abs(x)
    if x > _MAX_ARG:
        raise ValueError(f"bessel_j1: |x| = {x} outside supported range [0, {_MAX_ARG}]")
    if x <= _SERIES_CUTOFF:
        return sign * _series(x, 1)
    return sign * _integral(x, 1)
