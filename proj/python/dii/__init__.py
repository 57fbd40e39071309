"""Ikeda lifts, Siegel series and critical L-values (bindings to the C++ core)."""

from fractions import Fraction

from . import _core
from ._core import DiiError, Lift


def _frac(s):
    return Fraction(s)


def _elem(v):
    return [Fraction(c) for c in v]


def xi_tilde(m):
    return _frac(_core.xi_tilde(m))


def bernoulli(m):
    return _frac(_core.bernoulli(m))


def h_poly(n, p):
    return [_frac(c) for c in _core.h_poly(n, p)]


def eigenforms(weight, prec=0):
    out = []
    for f in _core.eigenforms(weight, prec):
        f = dict(f)
        f["minpoly"] = [_frac(c) for c in f["minpoly"]]
        f["coefficients"] = [_elem(c) for c in f["coefficients"]]
        out.append(f)
    return out


def siegel_series(twice, p):
    d = dict(_core.siegel_series(twice, p))
    d["coeffs"] = [int(c) for c in d["coeffs"]]
    return d


def critical_value_norms(weight, l, D=1):
    return [_frac(x) for x in _core.critical_value_norms(weight, l, D)]


__all__ = [
    "DiiError",
    "Lift",
    "bernoulli",
    "critical_value_norms",
    "eigenforms",
    "h_poly",
    "siegel_series",
    "xi_tilde",
]
