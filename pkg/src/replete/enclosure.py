"""Interval helpers built on mpmath's ``iv`` context.

Real enclosures are ``iv.mpf`` intervals; complex enclosures are
``(re, im)`` pairs of them (rectangles).  Roots of integer polynomials are
certified with inclusion discs: a disc of radius ``n |f(c)| / |f'(c)|``
around ``c`` always contains a root, and pairwise disjoint discs for all
``n`` approximations therefore contain exactly one root each.
"""

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, mp
from mpmath.libmp import to_rational

from .errors import PrecisionError


@contextmanager
def ivprec(bits):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def to_iv(q):
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / q.denominator


def endpoints(x):
    """Exact rational endpoints of an ``iv.mpf``."""
    lo, hi = x._mpi_
    return Fraction(*map(int, to_rational(lo))), Fraction(*map(int, to_rational(hi)))


def lo(x):
    return mp.make_mpf(x._mpi_[0])


def hi(x):
    return mp.make_mpf(x._mpi_[1])


def width(x):
    lo, hi = endpoints(x)
    return hi - lo


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def abs2(z):
    return z[0] ** 2 + z[1] ** 2


def horner(coeffs, z):
    """Evaluate ``sum coeffs[k] z^k`` on a complex enclosure ``z``."""
    acc = (to_iv(coeffs[-1]), iv.mpf(0))
    for c in reversed(coeffs[:-1]):
        acc = cmul(acc, z)
        acc = (acc[0] + to_iv(c), acc[1])
    return acc


def horner_real(coeffs, x):
    acc = to_iv(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + to_iv(c)
    return acc


class RootDisc:
    """A certified root: centre ``c`` (mpc) and radius ``rad`` (mpf)."""

    __slots__ = ("center", "radius", "real")

    def __init__(self, center, radius, real):
        self.center = center
        self.radius = radius
        self.real = real

    def enclosure(self):
        """Rectangle enclosure at the current ``iv.prec``."""
        rad = iv.mpf([-self.radius, self.radius])
        re = iv.mpf(self.center.real) + rad
        im = iv.mpf(0) if self.real else iv.mpf(self.center.imag) + rad
        return (re, im)


def _polish(coeffs, z, bits, real):
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    tol = mp.mpf(2) ** (-bits)
    for _ in range(200):
        fz = mp.polyval(list(reversed(coeffs)), z)
        dz = mp.polyval(list(reversed(deriv)), z)
        if dz == 0:
            break
        step = fz / dz
        z -= step
        if real:
            z = mp.mpf(mp.re(z))
        if abs(step) <= tol * max(1, abs(z)):
            break
    return z


def certified_roots(coeffs, bits, nreal, seeds=None):
    """Certified root discs of a monic squarefree integer polynomial.

    ``coeffs`` are constant-term first.  ``nreal`` is the exact number of
    real roots (from a Sturm count); the ``nreal`` approximations closest to
    the real axis are snapped onto it.  Returns ``RootDisc`` objects with
    radius below ``2**-bits`` or raises ``PrecisionError``.
    """
    n = len(coeffs) - 1
    wp = bits + 2 * n + 20
    with mp.workprec(wp):
        if seeds is None:
            if n == 1:
                seeds = [mp.mpf(-coeffs[0])]
            else:
                seeds = mp.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=wp)
        seeds = [mp.mpc(z) for z in seeds]
        order = sorted(range(n), key=lambda i: abs(mp.im(seeds[i])))
        is_real = [False] * n
        for i in order[:nreal]:
            is_real[i] = True
        centers = []
        for z, real in zip(seeds, is_real):
            start = mp.mpf(mp.re(z)) if real else z
            c = _polish(coeffs, start, wp - 8, real)
            centers.append(mp.mpc(c))
    discs = []
    with ivprec(wp):
        deriv = [k * c for k, c in enumerate(coeffs)][1:]
        for c, real in zip(centers, is_real):
            z = (iv.mpf(c.real), iv.mpf(0) if real else iv.mpf(c.imag))
            fz = abs2(horner(coeffs, z))
            dz = abs2(horner(deriv, z)) if deriv else iv.mpf(1)
            if not lo(dz) > 0:
                raise PrecisionError("derivative vanishes near a root")
            rad = iv.sqrt(fz / dz) * n
            discs.append(RootDisc(c, hi(rad), real))
        for i in range(n):
            for j in range(i + 1, n):
                ci, cj = discs[i].center, discs[j].center
                gap = iv.sqrt((iv.mpf(ci.real) - iv.mpf(cj.real)) ** 2 + (iv.mpf(ci.imag) - iv.mpf(cj.imag)) ** 2)
                if not lo(gap) > discs[i].radius + discs[j].radius:
                    raise PrecisionError("root discs overlap; raise precision")
    limit = mp.mpf(2) ** (-bits)
    if any(d.radius > limit for d in discs):
        raise PrecisionError("root discs wider than requested")
    return discs
