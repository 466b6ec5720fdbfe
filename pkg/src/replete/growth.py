"""Minkowski growth of archimedean regions and the surface-area slope.

Regions are products over the archimedean places: an ``Interval`` at a real
place, a ``Disc`` or ``Box`` at a complex place (in (re, im) coordinates,
Lebesgue measure).  The grown region is ``E + t(D - D)``; being a product,
its volume factorises place by place.  Interval and box factors are exact,
disc factors are estimated by Monte Carlo on the added shell only.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ToleranceError

DEFAULT_SAMPLES = 10**6
Z99 = 2.5758293035489004  # two-sided 99% normal quantile
DEFAULT_TS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not lo < hi:
            raise ValueError("interval needs lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    dim = 1

    def volume(self):
        return self.hi - self.lo

    def symmetric_difference_body(self, t):
        """t(D - D) for this factor."""
        w = t * (self.hi - self.lo)
        return Interval(-w, w)


@dataclass(frozen=True)
class Box:
    """Axis-parallel rectangle [x0, x1] x [y0, y1] at a complex place."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        vals = [Fraction(getattr(self, k)) for k in ("x0", "x1", "y0", "y1")]
        if not (vals[0] < vals[1] and vals[2] < vals[3]):
            raise ValueError("box needs x0 < x1 and y0 < y1")
        for k, v in zip(("x0", "x1", "y0", "y1"), vals):
            object.__setattr__(self, k, v)

    dim = 2

    def volume(self):
        return (self.x1 - self.x0) * (self.y1 - self.y0)

    def symmetric_difference_body(self, t):
        a, b = t * (self.x1 - self.x0), t * (self.y1 - self.y0)
        return Box(-a, a, -b, b)


@dataclass(frozen=True)
class Disc:
    """Closed disc |z - (cx + i cy)| <= radius at a complex place."""

    radius: Fraction
    cx: Fraction = Fraction(0)
    cy: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("radius", "cx", "cy"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.radius <= 0:
            raise ValueError("disc radius must be positive")

    dim = 2

    def volume(self):
        return math.pi * float(self.radius) ** 2

    def symmetric_difference_body(self, t):
        return Disc(2 * t * self.radius)


@dataclass(frozen=True)
class ArchRegion:
    """Product of one factor per archimedean place."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("at least one place is required")

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    def kinds(self):
        return tuple("real" if isinstance(f, Interval) else "complex" for f in self.factors)

    def is_exact(self):
        return not any(isinstance(f, Disc) for f in self.factors)

    def volume(self):
        v = Fraction(1) if self.is_exact() else 1.0
        for f in self.factors:
            v = v * f.volume()
        return v

    def check_field(self, field):
        want = tuple("real" if p.is_real else "complex" for p in field.places)
        if self.kinds() != want:
            raise ValueError(f"region place types {self.kinds()} do not match the field {want}")
        return self


def unit_ball(field):
    """Archimedean part of the adelic unit ball: [-1, 1] and unit discs."""
    return ArchRegion(tuple(Interval(-1, 1) if p.is_real else Disc(1) for p in field.places))


def unit_cube(field):
    """[0, 1] at real places and [0, 1]^2 at complex places."""
    return ArchRegion(tuple(Interval(0, 1) if p.is_real else Box(0, 1, 0, 1) for p in field.places))


def _exact_sum(e, k):
    if isinstance(e, Interval):
        return Interval(e.lo + k.lo, e.hi + k.hi)
    if isinstance(e, Box) and isinstance(k, Box):
        return Box(e.x0 + k.x0, e.x1 + k.x1, e.y0 + k.y0, e.y1 + k.y1)
    return None


def _bbox(f):
    if isinstance(f, Box):
        return f.x0, f.x1, f.y0, f.y1
    r = f.radius
    return f.cx - r, f.cx + r, f.cy - r, f.cy + r


def _in_sum(e, k, x, y):
    """Membership of sample points in e + k (k centred at the origin)."""
    if isinstance(e, Disc) and isinstance(k, Disc):
        return np.hypot(x - float(e.cx), y - float(e.cy)) <= float(e.radius + k.radius)
    if isinstance(e, Disc):
        # p in disc + box  <=>  dist(p - c, box) <= radius
        dx = np.maximum(np.abs(x - float(e.cx)) - float(k.x1), 0.0)
        dy = np.maximum(np.abs(y - float(e.cy)) - float(k.y1), 0.0)
        return np.hypot(dx, dy) <= float(e.radius)
    # box + disc: points within radius of the box
    dx = np.maximum(np.maximum(float(e.x0) - x, x - float(e.x1)), 0.0)
    dy = np.maximum(np.maximum(float(e.y0) - y, y - float(e.y1)), 0.0)
    return np.hypot(dx, dy) <= float(k.radius)


def _in_factor(e, x, y):
    if isinstance(e, Disc):
        return np.hypot(x - float(e.cx), y - float(e.cy)) <= float(e.radius)
    return (x >= float(e.x0)) & (x <= float(e.x1)) & (y >= float(e.y0)) & (y <= float(e.y1))


def _mc_shell(e, k, samples, rng, chunk=1 << 18):
    """Monte Carlo (area, standard error) of (e + k) minus e."""
    ex0, ex1, ey0, ey1 = (float(v) for v in _bbox(e))
    kx0, kx1, ky0, ky1 = (float(v) for v in _bbox(k))
    x0, x1, y0, y1 = ex0 + kx0, ex1 + kx1, ey0 + ky0, ey1 + ky1
    area = (x1 - x0) * (y1 - y0)
    hits = 0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = rng.uniform(x0, x1, m)
        y = rng.uniform(y0, y1, m)
        hits += int(np.count_nonzero(_in_sum(e, k, x, y) & ~_in_factor(e, x, y)))
        done += m
    p = hits / samples
    return area * p, area * math.sqrt(p * (1 - p) / samples)


@dataclass(frozen=True)
class GrowthEstimate:
    """vol(E + t(D - D)) - vol(E) with a 99% half-width (0 when exact)."""

    t: Fraction
    value: float
    ci: float
    exact: Fraction = None
    samples: int = 0
    seed: int = 0


def minkowski_growth(E, D, t, samples=DEFAULT_SAMPLES, seed=0, tol=None):
    """Volume added by growing E by t(D - D)."""
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    if len(E.factors) != len(D.factors) or E.kinds() != D.kinds():
        raise ValueError("E and D must have the same place types")
    base, grown, var_terms = [], [], []
    exact = True
    for v, (e, d) in enumerate(zip(E.factors, D.factors)):
        k = d.symmetric_difference_body(t)
        s = _exact_sum(e, k)
        if s is not None:
            base.append(e.volume())
            grown.append(s.volume())
            var_terms.append(0.0)
            continue
        exact = False
        rng = np.random.default_rng(np.random.SeedSequence([seed, v, t.numerator, t.denominator]))
        area, se = _mc_shell(e, k, samples, rng)
        a = e.volume()
        base.append(a)
        grown.append(a + area)
        var_terms.append(se)
    if exact:
        value = math.prod(grown) - math.prod(base)
        return GrowthEstimate(t, float(value), 0.0, value, 0, seed)
    grown_f = [float(g) for g in grown]
    value = math.prod(grown_f) - math.prod(float(b) for b in base)
    # delta method on the product of independent factor estimates
    var = 0.0
    for v, se in enumerate(var_terms):
        if se:
            others = math.prod(g for w, g in enumerate(grown_f) if w != v)
            var += (others * se) ** 2
    ci = Z99 * math.sqrt(var)
    if tol is not None and ci > tol:
        raise ToleranceError(f"Monte Carlo half-width {ci:.3g} exceeds tolerance {tol:.3g}")
    return GrowthEstimate(t, value, ci, None, samples, seed)


@dataclass(frozen=True)
class SurfaceEstimate:
    slope: float
    ci: float
    exact: Fraction
    quotients: tuple
    degree: int
    seed: int


def _poly_at_zero_exact(ts, qs, degree):
    """Exact least-squares polynomial fit evaluated at 0 (interpolation when square)."""
    from . import _exact

    rows = [[t**j for j in range(degree + 1)] for t in ts]
    at = _exact.transpose(rows)
    normal = _exact.mat_mul(at, rows)
    rhs = _exact.vec_mat(qs, rows)
    coef = _exact.vec_mat(rhs, _exact.transpose(_exact.inverse(normal)))
    return coef[0]


def _poly_at_zero_weighted(ts, qs, sigmas, degree):
    x = np.array([[float(t) ** j for j in range(degree + 1)] for t in ts])
    w = 1.0 / np.asarray(sigmas) ** 2
    cov = np.linalg.inv(x.T @ (x * w[:, None]))
    coef = cov @ (x.T @ (w * np.asarray(qs)))
    return float(coef[0]), math.sqrt(cov[0, 0])


def surface_area(E, D, ts=DEFAULT_TS, samples=DEFAULT_SAMPLES, seed=0):
    """Slope of t -> vol(E + t(D - D)) at 0+.

    The quotients growth/t are fitted by a polynomial of degree dim - 1
    (capped by the number of points minus one) and evaluated at 0.  For
    convex factors the growth is a Steiner polynomial, so the fit is exact
    up to sampling noise.  The quotient must be nonincreasing as t shrinks.
    """
    ts = sorted((Fraction(t) for t in ts), reverse=True)
    if len(ts) < 2:
        raise ValueError("need at least two values of t")
    growths = [minkowski_growth(E, D, t, samples, seed) for t in ts]
    quotients = tuple((g.t, g.value / float(g.t), g.ci / float(g.t)) for g in growths)
    for (t1, q1, c1), (t2, q2, c2) in zip(quotients, quotients[1:]):
        if q2 - q1 > c1 + c2 + 1e-12 * abs(q1):
            raise ToleranceError(f"growth quotient increases from t={t1} to t={t2}: {q1} -> {q2}")
    degree = min(E.dim - 1, len(ts) - 1)
    if all(g.exact is not None for g in growths):
        exact = _poly_at_zero_exact(ts, [g.exact / g.t for g in growths], degree)
        return SurfaceEstimate(float(exact), 0.0, exact, quotients, degree, seed)
    qs = [q for _, q, _ in quotients]
    sig = [max(c, 1e-300) / Z99 for _, _, c in quotients]
    slope, se = _poly_at_zero_weighted(ts, qs, sig, degree)
    return SurfaceEstimate(slope, Z99 * se, None, quotients, degree, seed)
