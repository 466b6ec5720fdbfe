"""Minkowski lattices of ideals and exact counting of H^0.

H^0(a) is the set of alpha in a_fin with |alpha|_v <= n_v^{-1} at every
archimedean place (ordinary modulus at complex places, boundary included).
Candidates come from floating Fincke-Pohst; membership is then decided
exactly, falling back to algebraic certificates on ties.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv
from sympy import Rational

from .enclosure import endpoints, ivprec, to_iv
from .enumeration import DEFAULT_NODE_BUDGET, Enumerator
from .errors import CapExceeded, PrecisionError
from .field import abs_squared_charpoly, embed_element
from .ideals import FracIdeal, RepleteIdeal, _twist_abs

# relative band in which the float filter defers to exact arithmetic
_FLOAT_BAND = 1e-9


@dataclass(frozen=True)
class MinkowskiLattice:
    """Interval basis of an ideal under the Minkowski embedding."""

    ideal: FracIdeal
    basis: tuple
    precision: int

    @property
    def field(self):
        return self.ideal.field

    def covolume_squared(self):
        """Exact 4^{-s} |disc| N(a)^2."""
        f = self.field
        return Fraction(f.abs_disc, 4**f.s) * self.ideal.norm() ** 2

    def determinant(self):
        """Interval enclosure of det(basis)."""
        with ivprec(self.precision + 32):
            return _iv_det([list(r) for r in self.basis])

    def check_covolume(self):
        """True when |det| and the exact covolume have overlapping enclosures."""
        with ivprec(self.precision + 32):
            d = abs(self.determinant())
            exact = iv.sqrt(to_iv(self.covolume_squared()))
            lo_d, hi_d = endpoints(d)
            lo_e, hi_e = endpoints(exact)
            return lo_d <= hi_e and lo_e <= hi_d


def _iv_det(m):
    n = len(m)
    det = iv.mpf(1)
    for j in range(n):
        piv = max(range(j, n), key=lambda i: abs(float(m[i][j].mid)))
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = -det
        p = m[j][j]
        det = det * p
        for i in range(j + 1, n):
            f = m[i][j] / p
            m[i] = [a - f * b for a, b in zip(m[i], m[j])]
    return det


def minkowski_basis(field, ideal, precision=64):
    rows = []
    for b in ideal.basis_elements():
        vals = embed_element(field, b, precision)
        row = []
        for v in vals:
            row.extend(v if isinstance(v, tuple) else (v,))
        rows.append(tuple(row))
    lat = MinkowskiLattice(ideal, tuple(rows), precision)
    if not lat.check_covolume():
        raise PrecisionError("Minkowski covolume check failed")
    return lat


@dataclass(frozen=True)
class H0Region:
    """{alpha : |sigma_v(alpha * twist)| <= bounds[v] for all v}.

    Without a twist this is the plain box |alpha|_v <= b_v.
    """

    bounds: tuple
    twist: object = None

    def __post_init__(self):
        b = tuple(Fraction(x) for x in self.bounds)
        if any(x <= 0 for x in b):
            raise ValueError("bounds must be positive")
        object.__setattr__(self, "bounds", b)

    @classmethod
    def for_ideal(cls, a):
        """Region defining H^0(a): |alpha|_v <= n_v^{-1}."""
        twist = None if a.twist is None else a.twist
        return cls(tuple(1 / q for q in a.scales), twist)

    def float_bounds(self, field):
        b = [float(x) for x in self.bounds]
        if self.twist is not None:
            b = [x / t for x, t in zip(b, _twist_abs(field, self.twist))]
        return b


def _abs2(values):
    out = []
    for v in values:
        out.append(v[0] ** 2 + v[1] ** 2 if isinstance(v, tuple) else v**2)
    return out


def _is_tie(field, beta, place, bound):
    """Exact test of |sigma_v(beta)| == bound."""
    if place.is_real:
        return beta == bound or beta == -bound
    q = abs_squared_charpoly(beta)
    b2 = bound**2
    if q.eval(Rational(b2.numerator, b2.denominator)) != 0:
        return False
    sq = q.sqf_part()
    prec = 128
    while True:
        val = _abs2(embed_element(field, beta, prec))[place.index]
        lo, hi = endpoints(val)
        if not (lo <= b2 <= hi):
            return False
        if sq.count_roots(Rational(lo.numerator, lo.denominator), Rational(hi.numerator, hi.denominator)) == 1:
            return True
        prec *= 2
        if prec > field.precision_cap:
            raise PrecisionError("could not isolate |sigma_v|^2")


def exact_membership(alpha, region):
    """Decide alpha in region exactly; boundary points are members."""
    field = alpha.field
    beta = alpha if region.twist is None else alpha * region.twist
    pending = set(range(len(field.places)))
    checked_ties = set()
    prec = 64
    while pending:
        vals = _abs2(embed_element(field, beta, prec))
        with ivprec(prec + 32):
            for v in sorted(pending):
                b2 = to_iv(region.bounds[v] ** 2)
                cmp = vals[v] <= b2
                if cmp is True:
                    pending.discard(v)
                elif cmp is False:
                    return False
        if pending and prec >= 128:
            for v in sorted(pending - checked_ties):
                checked_ties.add(v)
                if _is_tie(field, beta, field.places[v], region.bounds[v]):
                    pending.discard(v)
        prec *= 2
        if pending and prec > field.precision_cap:
            raise PrecisionError("membership undecided at precision cap")
    return True


class _H0Scan:
    """Shared candidate generation for counting and listing."""

    def __init__(self, field, region, finite, budget):
        self.field = field
        self.region = region
        self.finite = finite
        self.budget = budget
        self.mink = finite.float_minkowski_basis()
        self.bounds = np.array(region.float_bounds(field))
        cols = field.coordinate_places()
        self.cols = np.array(cols)
        scale = 1.0 / self.bounds[self.cols]
        nplaces = len(field.places)
        radius2 = nplaces * (1 + 1e-7) + 1e-9
        self.enum = Enumerator(self.mink * scale, radius2, budget)
        self.h = [[Fraction(x, finite.denom) for x in row] for row in finite.hnf]

    def classify(self, x):
        """Return (inside_mask, uncertain_mask) for ideal-basis coefficients ``x``."""
        u = x @ self.mink
        mag = np.abs(x) @ np.abs(self.mink)
        inside = np.ones(len(x), dtype=bool)
        unsure = np.zeros(len(x), dtype=bool)
        col = 0
        for place in self.field.places:
            b = self.bounds[place.index]
            if place.is_real:
                a = np.abs(u[:, col])
                err = _FLOAT_BAND * (1 + mag[:, col] + b)
                col += 1
            else:
                a = np.hypot(u[:, col], u[:, col + 1])
                err = _FLOAT_BAND * (1 + mag[:, col] + mag[:, col + 1] + b)
                col += 2
            out = a > b + err
            near = np.abs(a - b) <= err
            inside &= ~out
            unsure |= near & ~out
        unsure &= inside
        return inside & ~unsure, unsure

    def element(self, xrow):
        n = self.field.degree
        coords = [sum((int(xrow[i]) * self.h[i][k] for i in range(n)), Fraction(0)) for k in range(n)]
        return self.field.element(coords)

    def batches(self):
        for x in self.enum.batches():
            sure, unsure = self.classify(x)
            extra = [i for i in np.flatnonzero(unsure) if exact_membership(self.element(x[i]), self.region)]
            if extra:
                sure[extra] = True
            yield x[sure]


def _scan(field, a, budget):
    if not isinstance(a, RepleteIdeal):
        raise TypeError("count_H0 needs a RepleteIdeal (all archimedean bounds present)")
    return _H0Scan(field, H0Region.for_ideal(a), a.finite, budget)


def count_H0(field, a, budget=DEFAULT_NODE_BUDGET):
    """|H^0(a)| for a replete ideal ``a`` (pass ``a.inverse()`` for Lang's count)."""
    scan = _scan(field, a, budget)
    return int(sum(len(x) for x in scan.batches()))


def enumerate_H0(field, a, cap=10**6, budget=DEFAULT_NODE_BUDGET):
    """Elements of H^0(a), sorted lexicographically by exact coordinates."""
    scan = _scan(field, a, budget)
    out = []
    for x in scan.batches():
        if len(out) + len(x) > cap:
            raise CapExceeded(f"more than {cap} elements")
        out.extend(scan.element(row) for row in x)
    out.sort(key=lambda e: e.coords)
    return out


def count_region(field, finite, region, budget=DEFAULT_NODE_BUDGET):
    """Count alpha in ``finite`` inside an explicit H0Region."""
    scan = _H0Scan(field, region, finite, budget)
    return int(sum(len(x) for x in scan.batches()))
