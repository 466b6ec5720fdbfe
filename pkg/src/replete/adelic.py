"""Self-dual volumes, Gaussian-ideal test functions and Tate's theta identity.

Test functions are ``f = 1_{b^} (x) prod_v g_v`` with ``g_v(x) = exp(-pi l x^2)``
at real places and ``exp(-2 pi l |z|^2)`` at complex places.  Both sides of

    sum_{alpha in K} f(alpha y) = ||y||^{-1} sum_{alpha in K} f^(alpha / y)

reduce to Gaussian sums over ideal lattices: the left over ``b * y_fin^{-1}``,
the right over the trace dual of ``b`` times ``y_fin``.  No finite-place
character is ever evaluated.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import iv
from scipy import integrate

from .enclosure import ivprec, to_iv
from .enumeration import Enumerator, count_bound
from .errors import ConventionError, TruncationError
from .ideals import FracIdeal, IdelePresentation


def vol_B(field, precision=113):
    """Enclosure of vol(B) = 2^r (2 pi)^s / sqrt|disc|."""
    with ivprec(precision):
        return iv.mpf(2) ** field.r * (2 * iv.pi) ** field.s / iv.sqrt(to_iv(field.abs_disc))


def self_dual_volume(field, ideal):
    """Self-dual measure of the closure of ``ideal`` in the finite adeles."""
    return float(1 / ideal.norm()) / math.sqrt(field.abs_disc)


@dataclass(frozen=True)
class CharacterConvention:
    """Pairing conventions at the archimedean places.

    Real places pair via ``exp(2 pi i sign x y)``.  Complex places use the
    measure ``2 dx dy`` and pair via ``exp(2 pi i k Re(z w))`` with ``k = 2``
    for the trace form and ``k = 1`` for the bare real part.
    """

    real_sign: int = 1
    complex_pairing: str = "trace"
    validated: bool = False

    @property
    def _kappa(self):
        if self.complex_pairing == "trace":
            return 2.0
        if self.complex_pairing == "real":
            return 1.0
        raise ValueError(f"unknown complex pairing {self.complex_pairing!r}")

    def real_gaussian(self, rate):
        """(scale, dual rate) of the transform of exp(-pi rate x^2)."""
        rate = float(rate)
        return rate**-0.5, 1.0 / rate

    def complex_gaussian(self, rate):
        """(scale, dual rate) of the transform of exp(-2 pi rate |z|^2)."""
        rate = float(rate)
        k = self._kappa
        return 1.0 / rate, k * k / (4.0 * rate)

    def transform(self, place, rate):
        return self.real_gaussian(rate) if place.is_real else self.complex_gaussian(rate)

    # numerical transforms used to validate the closed forms

    def real_quadrature(self, rate, y):
        lim = 8.0 / math.sqrt(rate)
        w = 2 * math.pi * self.real_sign * y
        re = integrate.quad(lambda x: math.exp(-math.pi * rate * x * x) * math.cos(w * x), -lim, lim,
                            epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        im = integrate.quad(lambda x: math.exp(-math.pi * rate * x * x) * math.sin(w * x), -lim, lim,
                            epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        return complex(re, im)

    def complex_quadrature(self, rate, w):
        lim = 5.0 / math.sqrt(rate)
        k = 2 * math.pi * self._kappa
        u, v = w.real, w.imag

        def integrand(y, x):
            return 2.0 * math.exp(-2 * math.pi * rate * (x * x + y * y)) * math.cos(k * (x * u - y * v))

        # the sine part vanishes identically: the integrand is odd under z -> -z
        return integrate.dblquad(integrand, -lim, lim, -lim, lim, epsabs=1e-13, epsrel=1e-12)[0]


def fourier_tables(convention=None, real_rates=(1, 4), complex_rates=(1, Fraction(1, 2)), tol=1e-8):
    """Validate a convention's closed-form transforms against quadrature.

    Five sample points per rate; returns the convention marked validated or
    raises ``ConventionError``.
    """
    conv = convention or CharacterConvention()
    ys = (0.0, 0.25, 0.5, 0.9, 1.4)
    for rate in real_rates:
        scale, dual = conv.real_gaussian(rate)
        for y in ys:
            got = conv.real_quadrature(float(rate), y)
            want = scale * math.exp(-math.pi * dual * y * y)
            if abs(got - want) > tol:
                raise ConventionError(f"real place, rate {rate}, y={y}: {got} vs {want}")
    ws = (0j, 0.3 + 0.1j, 0.5 - 0.4j, 1.0 + 0.2j, 0.7 + 0.7j)
    for rate in complex_rates:
        scale, dual = conv.complex_gaussian(rate)
        for w in ws:
            got = conv.complex_quadrature(float(rate), w)
            want = scale * math.exp(-2 * math.pi * dual * abs(w) ** 2)
            if abs(got - want) > tol:
                raise ConventionError(f"complex place, rate {rate}, w={w}: {got} vs {want}")
    return CharacterConvention(conv.real_sign, conv.complex_pairing, validated=True)


@lru_cache(maxsize=None)
def default_convention():
    return fourier_tables()


@dataclass(frozen=True)
class SchwartzTestFunction:
    """Indicator of ``ideal`` at the finite places times Gaussians at infinity."""

    ideal: FracIdeal
    rates: tuple

    def __post_init__(self):
        rates = tuple(Fraction(x) if not isinstance(x, float) else x for x in self.rates)
        if len(rates) != len(self.ideal.field.places):
            raise ValueError("one Gaussian rate per archimedean place")
        if any(x <= 0 for x in rates):
            raise ValueError("Gaussian rates must be positive")
        object.__setattr__(self, "rates", rates)

    @property
    def field(self):
        return self.ideal.field


@dataclass(frozen=True)
class ThetaSum:
    value: float
    tail: float
    points: int


@dataclass(frozen=True)
class TateReport:
    lhs: float
    rhs: float
    diff: float
    tail: float
    tol: float
    passed: bool


def _tail_bound(c, radius, mu_min):
    """Bound on sum over |u| > radius of exp(-pi mu_min |u|^2)."""

    def log_term(k):
        return math.log(count_bound(c, radius + k + 1)) - math.pi * mu_min * (radius + k) ** 2

    total = 0.0
    k = 0
    prev = log_term(0)
    while True:
        nxt = log_term(k + 1)
        total += math.exp(prev)
        ratio = math.exp(nxt - prev)
        if ratio <= 0.5:
            return total + math.exp(prev) * ratio / (1 - ratio)
        k += 1
        prev = nxt
        if k > 10**6:
            return math.inf


def gaussian_lattice_sum(ideal, scales, mu, radius, budget=10**8):
    """Sum of exp(-pi sum_j mu_j u_j^2) over u = scaled Minkowski images of ``ideal``.

    ``scales`` and ``mu`` are per place; points with |u| <= radius are summed
    exactly and the rest bounded.
    """
    field = ideal.field
    cols = field.coordinate_places()
    col_scale = np.array([scales[p] for p in cols], dtype=float)
    col_mu = np.array([mu[p] for p in cols], dtype=float)
    basis = ideal.float_minkowski_basis() * col_scale
    en = Enumerator(basis, radius * radius * (1 + 1e-12), budget)
    terms = []
    count = 0
    for x in en.batches():
        u = x @ basis
        terms.append(np.exp(-math.pi * (u * u) @ col_mu))
        count += len(x)
    value = math.fsum(np.concatenate(terms)) if terms else 0.0
    tail = _tail_bound(en.c, radius, float(col_mu.min()))
    return ThetaSum(value, tail, count)


def _check_tol(s, tol):
    if tol is not None and s.tail >= tol:
        raise TruncationError(f"tail bound {s.tail:.3g} not below tolerance {tol:.3g}")
    return s


def theta_lhs(field, f, y, trunc_radius=10.0, tol=None):
    """sum_{alpha in K} f(alpha y) with a rigorous truncation bound."""
    if trunc_radius <= 0:
        raise ValueError("trunc_radius must be positive")
    lattice = f.ideal * y.ideal().inverse()
    scales = y.archimedean()
    mu = [float(r) * p.f_v for r, p in zip(f.rates, field.places)]
    return _check_tol(gaussian_lattice_sum(lattice, scales, mu, trunc_radius), tol)


def theta_rhs(field, f, y, trunc_radius=10.0, tol=None, convention=None):
    """||y||^{-1} sum_{alpha in K} f^(alpha / y) via the closed-form transform."""
    if trunc_radius <= 0:
        raise ValueError("trunc_radius must be positive")
    conv = convention or default_convention()
    lattice = f.ideal.trace_dual() * y.ideal()
    scales = [1.0 / a for a in y.archimedean()]
    prefactor = self_dual_volume(field, f.ideal) / float(y.norm())
    mu = []
    for r, p in zip(f.rates, field.places):
        scale, dual = conv.transform(p, r)
        prefactor *= scale
        mu.append(dual * p.f_v)
    s = gaussian_lattice_sum(lattice, scales, mu, trunc_radius)
    s = ThetaSum(prefactor * s.value, prefactor * s.tail, s.points)
    return _check_tol(s, tol)


def tate_check(field, f, y, trunc_radius=10.0, tol=1e-9, convention=None):
    lhs = theta_lhs(field, f, y, trunc_radius)
    rhs = theta_rhs(field, f, y, trunc_radius, convention=convention)
    tail = lhs.tail + rhs.tail
    if not tol > tail:
        raise TruncationError(f"combined tail bound {tail:.3g} is not below tol {tol:.3g}")
    diff = abs(lhs.value - rhs.value)
    return TateReport(lhs.value, rhs.value, diff, tail, tol, diff <= tol)


def gaussian_test_function(ideal, rates):
    if not isinstance(rates, (list, tuple)):
        rates = (rates,) * len(ideal.field.places)
    return SchwartzTestFunction(ideal, tuple(rates))


def archimedean_idele(field, values, twist=None):
    """Idele with trivial finite part and the given archimedean absolute values."""
    return IdelePresentation(field, (), tuple(values), twist)
