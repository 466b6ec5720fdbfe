"""Fractional ideals in Hermite normal form, replete ideals and ideles.

A ``FracIdeal`` is ``(1/denom) * rowspan(hnf)`` in integral-basis
coordinates.  The HNF is canonical, so dataclass equality is ideal equality.

A ``RepleteIdeal`` pairs a fractional ideal with positive archimedean
components.  Components are stored as rationals ``q_v`` times an optional
shared *twist* ``|sigma_v(tau)|`` for a field element ``tau``; this keeps
``mul_principal`` exact even though ``|gamma|_v`` is usually irrational.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import numpy as np

from . import _exact
from .field import FieldElement, NumberField, embed_element


@dataclass(frozen=True)
class FracIdeal:
    field: NumberField
    hnf: tuple
    denom: int = 1

    def __repr__(self):
        rows = ", ".join(str(list(r)) for r in self.hnf)
        suffix = f" / {self.denom}" if self.denom != 1 else ""
        return f"FracIdeal([{rows}]{suffix})"

    def basis_rows(self):
        """Basis as rational coordinate rows."""
        return [[Fraction(x, self.denom) for x in row] for row in self.hnf]

    def basis_elements(self):
        return [self.field.element(row) for row in self.basis_rows()]

    def norm(self):
        d = 1
        for i, row in enumerate(self.hnf):
            d *= row[i]
        return Fraction(d, self.denom ** self.field.degree)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = principal_ideal(self.field, other)
        if not isinstance(other, FracIdeal):
            return NotImplemented
        _check_same(self, other)
        prods = [a * b for a in self.basis_elements() for b in other.basis_elements()]
        return _from_z_span(self.field, [p.coords for p in prods])

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = unit_ideal(self.field)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self):
        """{x : x * self is contained in the order}."""
        vectors = []
        for a in self.basis_elements():
            m = a.multiplication_matrix()
            vectors.extend(_exact.transpose(m))
        return _from_z_span(self.field, _dual_basis(vectors))

    def trace_dual(self):
        """{x : Tr(x * self) is contained in Z}; equals self^-1 * different^-1 for maximal orders."""
        g = self.field.trace_form
        rows = self.basis_rows()
        vectors = [_exact.vec_mat(row, [list(r) for r in g]) for row in rows]
        return _from_z_span(self.field, _dual_basis(vectors))

    def contains(self, alpha):
        """Exact membership test for a field element."""
        target = [c * self.denom for c in alpha.coords]
        n = self.field.degree
        x = [Fraction(0)] * n
        for j in range(n):
            rem = target[j] - sum((x[i] * self.hnf[i][j] for i in range(j)), Fraction(0))
            q = rem / self.hnf[j][j]
            if q.denominator != 1:
                return False
            x[j] = q
        return True

    def is_integral(self):
        return self.denom == 1

    def contains_ideal(self, other):
        return all(self.contains(b) for b in other.basis_elements())

    def float_minkowski_basis(self):
        """Float Minkowski coordinates of the HNF basis, one row per element."""
        h = np.array([[float(Fraction(x, self.denom)) for x in row] for row in self.hnf])
        return h @ self.field.embedding_matrix


def _check_same(a, b):
    if a.field != b.field:
        raise ValueError("ideals of different fields")


def _dual_basis(vectors):
    """Basis of {y : y . w in Z for every w}, for w spanning a full-rank lattice."""
    d = _exact.common_denominator(vectors)
    n = len(vectors[0])
    h = _exact.hnf([[int(x * d) for x in w] for w in vectors], n)
    hinv = _exact.inverse([list(r) for r in h])
    # y . (row_i / d) in Z  <=>  y = d * z H^{-T} for integer z
    return [[d * x for x in row] for row in _exact.transpose(hinv)]


def _from_z_span(field, rows):
    """Canonical FracIdeal for the Z-span of rational coordinate rows."""
    rows = [[Fraction(x) for x in r] for r in rows]
    d = _exact.common_denominator(rows)
    h = _exact.hnf([[int(x * d) for x in r] for r in rows], field.degree)
    g = d
    for row in h:
        for x in row:
            g = gcd(g, x)
    h = tuple(tuple(x // g for x in row) for row in h)
    return FracIdeal(field, h, d // g)


def unit_ideal(field):
    n = field.degree
    return FracIdeal(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)


def ideal_from_generators(field, gens):
    """The O-module generated by ``gens``, in canonical HNF."""
    gens = [g if isinstance(g, FieldElement) else field.element(g) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("at least one nonzero generator is required")
    rows = [(g * w).coords for g in gens for w in field.basis_elements()]
    return _from_z_span(field, rows)


def principal_ideal(field, gamma):
    return ideal_from_generators(field, [gamma])


def ideal_ops(a, b=None, op="mul"):
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "norm":
        return a.norm()
    if op == "equal":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# -- replete ideals -----------------------------------------------------


def _twist_abs(field, twist):
    """Float |sigma_v(twist)| per place."""
    vals = embed_element(field, twist, 60)
    out = []
    for v in vals:
        if isinstance(v, tuple):
            out.append(float(abs(complex(float(v[0].mid), float(v[1].mid)))))
        else:
            out.append(abs(float(v.mid)))
    return out


@dataclass(frozen=True)
class RepleteIdeal:
    """Finite part times archimedean components ``n_v = scales[v] * |sigma_v(twist)|``."""

    finite: FracIdeal
    scales: tuple
    twist: FieldElement = dc_field(default=None)

    def __post_init__(self):
        scales = tuple(Fraction(q) for q in self.scales)
        object.__setattr__(self, "scales", scales)
        if len(scales) != len(self.finite.field.places):
            raise ValueError("one archimedean component per place is required")
        if any(q <= 0 for q in scales):
            raise ValueError("archimedean components must be positive")
        if self.twist is not None and self.twist.is_zero():
            raise ValueError("twist must be nonzero")

    @property
    def field(self):
        return self.finite.field

    def norm(self):
        """Exact replete norm N(a_fin) * prod n_v^{f_v}."""
        total = self.finite.norm()
        for q, place in zip(self.scales, self.field.places):
            total *= q ** place.f_v
        if self.twist is not None:
            total *= abs(self.twist.norm())
        return total

    def archimedean(self):
        """Float values of n_v."""
        vals = [float(q) for q in self.scales]
        if self.twist is not None:
            vals = [q * a for q, a in zip(vals, _twist_abs(self.field, self.twist))]
        return vals

    def inverse(self):
        twist = None if self.twist is None else self.twist.inverse()
        return RepleteIdeal(self.finite.inverse(), tuple(1 / q for q in self.scales), twist)

    def scale(self, t):
        t = Fraction(t)
        if t <= 0:
            raise ValueError("scale factor must be positive")
        return RepleteIdeal(self.finite, tuple(q * t for q in self.scales), self.twist)

    def mul_principal(self, gamma):
        """Multiply by the principal replete ideal (gamma) x (|gamma|_v^{-1}).

        This replete ideal has norm 1 (product formula), and H^0 counts of
        the inverse are unchanged because alpha -> alpha / gamma is a bijection.
        """
        if gamma.is_zero():
            raise ValueError("gamma must be nonzero")
        inv = gamma.inverse()
        twist = inv if self.twist is None else self.twist * inv
        return RepleteIdeal(self.finite * principal_ideal(self.field, gamma), self.scales, twist)


def replete(finite, scales, twist=None):
    return RepleteIdeal(finite, tuple(scales), twist)


def replete_norm(a):
    return a.norm()


def replete_ops(a, op, arg=None):
    if op == "inv":
        return a.inverse()
    if op == "scale":
        return a.scale(arg)
    if op == "mul-principal":
        return a.mul_principal(arg)
    raise ValueError(f"unknown op {op!r}")


# -- ideles ---------------------------------------------------------------


@dataclass(frozen=True)
class IdelePresentation:
    """An idele as a finite edit list against the trivial idele.

    ``finite`` holds ``(q, e)`` pairs: ``q`` a FracIdeal, a field element or
    a rational (standing for its principal ideal) and ``e`` the valuation exponent, so the ideal of
    the finite part is ``prod q^e``.  Archimedean absolute values are
    ``arch[v] * |sigma_v(twist)|``.
    """

    field: NumberField
    finite: tuple = ()
    arch: tuple = None
    twist: FieldElement = None

    def __post_init__(self):
        arch = self.arch
        if arch is None:
            arch = (1,) * len(self.field.places)
        arch = tuple(Fraction(a) for a in arch)
        if len(arch) != len(self.field.places) or any(a <= 0 for a in arch):
            raise ValueError("archimedean entries must be positive, one per place")
        object.__setattr__(self, "arch", arch)
        edits = []
        for q, e in self.finite:
            if isinstance(q, (int, Fraction)):
                q = self.field.rational(q)
            if isinstance(q, FieldElement):
                q = principal_ideal(self.field, q)
            edits.append((q, int(e)))
        object.__setattr__(self, "finite", tuple(edits))

    def ideal(self):
        """The ideal prod q^e recording the finite valuations."""
        result = unit_ideal(self.field)
        for q, e in self.finite:
            result = result * (q ** e)
        return result

    def norm(self):
        """||x||, computed edit by edit (independently of ``ideal``)."""
        total = Fraction(1)
        for q, e in self.finite:
            total *= q.norm() ** (-e)
        for a, place in zip(self.arch, self.field.places):
            total *= a ** place.f_v
        if self.twist is not None:
            total *= abs(self.twist.norm())
        return total

    def archimedean(self):
        vals = [float(a) for a in self.arch]
        if self.twist is not None:
            vals = [a * b for a, b in zip(vals, _twist_abs(self.field, self.twist))]
        return vals

    def mul_principal(self, gamma):
        """The idele gamma * x (gamma embedded diagonally)."""
        twist = gamma if self.twist is None else self.twist * gamma
        return IdelePresentation(self.field, self.finite + ((gamma, 1),), self.arch, twist)


def trivial_idele(field):
    return IdelePresentation(field)


def idele_to_replete(x):
    """a_x = prod p^{-v_p(x)} x (|x_v|)."""
    return RepleteIdeal(x.ideal().inverse(), x.arch, x.twist)


def replete_to_idele(a):
    return IdelePresentation(a.field, ((a.finite, -1),), a.scales, a.twist)
