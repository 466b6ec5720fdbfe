"""Number fields, exact elements and archimedean embeddings.

A field is presented by a monic integer polynomial ``f`` (constant term
first) and an integral basis ``omega_i = sum_j B[i][j] theta^j``.  Elements
carry exact rational coordinates over that basis; multiplication goes
through precomputed structure constants.
"""

import json
import warnings
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import Matrix, Poly, symbols

from . import _exact
from .enclosure import certified_roots, horner, ivprec, width
from .errors import FieldConstructionError, NotMonogenicError, PrecisionError

DEFAULT_PRECISION_CAP = 4096

_X = symbols("x")


class Place:
    """An archimedean place: a real root or an upper-half-plane complex root."""

    __slots__ = ("index", "kind", "root_index", "approx")

    def __init__(self, index, kind, root_index, approx):
        self.index = index
        self.kind = kind
        self.root_index = root_index
        self.approx = approx

    @property
    def f_v(self):
        return 1 if self.kind == "real" else 2

    @property
    def is_real(self):
        return self.kind == "real"

    def __repr__(self):
        return f"Place({self.index}, {self.kind}, root~{self.approx:.6g})"


class NumberField:
    """A number field with a chosen order basis.

    Treat instances as immutable; the only mutable state is a cache of
    certified root discs keyed by precision.
    """

    def __init__(self, poly, basis=None, *, precision_cap=DEFAULT_PRECISION_CAP, name=None):
        poly = tuple(int(c) for c in poly)
        if len(poly) < 2:
            raise FieldConstructionError("defining polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise FieldConstructionError("defining polynomial must be monic")
        n = len(poly) - 1
        self.poly = poly
        self.degree = n
        self.name = name
        self.precision_cap = precision_cap

        sym = Poly(list(reversed(poly)), _X)
        if n <= 4:
            if not sym.is_irreducible:
                raise FieldConstructionError(f"{sym.as_expr()} is reducible over Q")
            self.irreducibility_asserted = False
        else:
            warnings.warn("irreducibility of degree > 4 polynomials is not checked", stacklevel=2)
            self.irreducibility_asserted = True

        if basis is None:
            basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            supplied = False
        else:
            basis = _exact.frac_matrix(basis)
            supplied = True
            if len(basis) != n or any(len(r) != n for r in basis):
                raise FieldConstructionError("basis must be n x n")
            if _exact.det(basis) == 0:
                raise FieldConstructionError("basis change has zero determinant")
        self.basis = tuple(tuple(r) for r in basis)
        self._basis_inv = _exact.inverse(basis)
        self.monogenic = all(basis[i][j] == int(i == j) for i in range(n) for j in range(n))

        self._structure = self._structure_constants()
        if supplied:
            if any(c.denominator != 1 for block in self._structure for row in block for c in row):
                raise FieldConstructionError("basis is not closed under multiplication")
            one = self._from_power([Fraction(1)] + [Fraction(0)] * (n - 1))
            if any(c.denominator != 1 for c in one):
                raise FieldConstructionError("basis span does not contain 1")

        self.trace_form = tuple(
            tuple(sum((self._structure[i][j][k] * self._traces[k] for k in range(n)), Fraction(0)) for j in range(n))
            for i in range(n)
        )
        disc = _exact.det(self.trace_form)
        if disc.denominator != 1:
            raise FieldConstructionError("trace form is not integral")
        self.discriminant = int(disc)

        nreal = int(sym.count_roots())
        self.r = nreal
        self.s = (n - nreal) // 2
        self._root_cache = {}
        self.places = self._build_places()
        if (self.discriminant < 0) != (self.s % 2 == 1):
            raise FieldConstructionError("discriminant sign disagrees with signature")

    # -- construction helpers -------------------------------------------

    def _power_mul(self, a, b):
        """Multiply power-basis coefficient lists modulo f."""
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n):
                    prod[k - n + j] -= c * self.poly[j]
        return prod[:n]

    def _from_power(self, p):
        return _exact.vec_mat(p, self._basis_inv)

    def _to_power(self, c):
        return _exact.vec_mat(c, [list(r) for r in self.basis])

    def _structure_constants(self):
        n = self.degree
        rows = [list(r) for r in self.basis]
        return tuple(
            tuple(tuple(self._from_power(self._power_mul(rows[i], rows[j]))) for j in range(n)) for i in range(n)
        )

    @cached_property
    def _power_traces(self):
        """Tr(theta^k) for k < 2n-1 via Newton's identities."""
        n = self.degree
        a = self.poly
        p = [Fraction(n)]
        for k in range(1, 2 * n - 1):
            total = Fraction(0)
            for i in range(1, min(k, n) + 1):
                coef = a[n - i]
                if k - i == 0:
                    total += coef * k
                else:
                    total += coef * p[k - i]
            p.append(-total)
        return p

    @cached_property
    def _traces(self):
        """Tr(omega_k) for each basis element."""
        pt = self._power_traces
        return [sum((c * pt[j] for j, c in enumerate(row)), Fraction(0)) for row in self.basis]

    def _build_places(self):
        discs = self.root_discs(64)
        real = sorted((i for i, d in enumerate(discs) if d.real), key=lambda i: discs[i].center.real)
        cplx = sorted(
            (i for i, d in enumerate(discs) if not d.real and discs[i].center.imag > 0),
            key=lambda i: (discs[i].center.real, discs[i].center.imag),
        )
        places = []
        for i in real:
            places.append(Place(len(places), "real", i, complex(discs[i].center)))
        for i in cplx:
            places.append(Place(len(places), "complex", i, complex(discs[i].center)))
        return tuple(places)

    # -- identity --------------------------------------------------------

    @property
    def key(self):
        return (self.poly, self.basis)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __reduce__(self):
        return (_rebuild_field, (self.poly, self.basis, self.precision_cap, self.name))

    def __repr__(self):
        label = self.name or f"Q[x]/({Poly(list(reversed(self.poly)), _X).as_expr()})"
        return f"NumberField({label}, n={self.degree}, r={self.r}, s={self.s}, disc={self.discriminant})"

    # -- elements --------------------------------------------------------

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def from_power_basis(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs] + [Fraction(0)] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(self._from_power(coeffs)))

    def rational(self, q):
        return self.from_power_basis([Fraction(q)])

    @cached_property
    def one(self):
        return self.rational(1)

    @cached_property
    def zero(self):
        return FieldElement(self, (Fraction(0),) * self.degree)

    @cached_property
    def theta(self):
        """The root of the defining polynomial as a field element."""
        if self.degree == 1:
            return self.rational(-self.poly[0])
        return self.from_power_basis([0, 1])

    def basis_elements(self):
        n = self.degree
        return [FieldElement(self, tuple(Fraction(int(i == j)) for j in range(n))) for i in range(n)]

    # -- archimedean data ------------------------------------------------

    def root_discs(self, bits):
        """Certified root discs, cached at power-of-two precisions."""
        level = 64
        while level < bits:
            level *= 2
        if level > self.precision_cap:
            raise PrecisionError(f"requested {bits} bits exceeds cap {self.precision_cap}")
        if level not in self._root_cache:
            seeds = None
            lower = [b for b in self._root_cache if b < level]
            if lower:
                seeds = [d.center for d in self._root_cache[max(lower)]]
            self._root_cache[level] = certified_roots(self.poly, level, self.r, seeds=seeds)
        return self._root_cache[level]

    @cached_property
    def embedding_matrix(self):
        """Float Minkowski coordinates of the basis: row i is omega_i.

        Columns: one per real place, then (re, im) per complex place.
        """
        rows = []
        for w in self.basis_elements():
            rows.append(minkowski_floats(embed_element(self, w, 80)))
        return np.array(rows, dtype=float)

    def coordinate_places(self):
        """Place index for each Minkowski coordinate column."""
        out = []
        for p in self.places:
            out.extend([p.index] * p.f_v)
        return out

    @property
    def abs_disc(self):
        return abs(self.discriminant)

    @property
    def is_monogenic(self):
        return self.monogenic


def _rebuild_field(poly, basis, cap, name):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return NumberField(poly, basis, precision_cap=cap, name=name)


class FieldElement:
    """Exact element of a number field in integral-basis coordinates."""

    __slots__ = ("field", "coords", "__dict__")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.field.degree
        t = self.field._structure
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(t[i][j]):
                    if c:
                        out[k] += ab * c
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "FieldElement(" + ", ".join(str(c) for c in self.coords) + ")"

    def is_zero(self):
        return not any(self.coords)

    @cached_property
    def power_coeffs(self):
        return tuple(self.field._to_power(list(self.coords)))

    def is_rational(self):
        return not any(self.power_coeffs[1:])

    def multiplication_matrix(self):
        """Row j holds the coordinates of ``self * omega_j``."""
        n = self.field.degree
        t = self.field._structure
        return [
            [sum((a * t[i][j][k] for i, a in enumerate(self.coords) if a), Fraction(0)) for k in range(n)]
            for j in range(n)
        ]

    def norm(self):
        return _exact.det(self.multiplication_matrix())

    def trace(self):
        m = self.multiplication_matrix()
        return sum((m[j][j] for j in range(self.field.degree)), Fraction(0))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.multiplication_matrix()
        one = list(self.field.one.coords)
        return FieldElement(self.field, tuple(_exact.vec_mat(one, _exact.inverse(m))))


# -- field_core operations ---------------------------------------------


def make_field(poly, basis=None, **kwargs):
    """Build a field from a defining polynomial (constant term first)."""
    return NumberField(poly, basis, **kwargs)


def _squarefree(d):
    d = abs(d)
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def quadratic_field(d):
    """Q(sqrt d) with its maximal order basis."""
    d = int(d)
    if d in (0, 1) or not _squarefree(d):
        raise FieldConstructionError(f"d = {d} must be squarefree and not 0 or 1")
    poly = (-d, 0, 1)
    if d % 4 == 1:
        basis = [[1, 0], [Fraction(1, 2), Fraction(1, 2)]]
        name = f"Q(sqrt({d}))"
        return NumberField(poly, basis, name=name)
    name = "Q(i)" if d == -1 else f"Q(sqrt({d}))"
    return NumberField(poly, name=name)


def rational_field():
    return NumberField((0, 1), name="Q")


def preset(name):
    """Field from a preset label: ``Q``, ``Qi``, ``Qsqrt:<d>`` or ``Q(sqrt,d)``."""
    label = name.strip().replace(" ", "")
    if label == "Q":
        return rational_field()
    if label == "Qi":
        return quadratic_field(-1)
    if label.startswith("Qsqrt:"):
        return quadratic_field(int(label.split(":", 1)[1]))
    if label.startswith("Q(sqrt,") and label.endswith(")"):
        return quadratic_field(int(label[len("Q(sqrt,"):-1]))
    raise FieldConstructionError(f"unknown field preset {name!r}")


def field_from_spec(spec):
    """Field from a mapping with ``poly`` and optional ``basis`` (strings "p/q" allowed)."""
    if "poly" not in spec:
        raise FieldConstructionError("field spec needs a 'poly' key")
    poly = [int(c) for c in spec["poly"]]
    basis = spec.get("basis")
    if basis is not None:
        basis = [[Fraction(str(x)) for x in row] for row in basis]
    return NumberField(poly, basis, name=spec.get("name"))


def load_field_spec(path):
    with open(path, encoding="utf-8") as fh:
        return field_from_spec(json.load(fh))


def embed_element(field, alpha, precision=53):
    """Archimedean images of ``alpha`` as interval enclosures.

    Returns one ``iv.mpf`` per real place and an ``(re, im)`` pair per
    complex place, each of width at most ``2**-precision``.
    """
    if precision < 16:
        raise ValueError("precision must be at least 16 bits")
    coeffs = list(alpha.power_coeffs)
    scale = max(1, max((abs(c) for c in coeffs), default=1))
    guard = 16 + scale.numerator.bit_length() + 2 * field.degree
    limit = Fraction(1, 2**precision)
    while True:
        wp = precision + guard
        if wp > field.precision_cap:
            raise PrecisionError(f"embedding needs more than {field.precision_cap} bits")
        discs = field.root_discs(wp)
        with ivprec(wp + 16):
            out = []
            for place in field.places:
                z = discs[place.root_index].enclosure()
                val = horner(coeffs, z)
                out.append(val[0] if place.is_real else val)
        if all(_enclosure_width(v) <= limit for v in out):
            return out
        guard *= 2


def _enclosure_width(v):
    if isinstance(v, tuple):
        return max(width(v[0]), width(v[1]))
    return width(v)


def minkowski_floats(values):
    """Flatten an embedding into float Minkowski coordinates."""
    out = []
    for v in values:
        if isinstance(v, tuple):
            out.extend([float(v[0].mid), float(v[1].mid)])
        else:
            out.append(float(v.mid))
    return out


def field_arith(alpha, beta=None, op="add"):
    """Dispatch for the exact arithmetic operations."""
    if op == "add":
        return alpha + beta
    if op == "mul":
        return alpha * beta
    if op == "neg":
        return -alpha
    if op == "inv":
        return alpha.inverse()
    if op == "norm":
        return alpha.norm()
    raise ValueError(f"unknown op {op!r}")


def derivative_at_theta(field):
    n = field.degree
    deriv = [k * field.poly[k] for k in range(1, n + 1)]
    return field.from_power_basis(deriv)


def different_ideal(field):
    """The different of a monogenic order: the principal ideal (f'(theta))."""
    from .ideals import principal_ideal

    if not field.monogenic:
        raise NotMonogenicError("different_ideal needs the power basis as integral basis")
    return principal_ideal(field, derivative_at_theta(field))


def resultant_norm(alpha):
    """Norm via Res(f, p) with sympy; an independent route for checks."""
    from sympy import resultant

    f = Poly(list(reversed(alpha.field.poly)), _X)
    p = Poly([_sympy_rational(c) for c in reversed(alpha.power_coeffs)], _X)
    return Fraction(str(resultant(f, p)))


def _sympy_rational(q):
    from sympy import Rational

    return Rational(q.numerator, q.denominator)


def abs_squared_charpoly(alpha):
    """Characteristic polynomial of M (x) M for the multiplication matrix M.

    Its roots are all products sigma_i(alpha) sigma_j(alpha), which include
    |sigma_v(alpha)|^2 at each complex place.
    """
    m = alpha.multiplication_matrix()
    n = len(m)
    kron = Matrix(n * n, n * n, lambda i, j: _sympy_rational(m[i // n][j // n] * m[i % n][j % n]))
    return Poly(kron.charpoly(_X).as_expr(), _X)


__all__ = [
    "NumberField",
    "FieldElement",
    "Place",
    "make_field",
    "quadratic_field",
    "rational_field",
    "preset",
    "field_from_spec",
    "load_field_spec",
    "embed_element",
    "field_arith",
    "different_ideal",
    "resultant_norm",
    "minkowski_floats",
]
