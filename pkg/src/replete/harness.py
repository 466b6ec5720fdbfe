"""Scans of |H^0(a^{-1})| against vol(B) * N(a) along families of replete ideals."""

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction

import mpmath
import numpy as np

from .adelic import vol_B
from .enclosure import hi, lo
from .enumeration import DEFAULT_NODE_BUDGET
from .errors import BudgetExceeded
from .ideals import RepleteIdeal
from .lattice import count_H0

CSV_HEADER = ("index", "norm", "count", "leading", "error", "ratio")
_DEC = Context(prec=12)


@dataclass(frozen=True)
class ScanFamily:
    """Replete ideals ``step^k * base.scale(t)`` for k in ``powers``, t in ``scales``.

    Points are ordered by replete norm, which must strictly increase.
    """

    base: RepleteIdeal
    scales: tuple = (1,)
    finite_step: object = None
    powers: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "scales", tuple(Fraction(t) for t in self.scales))
        object.__setattr__(self, "powers", tuple(int(k) for k in self.powers))
        if any(t <= 0 for t in self.scales):
            raise ValueError("scale factors must be positive")
        if self.finite_step is None and self.powers != (0,):
            raise ValueError("finite-part powers need a finite_step ideal")

    def points(self):
        pts = []
        for k in self.powers:
            finite = self.base.finite if k == 0 else self.base.finite * self.finite_step**k
            b = RepleteIdeal(finite, self.base.scales, self.base.twist)
            pts.extend(b.scale(t) for t in self.scales)
        pts.sort(key=lambda a: a.norm())
        norms = [a.norm() for a in pts]
        if any(x >= y for x, y in zip(norms, norms[1:])):
            raise ValueError("family norms must be strictly increasing")
        return pts


def geometric_schedule(t0, ratio, k):
    t0, ratio = Fraction(t0), Fraction(ratio)
    return tuple(t0 * ratio**i for i in range(int(k)))


@dataclass(frozen=True)
class ScanRow:
    index: int
    norm: Fraction
    count: int
    leading: float
    error: float
    ratio: float


class ScanResult(list):
    """Rows of a scan; ``truncated_at`` is the first index not computed, if any."""

    def __init__(self, rows=(), degree=None, truncated_at=None, reason=None):
        super().__init__(rows)
        self.degree = degree
        self.truncated_at = truncated_at
        self.reason = reason


def _leading(vol, norm):
    with mpmath.workprec(113):
        mid = (lo(vol) + hi(vol)) / 2
        return mid * norm.numerator / norm.denominator


def _count_point(args):
    field, a, budget = args
    try:
        return count_H0(field, a.inverse(), budget)
    except BudgetExceeded as exc:
        return exc


def scan_family(field, family, budget=DEFAULT_NODE_BUDGET, workers=1):
    """Count H^0(a^{-1}) at each family point; stops at the first budget overrun."""
    pts = family.points()
    vol = vol_B(field)
    jobs = [(field, a, budget) for a in pts]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_point, jobs))
    else:
        counts = []
        for job in jobs:
            counts.append(_count_point(job))
            if isinstance(counts[-1], BudgetExceeded):
                break
    rows = ScanResult(degree=field.degree)
    for i, (a, c) in enumerate(zip(pts, counts)):
        if isinstance(c, BudgetExceeded):
            rows.truncated_at, rows.reason = i, str(c)
            break
        norm = a.norm()
        lead = _leading(vol, norm)
        rows.append(ScanRow(i, norm, c, float(lead), float(c - lead), c / float(norm)))
    return rows


@dataclass(frozen=True)
class ConstantEstimate:
    c_hat: float
    vol_b: float
    deviation: float


def estimate_constant(rows):
    """Ratio count / N(a) at the largest norm, compared with vol(B)."""
    if len(rows) < 3:
        raise ValueError("need at least three rows")
    last = max(rows, key=lambda r: r.norm)
    vol = last.leading / float(last.norm)
    return ConstantEstimate(last.ratio, vol, abs(last.ratio / vol - 1))


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    bound: float
    passed: bool
    used: int
    saturated: bool
    constant: float


def fit_error_exponent(rows, degree=None, margin=0.1, threshold=0.5):
    """Least-squares slope of log|error| against log N(a).

    Rows with |error| below ``threshold`` are dropped.  If fewer than two
    remain the error term is saturated and the check passes trivially.
    ``constant`` is the smallest C with |error| <= C N(a)^{1 - 1/n} on the scan.
    """
    if len(rows) < 4:
        raise ValueError("need at least four rows")
    n = degree if degree is not None else getattr(rows, "degree", None)
    if n is None:
        raise ValueError("field degree unknown; pass degree=")
    bound = 1 - 1 / n + margin
    expo = 1 - 1 / n
    constant = max(abs(r.error) / float(r.norm) ** expo for r in rows)
    used = [r for r in rows if abs(r.error) >= threshold]
    if len(used) < 2:
        return ExponentFit(0.0, bound, True, len(used), True, constant)
    x = np.log([float(r.norm) for r in used])
    y = np.log([abs(r.error) for r in used])
    slope = float(np.polyfit(x, y, 1)[0])
    return ExponentFit(slope, bound, slope <= bound, len(used), False, constant)


@dataclass(frozen=True)
class InvarianceReport:
    before: int
    after: int
    passed: bool


def principal_invariance_check(field, a, gamma, budget=DEFAULT_NODE_BUDGET):
    """|H^0(a^{-1})| is unchanged when a is multiplied by a principal replete ideal."""
    before = count_H0(field, a.inverse(), budget)
    after = count_H0(field, a.mul_principal(gamma).inverse(), budget)
    return InvarianceReport(before, after, before == after)


def fmt12(x):
    """Plain decimal string rounded to 12 significant digits."""
    if isinstance(x, Fraction):
        d = _DEC.divide(Decimal(x.numerator), Decimal(x.denominator))
    elif isinstance(x, Decimal):
        d = _DEC.plus(x)
    elif isinstance(x, int):
        d = _DEC.create_decimal(x)
    else:
        if not math.isfinite(float(x)):
            return str(x)
        d = _DEC.create_decimal(str(x) if isinstance(x, mpmath.mpf) else repr(float(x)))
    if d == 0:
        return "0"
    s = format(d.normalize(), "f")
    return s


def csv_cells(row):
    """Formatted cells; the error column is exact against the printed leading term."""
    leading = fmt12(Decimal(repr(row.leading)))
    error = fmt12(Decimal(row.count) - Decimal(leading))
    ratio = fmt12(Fraction(row.count) / row.norm)
    return [str(row.index), fmt12(row.norm), str(row.count), leading, error, ratio]


def emit_csv(rows, destination=None):
    """Write the scan as CSV; returns the bytes written.

    ``destination`` may be a path, a binary or text file object, or None.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(csv_cells(row))
    data = buf.getvalue().encode()
    if destination is None:
        return data
    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        with open(destination, "wb") as fh:
            fh.write(data)
    elif isinstance(destination, io.TextIOBase):
        destination.write(data.decode())
    else:
        destination.write(data)
    return data
