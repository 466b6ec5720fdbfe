"""Floating-point LLL and Fincke-Pohst enumeration of short lattice vectors.

Only speed depends on these numerics: callers widen the radius slightly and
filter every returned point exactly.
"""

import math

import numpy as np

from .errors import BudgetExceeded

DEFAULT_NODE_BUDGET = 10**9


def gram_schmidt(basis):
    """Return (mu, c) with c[i] = |b*_i|^2 for the rows of ``basis``."""
    b = np.asarray(basis, dtype=float)
    n = b.shape[0]
    bstar = np.zeros_like(b)
    mu = np.eye(n)
    c = np.zeros(n)
    for i in range(n):
        v = b[i].copy()
        for j in range(i):
            mu[i, j] = b[i] @ bstar[j] / c[j]
            v -= mu[i, j] * bstar[j]
        bstar[i] = v
        c[i] = v @ v
    return mu, c


def lll_reduce(basis, delta=0.99):
    """LLL-reduce the rows of ``basis``.

    Returns ``(reduced, U)`` with ``reduced = U @ basis`` and ``U`` an
    integer unimodular matrix (Python ints, object dtype).
    """
    b = np.array(basis, dtype=float)
    n = b.shape[0]
    u = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    if n == 1:
        return b, u
    k = 1
    mu, c = gram_schmidt(b)
    steps = 0
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                b[k] -= q * b[j]
                u[k] = u[k] - q * u[j]
                mu, c = gram_schmidt(b)
        if c[k] >= (delta - mu[k, k - 1] ** 2) * c[k - 1]:
            k += 1
        else:
            b[[k, k - 1]] = b[[k - 1, k]]
            u[[k, k - 1]] = u[[k - 1, k]]
            mu, c = gram_schmidt(b)
            k = max(k - 1, 1)
        steps += 1
        if steps > 100000:
            break
    return b, u


class Enumerator:
    """Depth-first Fincke-Pohst over ``{z : |z @ basis|^2 <= radius2}``.

    ``batches()`` yields integer arrays of coefficient vectors relative to
    the *input* basis.  ``nodes`` counts visited tree nodes (inner nodes
    plus leaves); exceeding ``budget`` raises ``BudgetExceeded``.
    """

    def __init__(self, basis, radius2, budget=DEFAULT_NODE_BUDGET, batch_size=1 << 16):
        self.basis = np.asarray(basis, dtype=float)
        self.radius2 = float(radius2)
        self.budget = budget
        self.batch_size = batch_size
        self.nodes = 0
        self.reduced, self.transform = lll_reduce(self.basis)
        self.mu, self.c = gram_schmidt(self.reduced)
        self._u_float = np.array(self.transform, dtype=float)
        self._u_exact_needed = bool(np.abs(self._u_float).max() > 2**40)

    def _tick(self, k):
        self.nodes += k
        if self.nodes > self.budget:
            raise BudgetExceeded(f"enumeration exceeded {self.budget} nodes", nodes=self.nodes)

    def _raw(self):
        """Yield arrays of coefficient vectors in the reduced basis."""
        n = len(self.c)
        mu, c, r2 = self.mu, self.c, self.radius2
        z = np.zeros(n, dtype=np.int64)

        def level(k, partial):
            center = -sum(mu[j, k] * z[j] for j in range(k + 1, n))
            rem = r2 - partial
            if rem < 0:
                return
            half = math.sqrt(rem / c[k])
            lo, hi = math.ceil(center - half), math.floor(center + half)
            if hi < lo:
                return
            if k == 0:
                count = hi - lo + 1
                self._tick(count)
                block = np.zeros((count, n), dtype=np.int64)
                block[:, 0] = np.arange(lo, hi + 1)
                block[:, 1:] = z[1:]
                yield block
                return
            for value in range(lo, hi + 1):
                self._tick(1)
                z[k] = value
                yield from level(k - 1, partial + c[k] * (value - center) ** 2)
            z[k] = 0

        yield from level(n - 1, 0.0)

    def batches(self):
        pending, size = [], 0
        for block in self._raw():
            pending.append(block)
            size += len(block)
            if size >= self.batch_size:
                yield self._to_input(np.concatenate(pending))
                pending, size = [], 0
        if pending:
            yield self._to_input(np.concatenate(pending))

    def _to_input(self, zred):
        if self._u_exact_needed:
            return (zred.astype(object) @ self.transform).astype(np.int64)
        return np.rint(zred @ self._u_float).astype(np.int64)


def enumerate_ball(basis, radius2, budget=DEFAULT_NODE_BUDGET):
    """All coefficient vectors z with |z @ basis|^2 <= radius2 (plus float slack)."""
    en = Enumerator(basis, radius2, budget)
    parts = list(en.batches())
    if not parts:
        return np.zeros((0, len(basis)), dtype=np.int64)
    return np.concatenate(parts)


def count_bound(c, rho):
    """Upper bound on #{z : |z @ basis| <= rho} from Gram-Schmidt norms."""
    total = 1.0
    for ci in c:
        total *= 2.0 * rho / math.sqrt(ci) + 1.0
    return total
