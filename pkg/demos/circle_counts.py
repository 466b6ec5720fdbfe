"""Lattice points of O_K inside growing boxes, compared with vol_B times the norm.

For Q(i) the count is the Gauss circle count and the ratio tends to pi. For
Q(sqrt 2) the region is a square in the two real embeddings and the ratio
tends to sqrt 2.
"""

from replete import (ScanFamily, estimate_constant, fit_error_exponent, geometric_schedule, preset,
                     replete, scan_family, unit_ideal)


def show(label, K, scales):
    family = ScanFamily(replete(unit_ideal(K), [1] * len(K.places)), scales)
    rows = scan_family(K, family)
    print(f"{label}")
    print(f"{'t':>6} {'count':>8} {'leading':>14} {'ratio':>10}")
    for t, row in zip(scales, rows):
        print(f"{str(t):>6} {row.count:>8} {float(row.leading):>14.3f} {float(row.ratio):>10.6f}")
    est, fit = estimate_constant(rows), fit_error_exponent(rows)
    print(f"constant estimate {est.c_hat:.6f} (relative deviation {est.deviation:.2e}), "
          f"error slope {fit.slope:.3f} against bound {fit.bound:.2f}\n")


if __name__ == "__main__":
    show("Q(i), disc of radius t", preset("Qi"), geometric_schedule(10, 2, 6))
    show("Q(sqrt 2), square of side 2t", preset("Qsqrt:2"), geometric_schedule(3, 2, 6))
