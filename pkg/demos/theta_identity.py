"""Both sides of the adelic Poisson summation identity for Gaussian test functions.

Over Q this is the Jacobi theta transformation theta(y^2) = theta(1/y^2)/y. Over
Q(i) with the ideal (1+i) the dual side runs over the trace dual.
"""

from fractions import Fraction

from replete import (archimedean_idele, gaussian_test_function, preset, principal_ideal, tate_check,
                     unit_ideal)


def show(label, K, ideal, y_values, tol):
    f = gaussian_test_function(ideal, 1)
    report = tate_check(K, f, archimedean_idele(K, y_values), 10, tol)
    print(f"{label:<28} lhs {report.lhs:.15f}  rhs {report.rhs:.15f}  "
          f"diff {report.diff:.1e}  tail {report.tail:.1e}  {'pass' if report.passed else 'FAIL'}")


if __name__ == "__main__":
    Q, QI, Q2 = preset("Q"), preset("Qi"), preset("Qsqrt:2")
    for y in (Fraction(1, 2), 1, 2, 5):
        show(f"Q, y = {y}", Q, unit_ideal(Q), [y], 1e-9)
    show("Q(i), ideal O", QI, unit_ideal(QI), [1], 1e-8)
    show("Q(i), ideal (1+i)", QI, principal_ideal(QI, 1 + QI.theta), [1], 1e-8)
    show("Q(sqrt 2), y = (2, 1/2)", Q2, unit_ideal(Q2), [2, Fraction(1, 2)], 1e-8)
