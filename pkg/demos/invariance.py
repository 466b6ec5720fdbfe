"""Counts are unchanged when a replete ideal is multiplied by a principal one.

Multiplying by gamma moves the lattice and rescales each archimedean place by
|gamma|_v, so the point count of the box stays the same even though the lattice
itself changes.
"""

from replete import count_H0, preset, principal_invariance_check, replete, unit_ideal

if __name__ == "__main__":
    QI, Q2 = preset("Qi"), preset("Qsqrt:2")
    base = replete(unit_ideal(QI), [10])
    for label, g in (("i", QI.theta), ("1+i", 1 + QI.theta), ("3-2i", 3 - 2 * QI.theta)):
        r = principal_invariance_check(QI, base, g)
        print(f"Q(i), gamma = {label:<5} count before {r.before}, after {r.after}")
    base = replete(unit_ideal(Q2), [10, 10])
    r = principal_invariance_check(Q2, base, 1 + Q2.theta)
    print(f"Q(sqrt 2), gamma = 1+sqrt2 count before {r.before}, after {r.after}")
    print(f"parity: every nonempty count is odd because alpha and -alpha pair up, "
          f"e.g. {count_H0(QI, replete(unit_ideal(QI), [1]))} points for the unit disc")
