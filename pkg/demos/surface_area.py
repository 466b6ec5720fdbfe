"""Growth of vol(E + t(D - D)) as t shrinks, and the slope at zero it converges to.

An interval grown by another interval is exact, so Q gives slope 2 with no error.
For Q(i) the unit disc grown by a unit square has perimeter-type slope 8, which
is estimated by Monte Carlo with a confidence interval.
"""

from replete import ArchRegion, Box, Disc, Interval, surface_area

if __name__ == "__main__":
    line = surface_area(ArchRegion([Interval(-1, 1)]), ArchRegion([Interval(0, 1)]))
    print(f"Q: E = [-1, 1], D = [0, 1], slope {line.exact} (exact)")
    disc = surface_area(ArchRegion([Disc(1)]), ArchRegion([Box(0, 1, 0, 1)]), samples=10**6, seed=0)
    print("Q(i): E = unit disc, D = unit square")
    for t, q, ci in disc.quotients:
        print(f"  t = {str(t):>5}  growth / t = {q:.4f} +/- {ci:.4f}")
    print(f"  extrapolated slope {disc.slope:.4f} +/- {disc.ci:.4f} (degree {disc.degree} fit)")
