"""
Term tables for the fiber coordinates t(4) and t(-4) over a fixed boundary.

Each row is (coefficient, s exponent, t exponent, L1, L2, L3 exponents,
boundary-trace factors).  Exponents are multiples of 1/2; the factors name
the traces of the three boundary curves: T1 = t(1), T2 = t(2), Tm3 = t(-3).
"""
from fractions import Fraction

H = Fraction(1, 2)

FIBER_T4_TERMS = (
    (1, -1, 0, -H, -H, -H, ()),
    (1, -1, 0, H, H, H, ()),
    (-1, 1, 0, 3 * H, H, -H, ()),
    (-1, 1, 0, -H, 3 * H, H, ()),
    (-1, 1, 0, H, -H, 3 * H, ()),
    (2, 2, 0, 0, 0, 0, ()),
    (-1, 0, -1, 1, -1, 0, ()),
    (-1, 0, -1, -1, 0, 1, ()),
    (1, -1, -1, -H, -H, -H, ()),
    (1, 1, -1, -3 * H, H, -H, ()),
    (1, 1, -1, -H, -3 * H, H, ()),
    (1, 1, -1, H, -H, 3 * H, ()),
    (-1, 2, -1, 0, 0, 0, ()),
    (-1, 2, -1, -1, -1, 2, ()),
    (1, 3, -1, -3 * H, -H, H, ()),
    (-1, 0, 1, 1, 2, 0, ()),
    (1, -1, 1, H, H, H, ()),
    (1, 1, 1, 3 * H, H, -H, ()),
    (1, 0, 0, 0, -1, 0, ("T1",)),
    (-1, 0, 0, 0, 2, 0, ("T1",)),
    (1, 1, 0, H, H, -H, ("T1",)),
    (1, 0, -1, 0, -1, 0, ("T1",)),
    (-1, 1, -1, -H, -H, 3 * H, ("T1",)),
    (1, 2, -1, -1, 0, 0, ("T1",)),
    (1, 1, 0, -H, H, H, ("T2",)),
    (1, 0, 1, 1, 1, 0, ("T2",)),
    (1, 0, 0, 0, 1, 0, ("T1", "T2")),
    (1, 1, 0, H, -H, H, ("Tm3",)),
    (1, 0, -1, -1, 0, 0, ("Tm3",)),
    (-1, 1, -1, H, -H, H, ("Tm3",)),
    (1, 2, -1, -1, -1, 1, ("Tm3",)),
    (1, 1, -1, -H, -H, H, ("T1", "Tm3")),
)

FIBER_TM4_TERMS = (
    (2, -2, 0, 0, 0, 0, ()),
    (-1, -1, 0, H, 3 * H, -H, ()),
    (-1, -1, 0, 3 * H, -H, H, ()),
    (-1, -1, 0, -H, H, 3 * H, ()),
    (1, 1, 0, -H, -H, -H, ()),
    (1, 1, 0, H, H, H, ()),
    (1, 0, -1, -1, 1, 0, ()),
    (1, 0, -1, 0, -1, 1, ()),
    (1, 0, -1, 1, 0, 2, ()),
    (1, -2, -1, 0, 0, 0, ()),
    (-1, -1, -1, 3 * H, -H, H, ()),
    (-1, -1, -1, -H, H, 3 * H, ()),
    (-1, 1, -1, H, H, H, ()),
    (-1, 1, -1, -H, -H, 5 * H, ()),
    (1, 2, -1, -1, 0, 1, ()),
    (1, 0, 1, 1, 0, -1, ()),
    (1, -2, 1, 0, 0, 0, ()),
    (-1, -1, 1, H, 3 * H, -H, ()),
    (1, -1, 0, H, -H, H, ("T1",)),
    (-1, 0, -1, 0, 0, 2, ("T1",)),
    (1, -1, -1, H, -H, H, ("T1",)),
    (1, 1, -1, -H, H, H, ("T1",)),
    (1, 0, 0, -1, 0, 0, ("T2",)),
    (-1, 0, 0, 2, 0, 0, ("T2",)),
    (1, -1, 0, H, H, -H, ("T2",)),
    (1, -1, 1, H, H, -H, ("T2",)),
    (1, 0, 0, 1, 0, 0, ("T1", "T2")),
    (1, -1, 0, -H, H, H, ("Tm3",)),
    (-1, 0, -1, 1, 0, 1, ("Tm3",)),
    (1, -1, -1, -H, H, H, ("Tm3",)),
    # written as s * L3^(3/2) * Tm3 / (sqrt(t * L1) * sqrt(L2))
    (1, 1, -H, -H, -H, 3 * H, ("Tm3",)),
    (1, 0, -1, 0, 0, 1, ("T1", "Tm3")),
)

# boundary index -> (trace generator, inverse trace generator) fed to the eigenvalue cubic
BOUNDARY_TRACES = {1: (1, -1), 2: (2, -2), 3: (-3, 3)}

# (t(i), t(-i)) for i = 1, 2, 3; each pair comes from eigenvalues (l, m, 1/(l*m)) with l, m > 0 distinct
SAMPLE_BOUNDARIES = (
    ((Fraction(31, 6), Fraction(41, 6)), (Fraction(49, 8), Fraction(35, 4)), (Fraction(25, 6), Fraction(23, 6))),
    ((Fraction(5), Fraction(17, 4)), (Fraction(31, 6), Fraction(41, 6)), (Fraction(23, 6), Fraction(25, 6))),
)
