"""Laurent series over F_p and the discriminant term of the transfer factor.

The series arithmetic is exact where it can be (Laurent polynomials) and
precision-tracked where it cannot (inverses); a quantity that vanishes to
working precision without being provably zero refuses to report a valuation.
The discriminant term is an exact power p^(a/2), never a float.
"""

from rigidcoh import (
    FiniteGroup,
    GaloisLattice,
    LaurentSeries,
    abs_value,
    char_value,
    delta_IV,
    is_strongly_regular,
    valuation,
)
from rigidcoh.catalog import cartan_matrix, simply_connected_datum
from rigidcoh.errors import ZeroWithinPrecision
from rigidcoh.rootdata import RootDatum

p = 3
one = LaurentSeries.constant(p, 1)
t = LaurentSeries.t_power(p, 1)

x = one + t
print("series:", x)
print("valuation of t^2 + t^3:", valuation(LaurentSeries(p, 2, [1, 1])))
print("|t| =", abs_value(t), "   |t^-2| =", abs_value(LaurentSeries.t_power(p, -2)))

inv = x.inverse()
print("\n(1+t)^{-1} to default precision:", inv)
cancel = x * inv - one
try:
    valuation(cancel)
except ZeroWithinPrecision as e:
    print("valuation of (1+t)(1+t)^{-1} - 1:", type(e).__name__, "-", e)

triv = FiniteGroup.trivial()
sl2 = simply_connected_datum(cartan_matrix("A", 1), GaloisLattice.with_trivial_action(triv, 1))
torus = RootDatum(GaloisLattice.with_trivial_action(triv, 1), [], [], [])

print("\nstrong regularity in SL2 over F_3((t)):")
for label, gamma in [("1+t", x), ("1", one), ("-1", LaurentSeries.constant(p, -1))]:
    print(f"  gamma = {label}: {is_strongly_regular(sl2, (gamma,))}")

print("\nroot value on gamma = 1+t:", char_value((2,), (x,)))
print("discriminant term, trivial endoscopic part:")
print("  gamma = 1+t:", delta_IV(sl2, torus, (x,)))
print("  gamma = t  :", delta_IV(sl2, torus, (t,)))
print("  full cancellation:", delta_IV(sl2, sl2, (x,)))
