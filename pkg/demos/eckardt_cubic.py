"""
A cubic surface with two Eckardt points on a line
=================================================

Walks one cubic through the whole pipeline: the forms A..F, the two
discriminants, the fiber census, the satellite curve and both involutions.
"""

from conicbundle.cremona import (
    fiber_singular_points,
    satellite_curve,
    theta,
    theta_prime,
    verify_involution,
    verify_surface_invariance,
)
from conicbundle.exactalg import poly_parse
from conicbundle.submonoidal import classify_fibers, eckardt_locus, submonoidal_from_polynomial

X = ("x0", "x1", "x2", "x3")
F = poly_parse("2*x0^2*x2 + 2*x1^2*x3 + x0*x2^2 + x1*x3^2", X)

# the line x0 = x1 = 0 lies on F; planes through it cut residual conics
S = submonoidal_from_polynomial(F)
for name, f in zip("ABCDEF", S.forms):
    print(f"{name} = {f}")

report = classify_fibers(S)
print("P =", report.P)
print("R =", report.R)
print("(s1, s2, s3) =", report.s)

# residual conics singular at a point of the line
print("Eckardt parameters:", eckardt_locus(S))

# poles of the line: after cancelling t0*t1 the curve is a line
sat = satellite_curve(S)
print("satellite:", sat, " canceled:", sat.canceled)

# at a line-pair parameter the pole is the singular point of the pair
t = (-1, 1)
pole = [str(c) for c in sat(t)]
node = [str(c) for c in fiber_singular_points(S, t)[0]]
print(f"line pair at {t}: pole {pole}, singular point {node}")

th = theta(S)
print("theta has algebraic degree", th.algebraic_degree)
print("F | F o theta:", verify_surface_invariance(th, S).passed)
print("theta o theta = id:", verify_involution(th, "symbolic").passed)
print("theta' o theta' = id on samples:", verify_involution(theta_prime(S)).passed)
