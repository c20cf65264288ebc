"""
A cubic threefold with a plane of multiplicity one
=================================================

The fiber matrix, the satellite parameterization and both involutions for a
cubic in P^4 containing the plane x0 = x1 = 0; then the case of a cubic
surface through a point, where the satellite sweeps out the first polar.
"""

from conicbundle.cremona import cross_minors_divisible, verify_involution
from conicbundle.hypersurface import (
    fiber_matrix,
    first_polar,
    random_hypersurface,
    satellite_parameterization,
    theta_general,
    theta_prime_general,
)

H = random_hypersurface(3, 2, 3, seed=1)
print("F =", H.equation())
for row in fiber_matrix(H):
    print("  ", [str(f) for f in row])

sat = satellite_parameterization(H)
print("satellite raw degree", sat.raw_degree, "reduced degree", sat.degree)

th = theta_general(H)
print("theta o theta = id on samples:", verify_involution(th).passed)
tp = theta_prime_general(H)
print("theta' fixes F pointwise:", cross_minors_divisible(tp, H.equation())[0])

# subspace a point: the poles fill the polar quadric of that point
P = random_hypersurface(2, 3, 3, seed=1)
polar = first_polar(P)
forms = satellite_parameterization(P).forms
print("first polar:", polar)
print("satellite on the polar:", not polar.rename(P.tvars + (P.vars[-1],)).compose(list(forms)))
