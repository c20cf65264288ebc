"""
Special sections of a quartic with a double line
================================================

Lattice bookkeeping on the blow-up model: the canonical classes, the
2^7 special sections, their duals and the involution tau.
"""

import numpy as np

from conicbundle.lattice import (
    all_classes,
    dual_section,
    enumerate_special_sections,
    standard_classes,
    tau_action,
    tau_matrix,
)

d = 4
H, Sigma, K, fiber = standard_classes(d)
print("H     =", H, " H^2 =", H.square)
print("Sigma =", Sigma, " Sigma^2 =", Sigma.square)
print("K     =", K, " K^2 =", K.square)

groups = enumerate_special_sections(d)
for n, classes in groups.items():
    print(f"n = {n}: {len(classes)} classes, e.g. {classes[0].lattice_class}")

# a conic through two of the points pairs with a nodal cubic through the other six
s = groups[1][0]
print(s, "->", dual_section(s))

T = tau_matrix(d)
print(T)
print("tau^2 = id:", np.array_equal(T @ T, np.eye(len(T), dtype=T.dtype)))
print("tau(E) = dual(E) for all:",
      all(tau_action(s.lattice_class) == dual_section(s).lattice_class for s in all_classes(d)))
