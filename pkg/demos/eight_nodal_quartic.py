"""
The quartic symmetroid with a double line
=========================================

Eight nodes, eight tropes, and the incidence between them.  Coordinates
live in Q(sqrt(-3)); ``w`` prints the square root.
"""

from conicbundle.submonoidal import classify_fibers, pluecker_surface, verify_incidence

S, data = pluecker_surface()
K = S.field
print("quartic:", data.quartic)

F = data.quartic
for name, pt in data.nodes.items():
    grad = [F.diff(v).evaluate(pt) for v in F.vars]
    print(f"{name:4} {[str(c) for c in pt]}  singular: {not any(grad)}")

# rows are nodes, columns are tropes
rep = verify_incidence(list(data.nodes.values()), list(data.tropes.values()), K)
for name, row in zip(data.nodes, rep.matrix):
    print(f"{name:4}", "".join("x" if b else "." for b in row))
print("configuration:", rep.configuration)

# all four singular fibers are double lines, each carrying two nodes
r = classify_fibers(S)
print("(s1, s2, s3) =", r.s, " nodes:", r.node_count)
print("P =", r.decomposition.factors[0][0], "squared, times a constant")
