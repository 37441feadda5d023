"""
Entropy vectors and the complex of a planar lattice
===================================================

A lattice over the Puiseux valuation ring is given by the rows of a matrix.
Its entropy vector records the least valuation of the maximal minors on each
set of columns, and the tropical polynomial built from it subdivides R^n.
"""

from troplat import catalog
from troplat.entropy import entropy_vector, is_supermodular
from troplat.polyhedral import sigma_complex
from troplat.serialize import rat
from troplat.subsets import mask_to_str
from troplat.tropical import generators, is_member, phi_eval, reconstruct

# a full-rank lattice in K^2 whose complex has two vertices
A = catalog.matrix("square")
print("matrix:", A.to_strings())

# entropy vector, keyed by subsets of columns
h = entropy_vector(A)
print("entropy:", {mask_to_str(m, h.n) or "{}": rat(h[m]) for m in range(1 << h.n)})
print("supermodular:", is_supermodular(h))

# the full complex and its subcomplex Sigma, labelled by unions of active sets
c = sigma_complex(h)
print("f-vector of the complex:", c.f_vector())
print("f-vector of Sigma:", c.f_vector(c.sigma_ids))
for cell in c.cells:
    active = [mask_to_str(J, h.n) or "{}" for J in cell.key]
    where = "Sigma" if cell.id in c.sigma_ids else "     "
    print(f"  {where} dim {cell.dim} active {active} witness {[rat(x) for x in cell.witness]}")

# membership of a point is decided by the monomials attaining the maximum
for v in [(0, 1), (1, 2), (0, -1), (5, 9)]:
    value, act = phi_eval(h, v)
    print(f"v = {v}: phi = {rat(value)}, active {[mask_to_str(J, h.n) or '{}' for J in act]}, member {is_member(h, v)}")

# the generators u_J and the tropical combination reproducing a member
gens = generators(h)
print("generators:", {mask_to_str(J, h.n) or "{}": [rat(x) for x in u] for J, u in gens.items()})
rec = reconstruct(h, (3, 5))
print("coefficients for (3, 5):", {mask_to_str(J, h.n) or "{}": rat(x) for J, x in rec.lambdas.items()})
print("recombined:", [rat(x) for x in rec.recombined], "exact:", rec.ok)
