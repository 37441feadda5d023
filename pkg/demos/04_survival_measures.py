"""
Survival functions built from entropy vectors
=============================================

For a vector h and alpha > 0 the function Q(x) = exp(-alpha phi_h(x)) is a
candidate survival function. A box has mass given by the signed sum of Q
over its corners; a negative mass rules out a measure.
"""

import random

from troplat import catalog, measure
from troplat.entropy import EntropyVector, entropy_vector, is_supermodular

# a non-supermodular vector in the plane has an explicit negative box
h = EntropyVector(2, (0, 0, 0, -1))
cube = measure.find_negative_cube_n2(h, 1.0)
print("box", cube.u, cube.v, "mass", cube.mass, "predicted", cube.predicted)

# in higher dimensions the box is found by conditioning on a local violation
rng = random.Random(3)
while True:
    g = measure.random_entropy_like(3, rng)
    if not is_supermodular(g):
        break
cube = measure.find_negative_cube(g, 1.0)
print("three coordinates:", cube.u, cube.v, "mass", cube.mass)

# lattice entropy vectors are supermodular, yet small alpha still admits negative boxes
h3 = entropy_vector(catalog.matrix("rank2-cubic"))
for alpha in (0.25, 0.5, 1.0, 2.0, 4.0):
    rep = measure.positivity_scan(measure.SurvivalSpec(h3, alpha), 10_000, 5.0, seed=11)
    print(f"alpha {alpha:>4}: least box mass {rep.min_mass:+.3e} ({rep.negative} negative of {rep.trials})")

# closed-form projected measures
print("shear atom at 0:", measure.projected_atom("shear", 1.0))
print("planar density total mass:", measure.identity3_total_mass(1.0))
