"""
Amoebas shrinking onto Sigma
============================

Substituting a real number t in (0, 1) into the matrix and taking base-t
logarithms of a random lattice point gives a point of the amoeba. As t -> 0
the cloud collapses onto the support of Sigma.
"""

import math

from troplat import amoeba, catalog
from troplat.entropy import entropy_vector
from troplat.polyhedral import sigma_complex

for name in ("shear", "square", "full3"):
    A = catalog.matrix(name)
    sigma = sigma_complex(entropy_vector(A))
    print(name)
    for lam in (1, 3, 10, 20):
        cloud = amoeba.sample_amoeba(A, math.exp(-lam), 5000, seed=0)
        d = amoeba.point_distances(cloud.points, sigma)
        print(f"  lambda {lam:>2}: max distance {d.max():.3e}, median {sorted(d)[len(d) // 2]:.3e}")

# for the shear matrix the amoeba region has a closed form; sampled points respect it
A = catalog.matrix("shear")
for lam in (3, 10, 20):
    cloud = amoeba.sample_amoeba(A, math.exp(-lam), 20_000, seed=1)
    print(f"shear, lambda {lam}: largest violation of the closed-form region {amoeba.shear_region_violation(cloud.points, lam):.2e}")
