"""
Checking the complex against independent oracles
=================================================

Three checks that do not use the entropy polynomial: random lattice points,
explicit lattice elements realising each generator, and a finite-field model
whose survival probabilities are powers of p.
"""

from troplat import catalog, oracle
from troplat.entropy import entropy_vector
from troplat.serialize import rat
from troplat.subsets import mask_to_str
from troplat.tropical import is_member, phi

A = catalog.matrix("rank2-cubic")
h = entropy_vector(A)

# valuations of random lattice points always satisfy the membership test
samples = oracle.sample_lattice_valuation(A, oracle.SampleConfig(seed=1, trials=2000))
print("distinct valuations:", len(set(samples)), "all members:", all(is_member(h, v) for v in samples))
print("a few:", [[rat(x) for x in v] for v in samples[:5]])

# each generator u_J is the valuation of a concrete lattice element
for J in (0, 1, 2, 4):
    x = oracle.witness_for_generator(A, J, h=h)
    print(f"u_{mask_to_str(J, h.n) or '{}'}:", [rat(c) for c in oracle.valuation(x)], "element", [str(c) for c in x])

# over F_101 the probability that val(yA) >= v is 101^(-phi(v))
for v in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 2)]:
    est = oracle.ff_survival(A, v, oracle.FfConfig(prime=101, trunc=10, trials=200_000))
    print(f"v = {v}: phi = {rat(phi(h, v))}, empirical {est.empirical:.3e}, exact {est.exact:.3e}, within 3 sigma {est.within(3)}")

# reducing mod 2 can lose valuation vectors that exist over a field of characteristic 0
B = catalog.matrix("char2")
print("entropy of the char-2 lattice:", [rat(x) for x in entropy_vector(B)])
print("mod-2 entropy:", [rat(x) for x in oracle.entropy_mod_p(B, 2)])
print("first (0,0,0) over F_2:", oracle.first_hit(B, (0, 0, 0), oracle.FfConfig(prime=2, trunc=3, trials=20_000)))
print("first (0,0,0) over F_101:", oracle.first_hit(B, (0, 0, 0), oracle.FfConfig(prime=101, trunc=3, trials=1000)))
