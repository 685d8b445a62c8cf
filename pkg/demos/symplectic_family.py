"""The data over Z_3^3 with N = Z_3^2, K = Q(q) (q of order 9) and k = Q(zeta_3).

Nine compatible gamma for the symplectic sigma, pairwise inequivalent; and the
half form x_2 y_1, whose alternation is the symplectic form again.
"""

import itertools
import time

from kgalois import algebra as al, catalog, cohomology as co
from kgalois.datum import GaloisDatum, are_equivalent, solve_gamma, validate_datum
from kgalois.grading import recover_datum

d = catalog.symplectic_family()[0]
print(f"|G| = {d.G.order}, |N| = {d.N.order}, [K:k] = {d.tower.degree}, mu order {d.m}")
t = time.perf_counter()
sols = solve_gamma(d.G, d.S, d.N, d.tower, d.sigma, d.iso)
print(f"solve_gamma: {len(sols)} solutions in {time.perf_counter() - t:.2f} s")
data = [GaloisDatum(d.G, d.S, d.N, d.tower, d.iso, d.sigma, g) for g in sols]
print("all validate:", all(validate_datum(x).verdict for x in data))
same = [(i, j) for i, j in itertools.combinations(range(9), 2) if are_equivalent(data[i], data[j])]
print("equivalent pairs among them:", same)

x = data[4]
t = time.perf_counter()
rep = al.verify_simple_fast(al.twisted_group_algebra(x), x.n_in_s)
print(f"fast Galois test: theta_N {tuple(rep.theta_n_shape)} of rank {rep.theta_n_rank}, "
      f"verdict {rep.verdict} ({time.perf_counter() - t:.2f} s)")
rec = recover_datum(al.twisted_group_algebra(x), x.G, x.S)
print("recovered datum equivalent:", are_equivalent(rec.datum, x) is not None)

h = catalog.half_symplectic_family()[0]
print("Alt of x_2 y_1 equals the symplectic form:", co.alt(h.sigma) == d.sigma)
print("half-form datum validates:", validate_datum(h).verdict)
