"""Galois objects of k^G for a few small G, up to equivalence."""

import time

from kgalois import catalog
from kgalois.classify import classify
from kgalois.fields import cyclotomic_tower, rational_tower
from kgalois.groups import cyclic_group, elementary_abelian, symmetric_group

runs = [
    ("Z_4 over Q", cyclic_group(4), [rational_tower()]),
    ("Z_2 x Z_2 over Q", elementary_abelian(2, 2), [rational_tower()]),
    ("S_3, K in {Q, Q(zeta_3), Q(i)}", symmetric_group(3),
     [rational_tower(), cyclotomic_tower(3, [1, 2]), cyclotomic_tower(4, [1, 3])]),
]
for label, G, cat in runs:
    t = time.perf_counter()
    res = classify(G, cat, workers=2)
    print(f"{label}: {len(res.representatives)} classes from {res.candidates} candidates "
          f"({time.perf_counter() - t:.2f} s)")
    for r in res.representatives:
        print(f"   S = {r.S.elements}, N = {r.N.elements}, degree {r.tower.degree}")

d = catalog.symplectic_family()[0]
t = time.perf_counter()
res = classify(d.G, [d.tower], S=d.S.elements, N=d.N.elements, sigmas=[d.sigma], isos=[d.iso], workers=4)
print(f"Z_3^3 with S = G, N = Z_3^2, the symplectic class, one Galois map: {len(res.representatives)} classes "
      f"({time.perf_counter() - t:.2f} s)")
