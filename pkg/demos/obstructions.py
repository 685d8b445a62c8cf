"""When no gamma exists: one failure at the first obstruction, one at the second."""

from kgalois import catalog, cohomology as co, obstructions as ob
from kgalois.datum import galois_isomorphisms, solve_gamma

G, S, N, tower, sigma = catalog.first_obstruction_example()
rep = ob.obstruction_report(G, S, N, tower, sigma)
bad = [r for r in rep.first.records if not r.solvable]
print(f"Z_3^2 x Z_2 over Q(zeta_3): first obstruction fails at g in {[r.g for r in bad]}")
print("  Smith diagonal of the delta_1 system:", bad[0].certificate["diagonal"])
print("  solve_gamma:", len(solve_gamma(G, S, N, tower, sigma)), "solutions")

G, S, N, tower, sigma = catalog.second_obstruction_example()
iso = galois_isomorphisms(S, N, tower)[0]
rep = ob.obstruction_report(G, S, N, tower, sigma, iso)
sec = rep.second
print(f"Z_2^3 over Q(zeta_8) | Q(sqrt -2): first obstruction vanishes: {rep.first.vanishes}")
print(f"  d_1(gamma) is character valued: {sec.values_are_characters}, d_2 of it vanishes: {sec.d2_vanishes}")
print(f"  coboundary with theta free: {sec.coboundary}, with theta fixed on N: {sec.c1_coboundary}")
print("  solve_gamma:", len(solve_gamma(G, S, N, tower, sigma, iso)), "solutions")

d = catalog.alternating_datum()
print("A_4 acting on the Klein four-group over Q(q_7) | Q(sqrt -7):")
for s in co.second_cohomology(d.N.group, d.m).representatives():
    if co.is_nondegenerate(s):
        rep = ob.obstruction_report(d.G, d.S, d.N, d.tower, s, d.iso)
        print(f"  class {s.table[1:, 1:].tolist()}: first {rep.first.vanishes}, both {rep.vanishes}, "
              f"gamma count {len(solve_gamma(d.G, d.S, d.N, d.tower, s, d.iso))}")
