"""M_2(Q) as a Galois object for k^(Z_2 x Z_2): build it, test it, read the datum back."""

from kgalois import algebra as al, catalog
from kgalois.datum import are_equivalent, build_object, validate_datum
from kgalois.grading import full_grading, recover_datum

d = catalog.klein_matrix_datum()
print("sigma exponents (mod 2):")
print(d.sigma.table)
print("validation:", validate_datum(d).verdict)

A = build_object(d)
rep = al.verify_galois(A)
print(f"dim A = {A.dim}, theta rank = {rep.theta_rank}, fixed part = {rep.fixed_dim}, Galois: {rep.verdict}")

gr = full_grading(A)
print("grading dimensions over the four group elements:", gr.dims())

rec = recover_datum(A)
w = are_equivalent(rec.datum, d)
print("recovered sigma:")
print(rec.datum.sigma.table)
print("equivalent to the input:", w is not None, "witness", w.to_json() if w else None)

# the commutative group algebra with the same action is not Galois
B = al.trivial_action_algebra(d.S.group, d.tower, 4)
print("k^4 with trivial action is Galois:", al.verify_galois(B).verdict)
