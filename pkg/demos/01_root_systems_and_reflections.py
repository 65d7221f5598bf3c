"""Root systems of the classical Lie superalgebras and odd reflections.

Weights live in the half-integral lattice spanned by eps_1..eps_m and
delta_1..delta_n, with the supertrace form (eps_i, eps_j) = delta_ij =
-(delta_i, delta_j).  A positive system is encoded by a total order on the
basis symbols.
"""

from superdenom import (
    build_root_datum,
    standard_order,
    all_basis_orders,
    positive_system,
    odd_reflect,
    Weight,
    inner,
    is_isotropic,
)

print("== gl(2,1) ==")
datum = build_root_datum("GL", 2, 1)
print("even roots:", sorted(map(repr, datum.even_roots)))
print("odd roots: ", sorted(map(repr, datum.odd_roots)))
print("defect:", datum.defect)

print()
print("== the order e1 > d1 > e2 ==")
system = positive_system(datum, standard_order("GL", 2, 1, "ede"))
print("simple roots:", [repr(a) for a in system.simple_roots])
print("rho =", system.rho, " rho0 =", system.rho0, " rho1 =", system.rho1)

print()
print("== odd reflection at e1 - d1 ==")
alpha = Weight.eps(1, (2, 1)) - Weight.delta(1, (2, 1))
assert is_isotropic(alpha)
reflected = odd_reflect(system, alpha)
print("new simple roots:", [repr(a) for a in reflected.simple_roots])
print("rho shift:", reflected.rho - system.rho, "= alpha:", alpha)

print()
print("== B(1,1): a non-isotropic simple root appears ==")
b = build_root_datum("B", 1, 1)
sysb = positive_system(b, standard_order("B", 1, 1, "de"))
for a in sysb.simple_roots:
    print(f"  {a}: (a, a) = {inner(a, a)}")

print()
print("== all positive systems of D(2,1) (one per basis order) ==")
for order in all_basis_orders("D", 2, 1):
    s = positive_system(build_root_datum("D", 2, 1), order)
    print(f"  {order}:  Pi = {[repr(a) for a in s.simple_roots]}")
