"""The denominator and superdenominator identities, checked exactly.

Every identity is an equality of rational functions in the character ring;
here both sides are expanded as sparse integer series truncated by principal
height and compared coefficient by coefficient.
"""

from superdenom import (
    build_root_datum,
    standard_order,
    all_basis_orders,
    positive_system,
    enumerate_diagrams,
    verify,
    verify_glkk,
    lhs,
    window4,
)

print("== e^rho R-check for gl(1,1): a single geometric ray ==")
system = positive_system(build_root_datum("GL", 1, 1), standard_order("GL", 1, 1, "ed"))
series = lhs(system, "sd", window4(system, 4))
for w in series.support_sorted():
    print(f"  {series.coeff(w):+d} e^({w})")

print()
print("== the full-Weyl-group identity on every diagram of gl(2,2) ==")
datum = build_root_datum("GL", 2, 2)
for order in all_basis_orders("GL", 2, 2):
    system = positive_system(datum, order)
    for X in enumerate_diagrams(system):
        rep = verify("princ-sd", system, X=X, depth=8)
        tag = "pass" if rep.passed else "FAIL"
        print(f"  {order}  arcs={list(X.arcs)}  C={rep.constant}: {tag}")

print()
print("== the sharp-subgroup form with the open-bracket shift (mm) ==")
order = standard_order("B", 2, 2, "dede")
system = positive_system(build_root_datum("B", 2, 2), order)
for X in enumerate_diagrams(system):
    rep = verify("mm-sd", system, X=X, depth=8)
    print(f"  {order} arcs={list(X.arcs)}: {'pass' if rep.passed else 'FAIL'}")

print()
print("== the gl(k,k) lemma ==")
for k in (2, 3):
    rep = verify_glkk(k, depth=6)
    print(f"  k = {k}: {'pass' if rep.passed else 'FAIL'} (constant {rep.constant})")
