"""Character identities for the natural representation.

The supercharacter of the natural module satisfies a denominator-style
identity whose constant is fitted from the series and checked exactly, first
with the bracket exponents of the distinguished chain, then in the
highest-weight form over any simple system containing enough isotropic roots
orthogonal to rho + Lambda.
"""

from superdenom import natural_supercharacter, verify_chv, verify_xx, verify_kwfor, kw_systems
from superdenom.kw import base_system

print("== supercharacters ==")
for fam, m, n in [("GL", 2, 1), ("B", 2, 1), ("D", 2, 2)]:
    system = base_system(fam, m, n)
    sch = natural_supercharacter(fam, m, n, system)
    terms = "  ".join(f"{c:+d} e^({w})" for w, c in sorted(sch.terms.items(), key=lambda t: t[0].coords2))
    print(f"  {fam}({m},{n}): {terms}")

print()
print("== the bracket-denominator identity and its constant ==")
for fam, m, n in [("GL", 2, 1), ("GL", 3, 2), ("B", 2, 1), ("D", 2, 1), ("D", 2, 2)]:
    rep = verify_chv(fam, m, n, 8)
    print(f"  {fam}({m},{n}): atp = {rep.atp}, fitted j_V = {rep.fitted}, "
          f"{'pass' if rep.passed else 'FAIL'}")

print()
print("== the even-group intermediate identity ==")
rep = verify_xx("B", 2, 1, 8)
print(f"  B(2,1): {'pass' if rep.passed else 'FAIL'} (constant {rep.fitted})")

print()
print("== the highest-weight form over qualifying simple systems ==")
found = kw_systems("GL", 3, 2)
print(f"  gl(3,2) has {len(found)} qualifying systems; checking the first two:")
for system, betas in found[:2]:
    rep = verify_kwfor("GL", 3, 2, system=system, depth=8)
    print(f"    {system.order}: b = {rep.fitted}, {'pass' if rep.passed else 'FAIL'}")
