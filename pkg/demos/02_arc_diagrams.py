"""Arc diagrams: non-crossing matchings encoding maximal isotropic sets.

Dots are eps-type vertices, crosses are delta-type.  Each arc contributes
the root (left end) - (right end); the bracket weight [[gamma]] of an arc
collects the nested arcs below it with alternating signs and is the exponent
appearing in the generalized denominator identities.
"""

from superdenom import (
    build_root_datum,
    standard_order,
    positive_system,
    enumerate_diagrams,
    reduce_to_simple,
    build_nice,
)
from superdenom.diagrams import ArcDiagram, odd_reflect_diagram, interval_reflect

print("== the gl(5,4) diagram over e1 > d1 > e2 > d2 > d3 > e3 > e4 > d4 > e5 ==")
system = positive_system(build_root_datum("GL", 5, 4), standard_order("GL", 5, 4, "ededdeede"))
X = ArcDiagram(system.order, [(0, 3), (1, 2), (4, 5), (7, 8)])
print(X.ascii())
print("S(X):", [repr(g) for g in X.isotropic_set()])
for g in X.isotropic_set():
    print(f"  [[{g}]] = {X.bracket(g)}   ]]{g}[[ = {X.open_bracket(g)}")

print()
print(f"this order carries {len(enumerate_diagrams(system))} diagrams in total")

print()
print("== odd and interval reflections ==")
Y = odd_reflect_diagram(X, (1, 2))
print("after the odd reflection at the (d1, e2) arc:")
print(Y.ascii())
Z = interval_reflect(X, 0)
print("after the interval reflection over [e1, d2]:")
print(Z.ascii())

print()
print("== reduction to a simple diagram ==")
order = standard_order("GL", 3, 3, "ededed")
W = ArcDiagram(order, [(0, 5), (1, 2), (3, 4)])
print(W.ascii())
moves, final = reduce_to_simple(W)
print("moves:", moves)
print(final.ascii())

print()
print("== nice diagrams make every bracket a positive root combination ==")
N = build_nice(system)
print(N.ascii())
for g in N.isotropic_set():
    print(f"  [[{g}]] = {N.bracket(g)}  (in the positive cone: "
          f"{system.in_positive_root_cone(N.bracket(g))})")
