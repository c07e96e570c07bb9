"""Walk through X, Y over GL2(F_3): equal characters, matching orbit types, and the bijection.

    python demos/borel_orbits.py
"""

from gl2sets import field_of_order, build_group
from gl2sets.gset import build_X, build_Y, hset_isomorphic, orbit_decomposition, restrict
from gl2sets.linear_group import standard_subgroups
from gl2sets.perm_module import perm_character

G = build_group(field_of_order(3))
S = standard_subgroups(G)
X, Y = build_X(G), build_Y(G)
print(f"|G| = {G.order}, #X = {X.size}, #Y = {Y.size}")

chi_x, chi_y = perm_character(X), perm_character(Y)
for g in G.class_representatives():
    g = int(g)
    print(f"  class of (a,b,c,d) = {tuple(G.entries[g].tolist())}: fixes {chi_x(g)} in X, {chi_y(g)} in Y")

# the two sets are not isomorphic under G, but are under B
for name in ("B", "Tprime"):
    H = getattr(S, name)
    print(f"{name}: orbits on X {orbit_decomposition(restrict(X, H)).sizes()}, "
          f"on Y {orbit_decomposition(restrict(Y, H)).sizes()}")
    cmp = hset_isomorphic(X, Y, H)
    print(f"  equivariant bijection: {cmp.bijection}")
