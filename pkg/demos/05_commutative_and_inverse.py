"""Commutative extensions and the inverse property.

Commutative extensions correspond to symmetric factor sets.  Enumeration
gives m^(n(n-1)/2) of them and m^(n-1)/gcd(n, m) coboundaries; a
previously printed closed form for the class count is shown next to the
enumerated count.
"""

from loopcoh import CyclicModule, builtin_law, cohomology, inverse_property_count

comm = builtin_law("commutativity")
print(" n  m  cocycles  coboundaries  H2  closed form")
for n in range(2, 6):
    for m in range(2, 5):
        rep = cohomology(comm, CyclicModule(n, m), representative_limit=0)
        flag = "  MISMATCH" if rep.mismatch else ""
        print(f"{n:>2} {m:>2} {rep.cocycle_count:>9} {rep.coboundary_count:>13} {rep.h2_count:>3}  {rep.closed_form['h2']}{flag}")

print("\nUnique inverses: f(x,-x) = f(-x,x) t^(-x)")
for n, m, t in [(3, 2, 1), (2, 3, 2), (4, 5, 2), (4, 5, 4), (6, 7, 3)]:
    c = inverse_property_count(CyclicModule(n, m, t), method="linear")
    print(f"   n={n} m={m} t={t}: {c['residualZero']} of {c['normalizedCochains']} pass, {c['classes']} classes")
