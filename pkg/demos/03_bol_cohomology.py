"""Left Bol extensions of Z/2 by Z/3.

There are 16 normalized factor sets.  Exactly four are Bol cocycles, and
they are exactly the four coboundaries, so every such Bol extension is
equivalent to the direct product.
"""

from loopcoh import CyclicModule, builtin_law, classify, cocycles, cohomology

module = CyclicModule(3, 2)
bol = builtin_law("bol")

print("Bol cocycles, as (f11, f12, f21, f22):")
for f in cocycles(bol, module):
    print("   ", tuple(f.free().tolist()))

report = cohomology(bol, module)
print()
print(report.summary())

(ext,) = classify(bol, module)
print("\nThe one extension class is represented by an associative loop:", ext.loop.is_associative())

print("\nLarger moduli use the modular linear algebra path:")
for n, m in [(3, 4), (4, 4), (5, 6), (6, 6)]:
    rep = cohomology(bol, CyclicModule(n, m), representative_limit=0)
    print(f"   n={n} m={m}: cocycles={rep.cocycle_count} coboundaries={rep.coboundary_count} H2={rep.h2_count} [{rep.method}]")
