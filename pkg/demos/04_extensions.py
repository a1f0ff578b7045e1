"""Building extensions, reading factor sets back, and equivalence.

The element (a, z) sits at index a*m + z.  Changing the section by h
changes the factor set by delta1(h), and (a, z) -> (a, z + h(a)) is the
matching isomorphism of extensions.
"""

from loopcoh import Cochain, CyclicModule, build_extension, builtin_law, delta1, equivalent, extract_factor_set, witness_isomorphism

module = CyclicModule(3, 7, 2)  # Z/3 acting on Z/7 through multiplication by 2
f = Cochain.from_free(module, [1, 0, 3, 5])
ext = build_extension(f)
print("order", ext.loop.order, "associative:", ext.loop.is_associative(), "commutative:", ext.loop.is_commutative())
print("factor set read back equals f:", extract_factor_set(ext) == f)

h = Cochain(module, (0, 4, 2))
g = extract_factor_set(ext, section=h)
print("with section s(x) = (x, h(x)) the factor set moves by delta1(h):", g - f == delta1(h))
print("equivalent() finds a witness (unique up to kernel of delta1):", equivalent(f, g).values.tolist())
print("the witness map is an isomorphism of extensions:", witness_isomorphism(f, h))

m32 = CyclicModule(3, 2)
bol = builtin_law("bol")
print("\nOver Z/3 by Z/2, which of the 16 factor sets give Bol loops?")
for f in [Cochain.from_entries(m32, {(1, 1): 1, (1, 2): 1, (2, 1): 1}), Cochain.from_entries(m32, {(1, 1): 1})]:
    print("   ", f.free().tolist(), "->", bol.holds(build_extension(f).loop))
