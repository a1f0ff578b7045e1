"""From a law to its differential on 2-cochains.

Replaying the right side of a law emits one factor-set term per pairing;
the canonical left side contributes the negative terms.  Arguments to the
right of a pairing act on its term, shown as a trailing factor.
"""

import numpy as np

from loopcoh import Cochain, CyclicModule, builtin_law, delta1, verify_delta_squared

for name in ["bol-unrepeated", "bol", "left-moufang"]:
    spec = builtin_law(name)
    print(f"{name}:")
    for line in spec.term_strings():
        print("   ", line)

module = CyclicModule(3, 2)
h = Cochain(module, (0, 1, 0))
print("\ndelta1 of h = (h(1), h(2)) = (1, 0) over Z/2:", delta1(h).free().tolist())

f = Cochain.from_entries(module, {(1, 1): 1})
d = builtin_law("bol").apply(f)
print("Bol differential of the indicator of (1,1) is zero?", d.is_zero())
print("   nonzero at (y, x, z) =", [tuple(map(int, i)) for i in np.argwhere(d.values)][:4], "...")

print("\nCoboundaries are cocycles (delta squared vanishes):")
for n, m, t in [(3, 2, 1), (3, 7, 2), (4, 5, 2)]:
    print(f"   n={n} m={m} t={t}:", verify_delta_squared(builtin_law("bol"), CyclicModule(n, m, t), exhaustive=True))
