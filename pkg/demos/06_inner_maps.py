"""Inner mappings of small loops.

Two composition formulas are checked on every loop of the bundled corpus:
the expression of M(x, y) through T, L and R, and the rewriting of
(x a)(y b).  The second one is checked with both argument orders of its
inner L map; only L(y, x a) holds in general.
"""

import itertools

from loopcoh import corpus, inner_maps, nucleus, verify_commutation_formula, verify_m_composition

for name, lp in corpus().items():
    q = lp.order
    m_ok = all(verify_m_composition(lp, x, y) for x, y in itertools.product(range(q), repeat=2))
    tuples = list(itertools.product(range(q), repeat=4))
    c_fail = sum(not verify_commutation_formula(lp, *t) for t in tuples)
    lit_fail = sum(not verify_commutation_formula(lp, *t, literal=True) for t in tuples)
    print(
        f"{name:<16} order {q}  associative={lp.is_associative()!s:<5}  nucleus={nucleus(lp)}  "
        f"M formula ok={m_ok}  commutation failures={c_fail}  with L(xa,y): {lit_fail}"
    )

lp = corpus()["order5-a"]
print("\nIn the order-5 loop, the inner maps at (1, 2):")
for kind, mp in inner_maps(lp, 1, 2).items():
    print(f"   {kind}: {mp.perm}")
