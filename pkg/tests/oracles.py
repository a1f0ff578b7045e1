"""Independent reference implementations used to check the library.

Everything here is written from the defining formulas with plain Python
integers, sharing no code with the package beyond the data types.
"""

from itertools import product
from math import gcd


def delta1_direct(h, n, m, t=1):
    """(d h)(x, y) = h(y) - h(x+y) + h(x) t^y as a dict."""
    return {(x, y): (h[y] - h[(x + y) % n] + h[x] * pow(t, y, m)) % m for x in range(n) for y in range(n)}


def bol_delta_direct(f, n, m, t=1):
    """Bol differential written out by hand, with the action t^z.

    +f(x,y).z + f(y,xy).z + f(y(xy),z) - f(y,x(yz)) - f(x,yz) - f(y,z)
    """
    out = {}
    for x, y, z in product(range(n), repeat=3):
        tz = pow(t, z, m)
        v = (
            f[x, y] * tz
            + f[y, (x + y) % n] * tz
            + f[(2 * y + x) % n, z]
            - f[y, (x + y + z) % n]
            - f[x, (y + z) % n]
            - f[y, z]
        )
        out[x, y, z] = v % m
    return out


def assoc_delta_direct(f, n, m, t=1):
    """Group 2-cocycle condition for x(yz) = (xy)z."""
    return {
        (x, y, z): (f[x, y] * pow(t, z, m) + f[(x + y) % n, z] - f[x, (y + z) % n] - f[y, z]) % m
        for x, y, z in product(range(n), repeat=3)
    }


def normalized_twococycles(n, m):
    """All normalized 2-cochains as dicts, in lexicographic order of free entries."""
    keys = [(x, y) for x in range(1, n) for y in range(1, n)]
    for vals in product(range(m), repeat=len(keys)):
        f = {(x, y): 0 for x in range(n) for y in range(n)}
        f.update(zip(keys, vals))
        yield f


def extension_mul(f, n, m, t=1):
    """Product on pairs (a, w) following the extension rule."""

    def mul(p, q):
        (a, w), (b, z) = p, q
        return ((a + b) % n, (f[a, b] + w * pow(t, b, m) + z) % m)

    return mul


def count_kernel_brute(A, m):
    """Number of x in (Z/m)^k with A x = 0, by enumeration."""
    k = len(A[0]) if A else 0
    count = 0
    for x in product(range(m), repeat=k):
        if all(sum(a * b for a, b in zip(row, x)) % m == 0 for row in A):
            count += 1
    return count


def homomorphism_count(n, m):
    return gcd(n, m)


def is_loop_table(rows):
    q = len(rows)
    full = list(range(q))
    return (
        all(sorted(r) == full for r in rows)
        and all(sorted(rows[i][j] for i in range(q)) == full for j in range(q))
        and rows[0] == full
        and [r[0] for r in rows] == full
    )
