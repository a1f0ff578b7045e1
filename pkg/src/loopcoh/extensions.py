"""Loop extensions of Z/m by Z/n built from factor sets.

The element ``(a, z)`` with ``a in Z/n`` and ``z in Z/m`` is stored at
index ``a*m + z`` and the product is

    (a, w) . (b, z) = (a + b, f(a, b) + w t**b + z).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import modlinalg
from .cochains import Cochain, CyclicModule, delta1, delta1_matrix
from .cohomology import cohomology, default_brute_limit
from .loops import FiniteLoop, check_loop, loop_to_text, nucleus

__all__ = [
    "ExtensionError",
    "ExtensionLoop",
    "build_extension",
    "extract_factor_set",
    "equivalent",
    "witness_isomorphism",
    "classify",
    "kernel_is_central",
]


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExtensionLoop:
    loop: FiniteLoop
    module: CyclicModule
    factor_set: Cochain
    law: str = ""

    @property
    def table(self) -> np.ndarray:
        return self.loop.table

    def element(self, a: int, z: int) -> int:
        return a * self.module.m + z

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(int(index), self.module.m)

    def provenance(self) -> dict:
        return {
            "n": self.module.n,
            "m": self.module.m,
            "t": self.module.t,
            "f": self.factor_set.values.reshape(-1).tolist(),
            "law": self.law,
        }

    def to_json(self) -> str:
        return json.dumps({"rows": self.loop.rows(), "provenance": self.provenance()})

    def save(self, path, fmt: str | None = None) -> None:
        path = Path(path)
        fmt = fmt or ("json" if path.suffix == ".json" else "text")
        if fmt == "json":
            path.write_text(self.to_json() + "\n")
        else:
            head = "# provenance: " + json.dumps(self.provenance()) + "\n"
            path.write_text(head + loop_to_text(self.loop))


def build_extension(f: Cochain, module: CyclicModule | None = None, law: str = "") -> ExtensionLoop:
    module = f.module if module is None else module
    if f.module != module or f.arity != 2:
        raise ExtensionError("factor set must be a 2-cochain over the given module")
    if not f.is_normalized():
        raise ExtensionError("factor set is not normalized; (0, 0) would not be an identity")
    n, m = module.n, module.m
    idx = np.arange(n * m)
    a, w = idx // m, idx % m
    A, B = a[:, None], a[None, :]
    W, Z = w[:, None], w[None, :]
    top = (A + B) % n
    bottom = (f.values[A, B] + W * module.powers[B] + Z) % m
    table = top * m + bottom
    return ExtensionLoop(check_loop(table), module, f, law)


def _projection_ok(loop: FiniteLoop, n: int, m: int) -> bool:
    proj = np.arange(loop.order) // m
    return bool(np.array_equal(proj[loop.table], (proj[:, None] + proj[None, :]) % n))


def extract_factor_set(ext, module: CyclicModule | None = None, section=None) -> Cochain:
    """Factor set of an extension relative to a normalized section.

    ``ext`` is an :class:`ExtensionLoop` or a plain :class:`FiniteLoop`
    using the pair indexing (then ``module`` is required).  ``section`` is
    either a 1-cochain ``h`` (meaning ``s(x) = (x, h(x))``) or a list of
    element indices ``s(0), ..., s(n-1)``; the default is ``s(x) = (x, 0)``.
    ``f(x, y)`` is the ``k`` with ``s(x) s(y) = s(x + y) . (0, k)``.
    """
    if isinstance(ext, ExtensionLoop):
        loop, module = ext.loop, module or ext.module
    else:
        loop = ext
        if module is None:
            raise ExtensionError("module is required for a plain loop")
    n, m = module.n, module.m
    if loop.order != n * m:
        raise ExtensionError(f"loop of order {loop.order} is not an extension of Z/{n} by Z/{m}")
    if not _projection_ok(loop, n, m):
        raise ExtensionError("(a, z) -> a is not a homomorphism onto Z/n")
    if section is None:
        s = np.arange(n) * m
    elif isinstance(section, Cochain):
        if section.arity != 1:
            raise ExtensionError("section cochain must have arity 1")
        s = np.arange(n) * m + section.values
    else:
        s = np.asarray(section, dtype=np.int64)
    if s[0] != 0:
        raise ExtensionError("section is not normalized: s(0) must be the identity")
    if not np.array_equal(s // m, np.arange(n)):
        raise ExtensionError("section does not split the projection")
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    prod = loop.table[s[x], s[y]]
    k = loop.left_div(s[(x + y) % n], prod)
    if (k // m).any():
        raise ExtensionError("quotient s(x+y) \\ s(x)s(y) is not in the kernel")
    return Cochain(module, k % m)


def equivalent(f: Cochain, g: Cochain, module: CyclicModule | None = None, limit: int | None = None) -> Cochain | None:
    """A 1-cochain ``h`` with ``g - f = delta1(h)``, or ``None``."""
    module = f.module if module is None else module
    if g.module != module or f.module != module:
        raise ValueError("cochains must share the module")
    n, m = module.n, module.m
    diff = (g - f).free()
    if not diff.any():
        return Cochain.zeros(module, 1)
    if n == 1:
        return None
    limit = default_brute_limit() if limit is None else limit
    if m ** (n - 1) <= limit:
        from itertools import product

        for free in product(range(m), repeat=n - 1):
            h = Cochain(module, (0,) + free)
            if np.array_equal(delta1(h).free(), diff):
                return h
        return None
    x = modlinalg.solve(delta1_matrix(module), diff, m)
    if x is None:
        return None
    return Cochain(module, np.concatenate([[0], x]))


def witness_isomorphism(f: Cochain, h: Cochain, module: CyclicModule | None = None) -> bool:
    """Check that ``(a, z) -> (a, z + h(a))`` maps the extension of
    ``f + delta1(h)`` onto that of ``f``, fixing the kernel and the
    quotient."""
    module = f.module if module is None else module
    n, m = module.n, module.m
    if not h.is_normalized():
        return False
    src = build_extension(f + delta1(h), module).loop.table
    dst = build_extension(f, module).loop.table
    idx = np.arange(n * m)
    a, z = idx // m, idx % m
    phi = a * m + (z + h.values[a]) % m
    if len(set(phi.tolist())) != n * m:
        return False
    if not np.array_equal(phi[:m], np.arange(m)):  # kernel inclusion
        return False
    if not np.array_equal(phi // m, a):  # projection
        return False
    return bool(np.array_equal(phi[src], dst[phi[:, None], phi[None, :]]))


def kernel_is_central(ext: ExtensionLoop) -> bool:
    t = ext.loop.table
    kern = np.arange(ext.module.m)
    return bool(np.array_equal(t[kern, :], t[:, kern].T))


def kernel_in_nucleus(ext: ExtensionLoop) -> bool:
    return set(range(ext.module.m)) <= set(nucleus(ext.loop))


def classify(spec, module: CyclicModule, **kwargs) -> list[ExtensionLoop]:
    """One extension per cohomology class, each checked against the law."""
    report = cohomology(spec, module, **kwargs)
    if report.representatives is None:
        raise ExtensionError(f"{report.cocycle_count} cocycles are too many to list representatives")
    name = getattr(spec, "name", "") or "custom"
    out = []
    for rep in report.representatives:
        ext = build_extension(rep, module, law=name)
        if not spec.holds(ext.loop):
            raise ExtensionError(f"extension from cocycle {rep.values.tolist()} violates the law")
        out.append(ext)
    return out
