"""Cochains of Z/n with coefficients in Z/m, and law-derived differentials.

The quotient is ``Q = Z/n`` and ``x in Q`` acts on ``z in Z/m`` by
``z . x = z * t**x``.  A 2-cochain is stored densely as an ``n x n``
integer array; normalized cochains vanish on row and column 0.

Differentials share a small duck-typed surface used by the cohomology
engine: ``target_arity``, ``apply`` (one cochain), ``apply_values``
(a stack of 2-cochains as an array), ``matrix`` (the linear map on the
``(n-1)**2`` free entries) and ``holds`` (check the law on a loop).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .dsl import LawIR, Product, ProductTerm, parse_law, position_names, variable_names
from .loops import FiniteLoop, evaluate_word, law_holds

__all__ = [
    "CyclicModule",
    "Cochain",
    "Term",
    "DifferentialSpec",
    "CommutativityDifferential",
    "InversePropertyDifferential",
    "BUILTIN_LAWS",
    "builtin_law",
    "valid_actions",
    "delta1",
    "delta1_values",
    "derive_differential",
    "apply_differential",
    "commutativity_delta",
    "inverse_property_residual",
    "verify_delta_squared",
    "normalized_cochains",
]


@dataclass(frozen=True)
class CyclicModule:
    """Z/m as a right Z/n-module, the generator of Z/n acting as ``t``."""

    n: int
    m: int
    t: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n, m >= 1, got n={self.n}, m={self.m}")
        t = self.t % self.m
        if gcd(t, self.m) != 1 or pow(t, self.n, self.m) != 1 % self.m:
            raise ValueError(
                f"t={self.t} is not a valid action: need gcd(t, m) = 1 and t**n = 1 mod m "
                f"(n={self.n}, m={self.m})"
            )
        object.__setattr__(self, "t", t)

    @property
    def trivial_action(self) -> bool:
        return self.t == 1 % self.m

    @property
    def powers(self) -> np.ndarray:
        """``t**x mod m`` for ``x = 0..n-1``."""
        return np.array([pow(self.t, x, self.m) for x in range(self.n)], dtype=np.int64)

    def act(self, z, x):
        return z * self.powers[np.asarray(x) % self.n] % self.m

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "t": self.t}


def valid_actions(n: int, m: int) -> list[int]:
    """Every ``t`` in ``0..m-1`` giving a module structure."""
    return [t for t in range(m) if gcd(t, m) == 1 and pow(t, n, m) == 1 % m]


@dataclass(frozen=True, eq=False)
class Cochain:
    module: CyclicModule
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64) % self.module.m
        n = self.module.n
        if vals.ndim < 1 or any(s != n for s in vals.shape):
            raise ValueError(f"cochain values must have shape ({n}, ...), got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, module: CyclicModule, arity: int) -> "Cochain":
        return cls(module, np.zeros((module.n,) * arity, dtype=np.int64))

    @classmethod
    def from_entries(cls, module: CyclicModule, entries: dict) -> "Cochain":
        """2-cochain from ``{(x, y): value}``; unspecified entries are 0."""
        f = np.zeros((module.n, module.n), dtype=np.int64)
        for (x, y), v in entries.items():
            f[x, y] = v
        return cls(module, f)

    @classmethod
    def from_free(cls, module: CyclicModule, free) -> "Cochain":
        """2-cochain from its ``(n-1)**2`` free entries, row-major."""
        n = module.n
        f = np.zeros((n, n), dtype=np.int64)
        f[1:, 1:] = np.asarray(free, dtype=np.int64).reshape(n - 1, n - 1)
        return cls(module, f)

    @property
    def arity(self) -> int:
        return self.values.ndim

    def free(self) -> np.ndarray:
        """Entries with every argument nonzero, flattened row-major."""
        return self.values[(slice(1, None),) * self.arity].reshape(-1)

    def is_normalized(self) -> bool:
        for axis in range(self.arity):
            if np.take(self.values, 0, axis=axis).any():
                return False
        return True

    def is_zero(self) -> bool:
        return not self.values.any()

    def key(self) -> tuple[int, ...]:
        return tuple(self.values.reshape(-1).tolist())

    def _check(self, other: "Cochain"):
        if not isinstance(other, Cochain) or other.module != self.module or other.arity != self.arity:
            raise ValueError("cochains must share module and arity")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.module, self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.module, self.values - other.values)

    def __neg__(self) -> "Cochain":
        return Cochain(self.module, -self.values)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and other.module == self.module
            and np.array_equal(other.values, self.values)
        )

    def __hash__(self):
        return hash((self.module, self.values.shape, self.values.tobytes()))

    def __lt__(self, other: "Cochain"):
        return self.key() < other.key()

    def __repr__(self):
        return f"Cochain(arity={self.arity}, module={self.module}, values={self.values.tolist()})"

    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "n": self.module.n,
            "m": self.module.m,
            "t": self.module.t,
            "values": self.values.reshape(-1).tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str | dict) -> "Cochain":
        d = json.loads(text) if isinstance(text, str) else text
        module = CyclicModule(int(d["n"]), int(d["m"]), int(d["t"]))
        shape = (module.n,) * int(d["arity"])
        return cls(module, np.array(d["values"], dtype=np.int64).reshape(shape))


def normalized_cochains(module: CyclicModule, arity: int = 2):
    """Iterate every normalized cochain, lexicographically by flat values."""
    from itertools import product

    n, m = module.n, module.m
    for free in product(range(m), repeat=(n - 1) ** arity):
        vals = np.zeros((n,) * arity, dtype=np.int64)
        vals[(slice(1, None),) * arity] = np.array(free, dtype=np.int64).reshape((n - 1,) * arity)
        yield Cochain(module, vals)


# --------------------------------------------------------------------------
# dimension one


def delta1_values(H: np.ndarray, module: CyclicModule) -> np.ndarray:
    """``(dh)(x, y) = h(y) - h(x + y) + h(x) t**y`` for a stack ``H`` of shape (N, n)."""
    n, m = module.n, module.m
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    tp = module.powers[y]
    H = np.asarray(H, dtype=np.int64)
    return (H[:, y] - H[:, (x + y) % n] + H[:, x] * tp) % m


def delta1(h: Cochain) -> Cochain:
    if h.arity != 1:
        raise ValueError(f"delta1 needs a 1-cochain, got arity {h.arity}")
    return Cochain(h.module, delta1_values(h.values[None, :], h.module)[0])


def delta1_matrix(module: CyclicModule) -> np.ndarray:
    """Matrix of ``h[1:] -> (dh)[1:, 1:]`` flattened row-major."""
    n = module.n
    eye = np.eye(n, dtype=np.int64)[1:]
    images = delta1_values(eye, module)[:, 1:, 1:].reshape(n - 1, -1)
    return images.T % module.m


# --------------------------------------------------------------------------
# identity-derived differentials


@dataclass(frozen=True)
class Term:
    """``sign * f(left, right) . (product of positions > suffix_start)``."""

    sign: int
    left: ProductTerm
    right: ProductTerm
    suffix_start: int

    def suffix(self, n: int) -> tuple[int, ...]:
        return tuple(range(self.suffix_start + 1, n + 1))


def _relabel(term: ProductTerm, names) -> str:
    if isinstance(term, Product):
        return f"({_relabel(term.left, names)}*{_relabel(term.right, names)})"
    return names[term]


def _sub_nest(lo: int, hi: int) -> ProductTerm:
    tree: ProductTerm = hi
    for p in range(hi - 1, lo - 1, -1):
        tree = Product(p, tree)
    return tree


@dataclass(frozen=True)
class DifferentialSpec:
    """Signed term list of the differential ``C^2 -> C^v`` of a law."""

    ir: LawIR
    terms: tuple[Term, ...]
    name: str = ""

    @property
    def source_arity(self) -> int:
        return 2

    @property
    def target_arity(self) -> int:
        return self.ir.num_variables

    @property
    def rho(self) -> tuple[int, ...]:
        return self.ir.rho

    # -- evaluation -------------------------------------------------------

    def _tables(self, module: CyclicModule):
        """Per-term (left index, right index, exponent) over all assignments."""
        n, v, ir = module.n, self.target_arity, self.ir
        grids = np.indices((n,) * v).reshape(v, -1)
        values = {p: grids[ir.rho[p - 1] - 1] for p in range(1, ir.n + 1)}
        add = lambda a, b: (a + b) % n  # noqa: E731
        out = []
        for term in self.terms:
            li = evaluate_word(term.left, values, add)
            ri = evaluate_word(term.right, values, add)
            ex = np.zeros(grids.shape[1], dtype=np.int64)
            for p in term.suffix(ir.n):
                ex = (ex + values[p]) % n
            out.append((term.sign, li, ri, ex))
        return out

    def apply_values(self, F: np.ndarray, module: CyclicModule) -> np.ndarray:
        """Images of a stack of 2-cochains ``F`` (N, n, n) as (N, n**v)."""
        F = np.asarray(F, dtype=np.int64)
        tp = module.powers
        out = np.zeros((F.shape[0], module.n**self.target_arity), dtype=np.int64)
        for sign, li, ri, ex in self._tables(module):
            out += sign * F[:, li, ri] * tp[ex]
        return out % module.m

    def apply(self, f: Cochain) -> Cochain:
        _require_two_cochain(f)
        vals = self.apply_values(f.values[None], f.module)[0]
        return Cochain(f.module, vals.reshape((f.module.n,) * self.target_arity))

    def matrix(self, module: CyclicModule) -> np.ndarray:
        n, m = module.n, module.m
        tp = module.powers
        rows = n**self.target_arity
        M = np.zeros((rows, (n - 1) ** 2), dtype=np.int64)
        r = np.arange(rows)
        for sign, li, ri, ex in self._tables(module):
            live = (li != 0) & (ri != 0)
            cols = (li[live] - 1) * (n - 1) + (ri[live] - 1)
            np.add.at(M, (r[live], cols), sign * tp[ex[live]])
        return M % m

    def holds(self, loop: FiniteLoop) -> bool:
        return law_holds(loop, self.ir)[0]

    # -- presentation -----------------------------------------------------

    def term_strings(self, use_variables: bool = True) -> list[str]:
        ir = self.ir
        if use_variables:
            vnames = variable_names(ir)
            names = {p: vnames[ir.rho[p - 1] - 1] for p in range(1, ir.n + 1)}
        else:
            pnames = position_names(ir.n)
            names = {p: pnames[p - 1] for p in range(1, ir.n + 1)}
        lines = []
        for term in self.terms:
            s = f"{'+' if term.sign > 0 else '-'} f({_relabel(term.left, names)}, {_relabel(term.right, names)})"
            suffix = term.suffix(ir.n)
            if suffix:
                word = names[suffix[0]]
                for p in suffix[1:]:
                    word = f"({word}*{names[p]})"
                s += f"·{word}"
            lines.append(s)
        return lines

    def to_dict(self) -> dict:
        pnames = position_names(self.ir.n)
        names = {p: pnames[p - 1] for p in range(1, self.ir.n + 1)}
        return {
            "law": self.name,
            "n": self.ir.n,
            "rho": list(self.ir.rho),
            "sourceArity": 2,
            "targetArity": self.target_arity,
            "terms": [
                {
                    "sign": term.sign,
                    "left": _relabel(term.left, names),
                    "right": _relabel(term.right, names),
                    "suffixStart": term.suffix_start,
                }
                for term in self.terms
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def derive_differential(ir: LawIR, name: str = "") -> DifferentialSpec:
    """Term list of the differential attached to a one-nested law.

    The right side is replayed while tracking the running product ``W``:
    the first pairing contributes ``+f(a_s, a_{s+1})``, a LEFT move
    absorbing ``a_i`` contributes ``+f(a_i, W)`` and a RIGHT move absorbing
    ``a_j`` contributes ``+f(W, a_j)``.  Each term is acted on by every
    position right of the span at the time it is emitted.  The canonical
    left side contributes ``-f(a_i, a_{i+1}(...a_n))`` for ``i < n``.
    """
    terms = []
    tree: ProductTerm | None = None
    for consumed, lo, hi in ir.rhs.spans():
        if tree is None:
            terms.append(Term(+1, consumed[0], consumed[1], hi))
            tree = Product(consumed[0], consumed[1])
        elif consumed[0] == lo:
            terms.append(Term(+1, lo, tree, hi))
            tree = Product(lo, tree)
        else:
            terms.append(Term(+1, tree, hi, hi))
            tree = Product(tree, hi)
    for i in range(1, ir.n):
        terms.append(Term(-1, i, _sub_nest(i + 1, ir.n), ir.n))
    return DifferentialSpec(ir, tuple(terms), name=name)


def apply_differential(spec, f: Cochain, module: CyclicModule | None = None) -> Cochain:
    if module is not None and module != f.module:
        raise ValueError("cochain and module disagree")
    return spec.apply(f)


def _require_two_cochain(f: Cochain):
    if f.arity != 2:
        raise ValueError(f"expected a 2-cochain, got arity {f.arity}")


# --------------------------------------------------------------------------
# built-in laws outside the association-law grammar


class CommutativityDifferential:
    """``(df)(x, y) = f(x, y) - f(y, x)``; cocycles are symmetric cochains."""

    name = "commutativity"
    target_arity = 2

    def _check(self, module: CyclicModule):
        if not module.trivial_action:
            raise ValueError("commutative extensions need the trivial action (t = 1)")

    def apply_values(self, F, module):
        self._check(module)
        F = np.asarray(F, dtype=np.int64)
        return ((F - F.transpose(0, 2, 1)) % module.m).reshape(F.shape[0], -1)

    def apply(self, f: Cochain) -> Cochain:
        _require_two_cochain(f)
        return Cochain(f.module, self.apply_values(f.values[None], f.module)[0].reshape(f.values.shape))

    def matrix(self, module):
        self._check(module)
        n, m = module.n, module.m
        k = n - 1
        M = np.zeros((n * n, k * k), dtype=np.int64)
        for x in range(1, n):
            for y in range(1, n):
                M[x * n + y, (x - 1) * k + (y - 1)] += 1
                M[x * n + y, (y - 1) * k + (x - 1)] -= 1
        return M % m

    def holds(self, loop: FiniteLoop) -> bool:
        return loop.is_commutative()

    def term_strings(self, use_variables: bool = True) -> list[str]:
        return ["+ f(x, y)", "- f(y, x)"]

    def to_dict(self) -> dict:
        return {"law": self.name, "sourceArity": 2, "targetArity": 2, "formula": "f(x,y) - f(y,x)"}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


class InversePropertyDifferential:
    """Residual ``f(x, -x) - f(-x, x) t**(-x)`` of the unique-inverse condition."""

    name = "inverse-property"
    target_arity = 1

    def apply_values(self, F, module):
        n, m = module.n, module.m
        F = np.asarray(F, dtype=np.int64)
        x = np.arange(n)
        neg = (-x) % n
        return (F[:, x, neg] - F[:, neg, x] * module.powers[neg]) % m

    def apply(self, f: Cochain) -> Cochain:
        _require_two_cochain(f)
        return Cochain(f.module, self.apply_values(f.values[None], f.module)[0])

    def matrix(self, module):
        n, m = module.n, module.m
        k = n - 1
        tp = module.powers
        M = np.zeros((n, k * k), dtype=np.int64)
        for x in range(1, n):
            y = (-x) % n
            M[x, (x - 1) * k + (y - 1)] += 1
            M[x, (y - 1) * k + (x - 1)] -= tp[y]
        return M % m

    def holds(self, loop: FiniteLoop) -> bool:
        return loop.has_two_sided_inverses()

    def term_strings(self, use_variables: bool = True) -> list[str]:
        return ["+ f(x, -x)", "- f(-x, x)·(-x)"]

    def to_dict(self) -> dict:
        return {
            "law": self.name,
            "sourceArity": 2,
            "targetArity": 1,
            "formula": "f(x,-x) - f(-x,x) t^(-x)",
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


def commutativity_delta(f: Cochain) -> Cochain:
    return CommutativityDifferential().apply(f)


def inverse_property_residual(f: Cochain, module: CyclicModule | None = None) -> Cochain:
    if module is not None and module != f.module:
        raise ValueError("cochain and module disagree")
    return InversePropertyDifferential().apply(f)


BUILTIN_LAWS = {
    "bol": "(y*(x*(y*z))) = ((y*(x*y))*z)",
    "bol-unrepeated": "(w*(x*(y*z))) = ((w*(x*y))*z)",
    "associativity": "(x*(y*z)) = ((x*y)*z)",
    "left-moufang": "(x*(y*(x*z))) = (((x*y)*x)*z)",
    "commutativity": None,
    "inverse-property": None,
}


def builtin_law(name: str):
    """Differential object for a built-in law name or an identity string."""
    if name == "commutativity":
        return CommutativityDifferential()
    if name == "inverse-property":
        return InversePropertyDifferential()
    if name in BUILTIN_LAWS:
        return derive_differential(parse_law(BUILTIN_LAWS[name]), name=name)
    return derive_differential(parse_law(name), name=name)


# --------------------------------------------------------------------------
# delta squared


def verify_delta_squared(
    spec,
    module: CyclicModule,
    *,
    random_samples: int = 100,
    exhaustive_limit: int = 10**6,
    exhaustive: bool = False,
    rng: np.random.Generator | None = None,
) -> bool:
    """Whether ``spec`` kills every coboundary ``delta1(h)``.

    Indicator 1-cochains are always swept (they generate C^1, so this is
    already a proof by linearity); ``random_samples`` further random
    ``h`` are added, and with ``exhaustive=True`` every normalized ``h``
    when there are at most ``exhaustive_limit`` of them.
    """
    n, m = module.n, module.m
    if n == 1 or m == 1:
        return True
    rng = rng if rng is not None else np.random.default_rng(0)
    H = [np.eye(n, dtype=np.int64)[1:]]
    if random_samples:
        R = rng.integers(0, m, size=(random_samples, n))
        R[:, 0] = 0
        H.append(R)
    if exhaustive and m ** (n - 1) <= exhaustive_limit:
        grid = np.indices((m,) * (n - 1)).reshape(n - 1, -1).T
        H.append(np.hstack([np.zeros((len(grid), 1), dtype=np.int64), grid]))
    H = np.vstack(H)
    images = delta1_values(H, module)
    return not spec.apply_values(images, module).any()
