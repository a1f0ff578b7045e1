"""Finite loops given by Cayley tables.

Elements are the integers ``0..q-1`` and ``0`` is always the identity.
Tables whose identity sits elsewhere are relabelled by :func:`check_loop`
with ``relabel=True``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dsl import LawIR, Product, ProductTerm, position_tree

__all__ = [
    "LoopError",
    "FiniteLoop",
    "InnerMap",
    "check_loop",
    "cyclic_group",
    "direct_product",
    "inner_maps",
    "verify_m_composition",
    "verify_commutation_formula",
    "commutation_rhs",
    "nucleus",
    "law_holds",
    "evaluate_word",
    "load_loop",
    "save_loop",
    "enumerate_loops",
]

DEFAULT_EXHAUSTIVE_LIMIT = 64


class LoopError(ValueError):
    pass


class FiniteLoop:
    """An immutable Cayley table with identity element 0."""

    def __init__(self, table, *, _checked: bool = False):
        table = np.array(table, dtype=np.int64)
        if not _checked:
            _validate(table)
        table.setflags(write=False)
        self.table = table
        self.order = table.shape[0]
        # ldiv[x, z] = y with x*y = z ; rdiv[z, y] = x with x*y = z
        q = self.order
        ldiv = np.empty_like(table)
        rdiv = np.empty_like(table)
        idx = np.arange(q)
        for x in range(q):
            ldiv[x, table[x]] = idx
            rdiv[table[:, x], x] = idx
        ldiv.setflags(write=False)
        rdiv.setflags(write=False)
        self._ldiv = ldiv
        self._rdiv = rdiv

    identity = 0

    def __repr__(self):
        return f"FiniteLoop(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, x, y):
        return self.table[x, y]

    def left_div(self, x, z):
        """The ``y`` with ``x*y = z``."""
        return self._ldiv[x, z]

    def right_div(self, z, y):
        """The ``x`` with ``x*y = z``."""
        return self._rdiv[z, y]

    def is_associative(self) -> bool:
        t = self.table
        return bool(np.array_equal(t[t], t[:, t]))  # (xy)z vs x(yz)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_group(self) -> bool:
        return self.is_associative()

    def inverses(self) -> tuple[np.ndarray, np.ndarray]:
        """(left inverses, right inverses): ``l[x]*x = 0`` and ``x*r[x] = 0``."""
        q = self.order
        zero = np.zeros(q, dtype=np.int64)
        return self._rdiv[zero, np.arange(q)], self._ldiv[np.arange(q), zero]

    def has_two_sided_inverses(self) -> bool:
        left, right = self.inverses()
        return bool(np.array_equal(left, right))

    def rows(self) -> list[list[int]]:
        return self.table.tolist()


def _validate(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
        raise LoopError(f"table must be a non-empty square array, got shape {table.shape}")
    q = table.shape[0]
    if table.min() < 0 or table.max() >= q:
        raise LoopError(f"entries must lie in 0..{q - 1}")
    full = np.arange(q)
    for i in range(q):
        row = np.sort(table[i])
        if not np.array_equal(row, full):
            dup = int(row[np.nonzero(np.diff(row) == 0)[0][0]])
            raise LoopError(f"not a Latin square: row {i} repeats {dup}")
    for j in range(q):
        col = np.sort(table[:, j])
        if not np.array_equal(col, full):
            dup = int(col[np.nonzero(np.diff(col) == 0)[0][0]])
            raise LoopError(f"not a Latin square: column {j} repeats {dup}")
    if not (np.array_equal(table[0], full) and np.array_equal(table[:, 0], full)):
        raise LoopError("element 0 is not a two-sided identity")


def check_loop(table, relabel: bool = False) -> FiniteLoop:
    """Validate ``table`` as a loop with identity 0.

    With ``relabel=True`` a table whose identity is some other element
    ``e`` is first relabelled by swapping ``e`` and ``0``.
    """
    t = np.array(table, dtype=np.int64)
    if relabel and t.ndim == 2 and t.shape[0] == t.shape[1]:
        q = t.shape[0]
        full = np.arange(q)
        for e in range(q):
            if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
                if e != 0:
                    perm = full.copy()
                    perm[[0, e]] = perm[[e, 0]]
                    # new[perm[a], perm[b]] = perm[t[a, b]]
                    new = np.empty_like(t)
                    new[np.ix_(perm, perm)] = perm[t]
                    t = new
                break
    _validate(t)
    return FiniteLoop(t, _checked=True)


def cyclic_group(q: int) -> FiniteLoop:
    i = np.arange(q)
    return FiniteLoop((i[:, None] + i[None, :]) % q, _checked=True)


def direct_product(a: FiniteLoop, b: FiniteLoop) -> FiniteLoop:
    """Product loop with element ``(x, z)`` stored at ``x*b.order + z``."""
    qa, qb = a.order, b.order
    x = np.arange(qa * qb)
    xa, xb = x // qb, x % qb
    table = a.table[xa[:, None], xa[None, :]] * qb + b.table[xb[:, None], xb[None, :]]
    return FiniteLoop(table, _checked=True)


# --------------------------------------------------------------------------
# inner mappings


@dataclass(frozen=True)
class InnerMap:
    perm: tuple[int, ...]
    kind: str  # "L", "R", "T" or "M"
    params: tuple[int, ...]

    def __call__(self, a):
        return self.perm[a]

    def inverse(self) -> "InnerMap":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return InnerMap(tuple(inv), self.kind + "^-1", self.params)

    def then(self, other: "InnerMap") -> tuple[int, ...]:
        """Permutation of ``other ∘ self`` (apply self first)."""
        return tuple(other.perm[p] for p in self.perm)

    def is_bijection(self) -> bool:
        return sorted(self.perm) == list(range(len(self.perm)))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))


def _left_inner(loop: FiniteLoop, x: int, y: int) -> np.ndarray:
    # L(x,y) = L_{yx}^-1 L_y L_x : a -> (yx) \ (y(xa))
    t = loop.table
    a = np.arange(loop.order)
    return loop.left_div(t[y, x], t[y, t[x, a]])


def _right_inner(loop: FiniteLoop, x: int, y: int) -> np.ndarray:
    # R(x,y) = R_{xy}^-1 R_y R_x : a -> ((ax)y) / (xy)
    t = loop.table
    a = np.arange(loop.order)
    return loop.right_div(t[t[a, x], y], t[x, y])


def _middle_inner(loop: FiniteLoop, x: int) -> np.ndarray:
    # T_x = L_x^-1 R_x : a -> x \ (ax)
    t = loop.table
    a = np.arange(loop.order)
    return loop.left_div(x, t[a, x])


def _m_inner(loop: FiniteLoop, x: int, y: int) -> np.ndarray:
    # (xa)y = x(M(x,y)a . y)
    t = loop.table
    a = np.arange(loop.order)
    return loop.right_div(loop.left_div(x, t[t[x, a], y]), y)


def inner_maps(loop: FiniteLoop, x: int, y: int) -> dict[str, InnerMap]:
    """The four inner maps ``L(x,y)``, ``R(x,y)``, ``T_x`` and ``M(x,y)``.

    Maps compose right to left, so ``L(x,y)(a) = (yx) \\ (y(xa))``.
    ``M`` is solved directly from ``(xa)y = x(M(x,y)(a) y)``.
    """
    return {
        "L": InnerMap(tuple(_left_inner(loop, x, y).tolist()), "L", (x, y)),
        "R": InnerMap(tuple(_right_inner(loop, x, y).tolist()), "R", (x, y)),
        "T": InnerMap(tuple(_middle_inner(loop, x).tolist()), "T", (x,)),
        "M": InnerMap(tuple(_m_inner(loop, x, y).tolist()), "M", (x, y)),
    }


def _inverse_perm(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def m_composition(loop: FiniteLoop, x: int, y: int) -> np.ndarray:
    """``T_y^-1 L(y,x)^-1 T_{xy} R(x,y) T_x^-1`` as a permutation array."""
    xy = int(loop.table[x, y])
    perm = _inverse_perm(_middle_inner(loop, x))
    perm = _right_inner(loop, x, y)[perm]
    perm = _middle_inner(loop, xy)[perm]
    perm = _inverse_perm(_left_inner(loop, y, x))[perm]
    perm = _inverse_perm(_middle_inner(loop, y))[perm]
    return perm


def verify_m_composition(loop: FiniteLoop, x: int, y: int) -> bool:
    """Whether the composed formula for ``M(x,y)`` matches the direct solution."""
    return bool(np.array_equal(m_composition(loop, x, y), _m_inner(loop, x, y)))


def commutation_rhs(loop: FiniteLoop, x: int, y: int, a: int, b: int, literal: bool = False) -> int:
    """``xy . [M(xy, L b) L(y,x) T_y M(x,y) a . L b]`` with ``L = L(y, xa)``.

    With ``literal=True`` the argument order ``L(xa, y)`` is used instead;
    that variant does not hold in general under the inner-map conventions
    used here.
    """
    t = loop.table
    xa = int(t[x, a])
    xy = int(t[x, y])
    c = int(_m_inner(loop, x, y)[a])
    c = int(_middle_inner(loop, y)[c])
    c = int(_left_inner(loop, y, x)[c])
    inner = _left_inner(loop, xa, y) if literal else _left_inner(loop, y, xa)
    lb = int(inner[b])
    c = int(_m_inner(loop, xy, lb)[c])
    return int(t[xy, t[c, lb]])


def verify_commutation_formula(loop: FiniteLoop, x: int, y: int, a: int, b: int, literal: bool = False) -> bool:
    t = loop.table
    return int(t[t[x, a], t[y, b]]) == commutation_rhs(loop, x, y, a, b, literal)


def nucleus(loop: FiniteLoop) -> list[int]:
    """Elements associating with every pair in all three positions."""
    t = loop.table
    # assoc[x, y, z] = ((xy)z == x(yz))
    assoc = t[t] == t[:, t]
    left = assoc.all(axis=(1, 2))  # a in first slot
    middle = assoc.all(axis=(0, 2))
    right = assoc.all(axis=(0, 1))
    return [int(a) for a in np.nonzero(left & middle & right)[0]]


# --------------------------------------------------------------------------
# identities


def evaluate_word(word: ProductTerm, values, mul):
    """Evaluate a product tree whose leaves index into ``values``.

    ``mul`` is any binary operation; it is applied elementwise so numpy
    arrays of assignments work unchanged.
    """
    if isinstance(word, Product):
        return mul(evaluate_word(word.left, values, mul), evaluate_word(word.right, values, mul))
    return values[word]


def law_holds(
    loop: FiniteLoop,
    ir: LawIR,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    force: bool = False,
    samples: int = 20000,
    rng: np.random.Generator | None = None,
) -> tuple[bool, tuple[int, ...] | None]:
    """Check ``ir`` on every assignment of its variables.

    Returns ``(holds, counterexample)`` where the counterexample is the
    lexicographically first failing assignment (variables in ``ir`` order).
    Loops larger than ``exhaustive_limit`` are sampled unless ``force``.
    """
    q, v = loop.order, ir.num_variables
    t = loop.table
    if q <= exhaustive_limit or force:
        grids = np.indices((q,) * v).reshape(v, -1)
    else:
        rng = rng if rng is not None else np.random.default_rng(0)
        grids = rng.integers(0, q, size=(v, samples))
        order = np.lexsort(grids[::-1])
        grids = grids[:, order]
    values = {p: grids[ir.rho[p - 1] - 1] for p in range(1, ir.n + 1)}
    mul = lambda a, b: t[a, b]  # noqa: E731
    lhs = evaluate_word(position_tree(ir.lhs), values, mul)
    rhs = evaluate_word(position_tree(ir.rhs), values, mul)
    bad = np.nonzero(lhs != rhs)[0]
    if len(bad) == 0:
        return True, None
    return False, tuple(int(g) for g in grids[:, bad[0]])


# --------------------------------------------------------------------------
# I/O


def save_loop(loop: FiniteLoop, path, fmt: str | None = None, extra: dict | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "text")
    if fmt == "json":
        payload = {"rows": loop.rows()}
        if extra:
            payload.update(extra)
        path.write_text(json.dumps(payload) + "\n")
    else:
        path.write_text(loop_to_text(loop))


def loop_to_text(loop: FiniteLoop) -> str:
    return "".join(" ".join(str(v) for v in row) + "\n" for row in loop.rows())


def load_loop(path, relabel: bool = True) -> FiniteLoop:
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        rows = json.loads(text)["rows"]
    else:
        rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    return check_loop(rows, relabel=relabel)


def enumerate_loops(q: int, limit: int | None = None):
    """Yield loops of order ``q`` (normalised Latin squares) by backtracking.

    Row and column 0 are fixed to the identity; cells are filled row by
    row.  No isomorphism reduction is done.
    """
    table = [[None] * q for _ in range(q)]
    for i in range(q):
        table[0][i] = i
        table[i][0] = i
    cells = [(i, j) for i in range(1, q) for j in range(1, q)]
    rows_used = [set(table[i][0:1]) for i in range(q)]
    cols_used = [set([table[0][j]]) for j in range(q)]
    count = 0

    def fill(k):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if k == len(cells):
            count += 1
            yield FiniteLoop([row[:] for row in table], _checked=True)
            return
        i, j = cells[k]
        for v in range(q):
            if v in rows_used[i] or v in cols_used[j]:
                continue
            table[i][j] = v
            rows_used[i].add(v)
            cols_used[j].add(v)
            yield from fill(k + 1)
            rows_used[i].discard(v)
            cols_used[j].discard(v)
            table[i][j] = None
            if limit is not None and count >= limit:
                return

    yield from fill(0)
