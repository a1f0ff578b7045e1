"""Cocycles, coboundaries and H^2 for a law over a cyclic module.

Counts always come from modular linear algebra.  When the normalized
2-cochains number at most ``brute_limit`` the cocycle set is also found by
brute-force evaluation of the differential, and the two are compared.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import modlinalg
from .cochains import Cochain, CommutativityDifferential, CyclicModule, InversePropertyDifferential, delta1_matrix, delta1_values, verify_delta_squared

__all__ = [
    "SizeLimitError",
    "OracleMismatchError",
    "CohomologyReport",
    "default_brute_limit",
    "brute_force_cocycles",
    "cocycle_generators",
    "cocycle_count",
    "cocycles",
    "coboundaries",
    "coboundary_count",
    "cohomology",
    "inverse_property_count",
    "reports_to_csv",
]


class SizeLimitError(RuntimeError):
    pass


class OracleMismatchError(AssertionError):
    pass


def default_brute_limit() -> int:
    return int(os.environ.get("LOOPCOH_BRUTE_LIMIT", 10**6))


def _free_count(module: CyclicModule) -> int:
    return module.m ** ((module.n - 1) ** 2)


def _free_to_dense(free: np.ndarray, n: int) -> np.ndarray:
    F = np.zeros((free.shape[0], n, n), dtype=np.int64)
    F[:, 1:, 1:] = free.reshape(-1, n - 1, n - 1)
    return F


def brute_force_cocycles(spec, module: CyclicModule, limit: int | None = None, chunk: int = 1 << 14) -> np.ndarray:
    """Every normalized ``f`` with ``spec(f) == 0``, by exhaustive evaluation.

    Returns an array of free-entry rows in lexicographic order.
    """
    limit = default_brute_limit() if limit is None else limit
    n, m = module.n, module.m
    k = (n - 1) ** 2
    total = m**k
    if total > limit:
        raise SizeLimitError(f"{total} normalized 2-cochains exceed the brute-force limit {limit}; use the linear method")
    weights = m ** np.arange(k - 1, -1, -1, dtype=np.int64)
    found = []
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        free = idx[:, None] // weights[None, :] % m
        images = spec.apply_values(_free_to_dense(free, n), module)
        found.append(free[~images.any(axis=1)])
    return np.vstack(found) if found else np.zeros((0, k), dtype=np.int64)


def cocycle_generators(spec, module: CyclicModule) -> list[tuple[np.ndarray, int]]:
    return modlinalg.kernel(spec.matrix(module), module.m)


def cocycle_count(spec, module: CyclicModule) -> int:
    if module.n == 1:
        return 1
    return modlinalg.kernel_size(spec.matrix(module), module.m)


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    return rows[np.lexsort(rows.T[::-1])]


def cocycles(spec, module: CyclicModule, method: str = "auto", limit: int | None = None) -> list[Cochain]:
    """All cocycles as cochains, lexicographically ordered."""
    limit = default_brute_limit() if limit is None else limit
    if module.n == 1:
        return [Cochain.zeros(module, 2)]
    if method == "brute" or (method == "auto" and _free_count(module) <= limit):
        rows = brute_force_cocycles(spec, module, limit)
    else:
        gens = cocycle_generators(spec, module)
        size = int(np.prod([o for _, o in gens])) if gens else 1
        if size > limit:
            raise SizeLimitError(f"{size} cocycles exceed the enumeration limit {limit}")
        rows = _sorted_rows(modlinalg.span(gens, (module.n - 1) ** 2, module.m))
    return [Cochain.from_free(module, r) for r in rows]


def coboundary_count(module: CyclicModule) -> int:
    """``m**(n-1) / #{h : delta1 h = 0}``."""
    n, m = module.n, module.m
    if n == 1 or m == 1:
        return 1
    return m ** (n - 1) // modlinalg.kernel_size(delta1_matrix(module), m)


def _coboundary_rows(module: CyclicModule) -> np.ndarray:
    n, m = module.n, module.m
    if n == 1:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((m,) * (n - 1)).reshape(n - 1, -1).T
    H = np.hstack([np.zeros((len(grid), 1), dtype=np.int64), grid])
    images = delta1_values(H, module)[:, 1:, 1:].reshape(len(H), -1)
    return _sorted_rows(np.unique(images, axis=0))


def coboundaries(module: CyclicModule, limit: int | None = None) -> list[Cochain]:
    """Image of delta1 over all normalized 1-cochains, lexicographically."""
    limit = default_brute_limit() if limit is None else limit
    if module.m ** (module.n - 1) > limit:
        raise SizeLimitError(f"{module.m ** (module.n - 1)} 1-cochains exceed the limit {limit}")
    return [Cochain.from_free(module, r) for r in _coboundary_rows(module)]


def _coboundaries_in_kernel(spec, module: CyclicModule) -> int:
    # |{delta1 h : spec(delta1 h) = 0}| = |ker(A D)| / |ker D|
    n, m = module.n, module.m
    if n == 1 or m == 1:
        return 1
    D = delta1_matrix(module)
    AD = spec.matrix(module) @ D % m
    return modlinalg.kernel_size(AD, m) // modlinalg.kernel_size(D, m)


def _law_name(spec) -> str:
    return getattr(spec, "name", "") or "custom"


def _as_number(x: Fraction):
    return x.numerator if x.denominator == 1 else float(x)


def closed_forms(spec, module: CyclicModule) -> dict:
    """Closed forms printed for trivial actions, where they exist."""
    n, m = module.n, module.m
    out = {"coboundaries": None, "cocycles": None, "h2": None}
    if not module.trivial_action:
        return out
    g = gcd(n, m)
    out["coboundaries"] = _as_number(Fraction((n - 1) * m, g))
    if isinstance(spec, CommutativityDifferential):
        out["cocycles"] = _as_number(Fraction(n * (n - 1) * m, 2))
        out["h2"] = _as_number(Fraction(n * g, 2))
    return out


@dataclass
class CohomologyReport:
    law: str
    module: CyclicModule
    normalized_cochains: int
    cocycle_count: int
    coboundary_count: int
    coboundaries_in_kernel: int
    h2_count: int
    method: str
    delta_squared_verified: bool
    representatives: list[Cochain] | None = None
    closed_form: dict = field(default_factory=dict)

    @property
    def mismatch(self) -> bool:
        """Whether the printed H^2 closed form disagrees with the count."""
        return self.closed_form.get("h2") is not None and self.closed_form["h2"] != self.h2_count

    @property
    def coboundary_mismatch(self) -> bool:
        return self.closed_form.get("coboundaries") is not None and self.closed_form["coboundaries"] != self.coboundary_count

    @property
    def cocycle_mismatch(self) -> bool:
        return self.closed_form.get("cocycles") is not None and self.closed_form["cocycles"] != self.cocycle_count

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "n": self.module.n,
            "m": self.module.m,
            "t": self.module.t,
            "normalizedCochains": self.normalized_cochains,
            "cocycles": self.cocycle_count,
            "coboundaries": self.coboundary_count,
            "coboundariesInKernel": self.coboundaries_in_kernel,
            "h2": self.h2_count,
            "method": self.method,
            "deltaSquaredVerified": self.delta_squared_verified,
            "paperFormula": self.closed_form.get("h2"),
            "mismatch": self.mismatch,
            "paperCocycleFormula": self.closed_form.get("cocycles"),
            "cocycleMismatch": self.cocycle_mismatch,
            "paperCoboundaryFormula": self.closed_form.get("coboundaries"),
            "coboundaryMismatch": self.coboundary_mismatch,
            "representatives": (
                None if self.representatives is None else [r.values.reshape(-1).tolist() for r in self.representatives]
            ),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        lines = [
            f"law {self.law}  n={self.module.n} m={self.module.m} t={self.module.t}  [{self.method}]",
            f"  normalized 2-cochains : {self.normalized_cochains}",
            f"  cocycles              : {self.cocycle_count}",
            f"  coboundaries          : {self.coboundary_count} ({self.coboundaries_in_kernel} inside the kernel)",
            f"  H^2                   : {self.h2_count}",
            f"  delta^2 = 0           : {self.delta_squared_verified}",
        ]
        for key, flag in (("h2", self.mismatch), ("cocycles", self.cocycle_mismatch), ("coboundaries", self.coboundary_mismatch)):
            if self.closed_form.get(key) is not None:
                lines.append(f"  printed formula {key:<13}: {self.closed_form[key]}{'  (MISMATCH)' if flag else ''}")
        return "\n".join(lines)


CSV_FIELDS = ["law", "n", "m", "t", "normalizedCochains", "cocycles", "coboundaries", "coboundariesInKernel", "h2", "method"]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.to_dict())
    return buf.getvalue()


def _class_representatives(cocycle_rows: np.ndarray, boundary_rows: np.ndarray, m: int) -> list[np.ndarray]:
    """Lexicographically least element of each coset, in increasing order."""
    seen = set()
    reps = []
    for z in cocycle_rows:
        key = z.tobytes()
        if key in seen:
            continue
        reps.append(z)
        for w in (z[None, :] + boundary_rows) % m:
            seen.add(w.tobytes())
    return reps


def cohomology(
    spec,
    module: CyclicModule,
    method: str = "auto",
    limit: int | None = None,
    representative_limit: int = 10**5,
) -> CohomologyReport:
    """Cocycle, coboundary and class counts, plus class representatives.

    ``method`` is ``"linear"``, ``"brute"`` or ``"auto"`` (both when the
    brute-force space fits under ``limit``).  When both run and disagree,
    :class:`OracleMismatchError` is raised.
    """
    limit = default_brute_limit() if limit is None else limit
    if method not in ("auto", "linear", "brute"):
        raise ValueError(f"unknown method {method!r}")
    n, m = module.n, module.m
    small = _free_count(module) <= limit

    brute_rows = None
    if method == "brute" or (method == "auto" and small):
        brute_rows = brute_force_cocycles(spec, module, limit) if n > 1 else np.zeros((1, 0), dtype=np.int64)

    if method == "brute":
        z_count = len(brute_rows)
        used = "bruteforce"
    else:
        z_count = cocycle_count(spec, module)
        used = "both" if brute_rows is not None else "linear"
        if brute_rows is not None and len(brute_rows) != z_count:
            raise OracleMismatchError(f"linear count {z_count} != brute-force count {len(brute_rows)}")

    d2 = verify_delta_squared(spec, module)
    b_count = coboundary_count(module)
    b_in = b_count if d2 else _coboundaries_in_kernel(spec, module)
    h2 = z_count // b_in

    reps = None
    if z_count <= representative_limit and n > 1:
        if brute_rows is not None:
            z_rows = brute_rows
        else:
            z_rows = _sorted_rows(modlinalg.span(cocycle_generators(spec, module), (n - 1) ** 2, m))
            if method == "auto" and small:
                if not np.array_equal(z_rows, brute_rows):
                    raise OracleMismatchError("linear and brute-force cocycle sets differ")
        if m ** (n - 1) <= limit:
            b_rows = _coboundary_rows(module)
            if not d2:
                keep = ~spec.apply_values(_free_to_dense(b_rows, n), module).any(axis=1)
                b_rows = b_rows[keep]
            reps = [Cochain.from_free(module, r) for r in _class_representatives(z_rows, b_rows, m)]
    elif n == 1:
        reps = [Cochain.zeros(module, 2)]

    return CohomologyReport(
        law=_law_name(spec),
        module=module,
        normalized_cochains=_free_count(module),
        cocycle_count=z_count,
        coboundary_count=b_count,
        coboundaries_in_kernel=b_in,
        h2_count=h2,
        method=used,
        delta_squared_verified=d2,
        representatives=reps,
        closed_form=closed_forms(spec, module),
    )


def inverse_property_count(module: CyclicModule, method: str = "auto", limit: int | None = None) -> dict:
    """Counts for the unique-inverse condition.

    ``residualZero`` normalized factor sets satisfy it, ``coboundaries`` of
    them are coboundaries and ``classes`` is the number of cosets of the
    coboundaries inside that set.
    """
    rep = cohomology(InversePropertyDifferential(), module, method=method, limit=limit, representative_limit=0)
    return {
        "n": module.n,
        "m": module.m,
        "t": module.t,
        "normalizedCochains": rep.normalized_cochains,
        "residualZero": rep.cocycle_count,
        "coboundaries": rep.coboundaries_in_kernel,
        "classes": rep.h2_count,
        "method": rep.method,
    }
