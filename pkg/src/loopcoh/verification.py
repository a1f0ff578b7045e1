"""The fixed reproduction suite: nine checks with PASS/FAIL lines.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_suite``
runs them in order.  Numbers that come from enumeration are computed
here, never copied in.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cochains import (
    BUILTIN_LAWS,
    Cochain,
    CommutativityDifferential,
    CyclicModule,
    builtin_law,
    delta1,
    derive_differential,
    inverse_property_residual,
    normalized_cochains,
    valid_actions,
    verify_delta_squared,
)
from .cohomology import (
    brute_force_cocycles,
    coboundaries,
    coboundary_count,
    cocycle_count,
    cocycle_generators,
    cocycles,
    cohomology,
    inverse_property_count,
)
from .corpus import corpus
from .dsl import LawIR, Move, enumerate_traces
from .extensions import build_extension, classify, extract_factor_set
from .loops import direct_product, cyclic_group, verify_commutation_formula, verify_m_composition

__all__ = [
    "CheckResult",
    "BOL_CASES",
    "generated_laws",
    "all_modules",
    "delta_squared_sweep",
    "run_suite",
    "CHECKS",
    "format_inverse_property_table",
]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number}. {self.title} ({self.seconds:.2f}s)"
        return text + (f": {self.detail}" if self.detail else "")


# The four Bol cocycles at n=3, m=2, as (f11, f12, f21, f22).
BOL_CASES = {
    "i": (0, 0, 0, 0),
    "ii": (1, 0, 0, 1),
    "iii": (1, 1, 1, 0),
    "iv": (0, 1, 1, 1),
}


def all_modules(ns, ms):
    for n in ns:
        for m in ms:
            for t in valid_actions(n, m):
                yield CyclicModule(n, m, t)


def _surjections(n: int, v: int):
    """First-occurrence-numbered maps from n positions onto v variables."""
    for rho in itertools.product(range(1, v + 1), repeat=n):
        seen = 0
        ok = True
        for r in rho:
            if r > seen + 1:
                ok = False
                break
            seen = max(seen, r)
        if ok and seen == v:
            yield rho


def generated_laws(count: int | None = 30, max_n: int = 6, variables: int = 3, seed: int = 0) -> list[LawIR]:
    """Nontrivial one-nested laws in ``variables`` variables with ``n <= max_n``.

    With ``count=None`` all of them are returned, otherwise a seeded
    sample of ``count``.
    """
    laws = []
    for n in range(variables, max_n + 1):
        rhos = list(_surjections(n, variables))
        for trace in enumerate_traces(n):
            if Move.RIGHT not in trace.moves:
                continue
            laws.extend(LawIR(n, rho, trace) for rho in rhos)
    if count is None or count >= len(laws):
        return laws
    rng = np.random.default_rng(seed)
    pick = sorted(rng.choice(len(laws), size=count, replace=False))
    return [laws[i] for i in pick]


def _builtin_specs(include_commutativity: bool = True):
    for name in BUILTIN_LAWS:
        if name == "commutativity" and not include_commutativity:
            continue
        yield builtin_law(name)


def delta_squared_sweep(specs, modules, random_samples: int = 100, exhaustive: bool = False, seed: int = 0):
    """Count (spec, module) pairs checked and the ones that fail."""
    rng = np.random.default_rng(seed)
    checked, failures = 0, []
    modules = list(modules)
    for spec in specs:
        for module in modules:
            if isinstance(spec, CommutativityDifferential) and not module.trivial_action:
                continue
            checked += 1
            if not verify_delta_squared(spec, module, random_samples=random_samples, exhaustive=exhaustive, rng=rng):
                failures.append((getattr(spec, "name", "") or str(spec.ir), module))
    return checked, failures


# --------------------------------------------------------------------------
# the nine checks


def check_bol_cocycles() -> CheckResult:
    module = CyclicModule(3, 2)
    found = {tuple(c.free().tolist()) for c in cocycles(builtin_law("bol"), module, method="brute")}
    expected = set(BOL_CASES.values())
    ok = found == expected and len(found) == 4
    return CheckResult(1, "Bol n=3 m=2: exactly the four cocycles i-iv", ok, f"{len(found)} cocycles {sorted(found)}")


def check_bol_classification() -> CheckResult:
    module = CyclicModule(3, 2)
    bol = builtin_law("bol")
    z = {c.key() for c in cocycles(bol, module, method="brute")}
    b = {c.key() for c in coboundaries(module)}
    rep = cohomology(bol, module)
    exts = classify(bol, module)
    group = direct_product(cyclic_group(3), cyclic_group(2))
    assoc = len(exts) == 1 and exts[0].loop.is_associative()
    same = len(exts) == 1 and np.array_equal(exts[0].table, group.table)
    ok = len(b) == 4 and z == b and rep.h2_count == 1 and assoc and same
    detail = (
        f"coboundaries={len(b)} equal-to-cocycles={z == b} h2={rep.h2_count}; "
        f"one extension class, representative associative={str(assoc).lower()}, "
        f"table equals Z/3 x Z/2 indexing={str(same).lower()}"
    )
    return CheckResult(2, "Bol n=3 m=2: one extension class", ok, detail)


def check_delta_squared(count: int = 30) -> CheckResult:
    laws = [derive_differential(ir) for ir in generated_laws(count)]
    specs = list(_builtin_specs()) + laws
    checked, failures = delta_squared_sweep(specs, all_modules(range(2, 6), range(2, 6)))
    ok = not failures and len(laws) >= 25
    detail = f"{len(specs)} laws ({len(laws)} generated), {checked} law/module pairs, {len(failures)} failures"
    return CheckResult(3, "delta^2 = 0 sweep", ok, detail, data={"failures": failures})


def check_law_iff_cocycle() -> CheckResult:
    module = CyclicModule(3, 2)
    bol = builtin_law("bol")
    passing = {f.key() for f in normalized_cochains(module) if bol.holds(build_extension(f).loop)}
    z = {c.key() for c in cocycles(bol, module, method="brute")}
    ok = passing == z
    return CheckResult(4, "Bol n=3 m=2: law holds on build(f) iff f is a cocycle", ok, f"{len(passing)} of 16 pass, {len(z)} cocycles")


def check_round_trips(sizes=((3, 2), (3, 3), (4, 2))) -> CheckResult:
    bad = 0
    total = 0
    for n, m in sizes:
        module = CyclicModule(n, m)
        hs = list(normalized_cochains(module, 1))
        for f in normalized_cochains(module):
            ext = build_extension(f)
            total += 1
            if extract_factor_set(ext) != f:
                bad += 1
            for h in hs:
                total += 1
                if extract_factor_set(ext, section=h) - f != delta1(h):
                    bad += 1
    return CheckResult(5, "extract(build(f)) = f and section changes give delta1(h)", bad == 0, f"{total} checks, {bad} failures")


def check_commutative_counts(ns=range(2, 6), ms=range(2, 6)) -> CheckResult:
    comm = builtin_law("commutativity")
    base = cohomology(comm, CyclicModule(3, 2), method="brute")
    rows = []
    ok = base.h2_count == 2
    for n in ns:
        for m in ms:
            module = CyclicModule(n, m)
            z = cocycle_count(comm, module)
            b = coboundary_count(module)
            rep = cohomology(comm, module, method="linear", representative_limit=0)
            ok &= z == m ** (n * (n - 1) // 2) and b == m ** (n - 1) // gcd(n, m)
            ok &= rep.mismatch == (rep.closed_form["h2"] != rep.h2_count)
            rows.append((n, m, z, b, rep.h2_count, rep.closed_form["h2"], rep.mismatch))
    flagged = sum(r[-1] for r in rows)
    detail = f"h2(3,2)={base.h2_count}; {len(rows)} grid points; printed H^2 closed form flagged at {flagged}"
    return CheckResult(6, "commutative extensions: counts and closed-form flags", bool(ok), detail, data={"rows": rows})


def check_inverse_property(ns=range(2, 7), ms=range(2, 7)) -> CheckResult:
    assoc = builtin_law("associativity")
    rows = []
    bad = 0
    for module in all_modules(ns, ms):
        counts = inverse_property_count(module, method="linear")
        rows.append(counts)
        for vec, _ in cocycle_generators(assoc, module):
            f = Cochain.from_free(module, vec)
            if not inverse_property_residual(f).is_zero():
                bad += 1
    detail = f"{len(rows)} modules tabulated; associativity cocycle generators with nonzero residual: {bad}"
    return CheckResult(7, "inverse property: counts and group-cocycle oracle", bad == 0, detail, data={"rows": rows})


def check_oracles(ns=range(2, 6), ms=range(2, 6), limit: int = 10**5) -> CheckResult:
    runs, bad = 0, []
    specs = list(_builtin_specs())
    for spec in specs:
        for module in all_modules(ns, ms):
            if isinstance(spec, CommutativityDifferential) and not module.trivial_action:
                continue
            if module.m ** ((module.n - 1) ** 2) > limit:
                continue
            runs += 1
            brute = len(brute_force_cocycles(spec, module, limit))
            linear = cocycle_count(spec, module)
            if brute != linear:
                bad.append((spec.name, module, brute, linear))
    return CheckResult(8, "linear-algebra counts equal brute-force counts", not bad, f"{runs} comparisons, {len(bad)} disagreements", data={"bad": bad})


def check_inner_map_formulas() -> CheckResult:
    loops = corpus()
    nonassoc = [name for name, lp in loops.items() if not lp.is_associative()]
    comm_fail, m_fail, literal_fail = 0, [], 0
    for name, lp in loops.items():
        q = lp.order
        for x, y in itertools.product(range(q), repeat=2):
            if not verify_m_composition(lp, x, y):
                m_fail.append((name, x, y))
            for a, b in itertools.product(range(q), repeat=2):
                if not verify_commutation_formula(lp, x, y, a, b):
                    comm_fail += 1
                if not verify_commutation_formula(lp, x, y, a, b, literal=True):
                    literal_fail += 1
    ok = comm_fail == 0 and len(nonassoc) >= 5
    detail = (
        f"{len(loops)} loops ({len(nonassoc)} nonassociative); commutation formula failures: {comm_fail}; "
        f"M-composition findings: {len(m_fail)}; literal L(xa,y) variant failures: {literal_fail}"
    )
    return CheckResult(9, "inner-map formulas on the bundled corpus", ok, detail, data={"mFindings": m_fail})


def format_inverse_property_table(rows: list[dict]) -> str:
    keys = ["n", "m", "t", "normalizedCochains", "residualZero", "coboundaries", "classes"]
    cells = [keys] + [[str(r[k]) for k in keys] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(keys))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)


CHECKS = [
    check_bol_cocycles,
    check_bol_classification,
    check_delta_squared,
    check_law_iff_cocycle,
    check_round_trips,
    check_commutative_counts,
    check_inverse_property,
    check_oracles,
    check_inner_map_formulas,
]


def run_check(fn) -> CheckResult:
    start = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # a crash is a failed check, reported as such
        number = CHECKS.index(fn) + 1 if fn in CHECKS else 0
        res = CheckResult(number, fn.__name__, False, f"error: {exc!r}")
    res.seconds = time.perf_counter() - start
    return res


def run_suite(checks=None, out=None) -> list[CheckResult]:
    results = []
    for fn in checks or CHECKS:
        res = run_check(fn)
        results.append(res)
        if out is not None:
            print(res.line(), file=out, flush=True)
    return results
