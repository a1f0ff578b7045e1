import itertools
import json

import numpy as np
import pytest

from loopcoh.cochains import Cochain, CyclicModule, builtin_law, delta1, normalized_cochains, valid_actions
from loopcoh.cohomology import cocycles
from loopcoh.extensions import (
    ExtensionError,
    build_extension,
    classify,
    equivalent,
    extract_factor_set,
    kernel_in_nucleus,
    kernel_is_central,
    witness_isomorphism,
)
from loopcoh.loops import FiniteLoop, check_loop, cyclic_group, direct_product, load_loop, nucleus
from oracles import extension_mul, is_loop_table

M32 = CyclicModule(3, 2)
CASE_II = {(1, 1): 1, (2, 2): 1}
CASE_III = {(1, 1): 1, (1, 2): 1, (2, 1): 1}
CASE_IV = {(1, 2): 1, (2, 1): 1, (2, 2): 1}


def test_zero_factor_set_gives_direct_product():
    ext = build_extension(Cochain.zeros(M32, 2))
    assert ext.loop.is_associative() and ext.loop.is_commutative()
    assert np.array_equal(ext.table, direct_product(cyclic_group(3), cyclic_group(2)).table)


def test_table_matches_pair_oracle():
    module = CyclicModule(3, 7, 2)
    f = Cochain.from_free(module, [3, 1, 4, 1])
    ext = build_extension(f)
    mul = extension_mul(f.values, 3, 7, 2)
    for i, j in itertools.product(range(21), repeat=2):
        a, b = mul(divmod(i, 7), divmod(j, 7))
        assert ext.table[i, j] == a * 7 + b
    assert is_loop_table(ext.loop.rows())


def test_bol_case_iii_is_bol():
    ext = build_extension(Cochain.from_entries(M32, CASE_III))
    assert builtin_law("bol").holds(ext.loop)


def test_non_cocycle_is_not_bol():
    ext = build_extension(Cochain.from_entries(M32, {(1, 1): 1}))
    assert not builtin_law("bol").holds(ext.loop)


def test_unnormalized_rejected():
    with pytest.raises(ExtensionError, match="normalized"):
        build_extension(Cochain(M32, np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]])))


@pytest.mark.parametrize("n, m", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
@pytest.mark.parametrize("law", ["bol", "left-moufang", "commutativity", "associativity"])
def test_law_holds_iff_cocycle(n, m, law):
    module = CyclicModule(n, m)
    spec = builtin_law(law)
    z = {c.key() for c in cocycles(spec, module)}
    for f in normalized_cochains(module):
        ext = build_extension(f)
        assert spec.holds(ext.loop) == (f.key() in z)


@pytest.mark.parametrize("n, m, t", [(2, 3, 2), (3, 7, 2), (2, 4, 3)])
def test_law_holds_iff_cocycle_with_action(n, m, t):
    module = CyclicModule(n, m, t)
    for law in ("bol", "associativity"):
        spec = builtin_law(law)
        z = {c.key() for c in cocycles(spec, module)}
        for f in normalized_cochains(module):
            assert spec.holds(build_extension(f).loop) == (f.key() in z)


@pytest.mark.parametrize("n, m, t", [(3, 2, 1), (3, 3, 1), (4, 2, 1), (2, 3, 2), (2, 4, 3)])
def test_round_trip_and_sections(n, m, t):
    module = CyclicModule(n, m, t)
    hs = list(normalized_cochains(module, 1))
    for f in normalized_cochains(module):
        ext = build_extension(f)
        assert extract_factor_set(ext) == f
        for h in hs:
            g = extract_factor_set(ext, section=h)
            assert g - f == delta1(h)
            assert equivalent(f, g) is not None


def test_section_as_element_list_and_plain_loop():
    f = Cochain.from_entries(M32, CASE_II)
    ext = build_extension(f)
    g = extract_factor_set(ext.loop, M32, section=[0, 3, 5])  # s(1)=(1,1), s(2)=(2,1)
    assert g - f == delta1(Cochain(M32, (0, 1, 1)))


def test_direct_product_sections_give_coboundaries():
    ext = build_extension(Cochain.zeros(M32, 2))
    bounds = {delta1(h).key() for h in normalized_cochains(M32, 1)}
    for h in normalized_cochains(M32, 1):
        assert extract_factor_set(ext, section=h).key() in bounds


def test_extract_errors():
    ext = build_extension(Cochain.zeros(M32, 2))
    with pytest.raises(ExtensionError, match="normalized"):
        extract_factor_set(ext, section=[1, 2, 4])
    with pytest.raises(ExtensionError, match="homomorphism"):
        # in Z/6, 1 + 2 = 3 leaves the fiber {0, 1, 2}
        extract_factor_set(cyclic_group(6), CyclicModule(2, 3))
    with pytest.raises(ExtensionError, match="module"):
        extract_factor_set(cyclic_group(6))


def test_equivalence():
    zero = Cochain.zeros(M32, 2)
    assert equivalent(zero, zero).is_zero()
    h = equivalent(zero, Cochain.from_entries(M32, CASE_IV))
    assert h is not None and delta1(h) == Cochain.from_entries(M32, CASE_IV)
    assert equivalent(zero, Cochain.from_entries(M32, {(1, 1): 1})) is None


def test_equivalence_linear_path_matches_brute():
    module = CyclicModule(4, 6)
    rng = np.random.default_rng(5)
    for _ in range(40):
        f = Cochain.from_free(module, rng.integers(0, 6, 9))
        if rng.random() < 0.5:
            g = f + delta1(Cochain(module, np.r_[0, rng.integers(0, 6, 3)]))
        else:
            g = Cochain.from_free(module, rng.integers(0, 6, 9))
        brute = equivalent(f, g, limit=10**6)
        linear = equivalent(f, g, limit=0)
        assert (brute is None) == (linear is None)
        if linear is not None:
            assert g - f == delta1(linear)


def test_witness_isomorphism_case_ii():
    assert witness_isomorphism(Cochain.from_entries(M32, CASE_II), Cochain(M32, (0, 1, 1)))
    assert witness_isomorphism(Cochain.from_entries(M32, CASE_II), Cochain.zeros(M32, 1))


@pytest.mark.parametrize("n, m, t", [(3, 2, 1), (2, 3, 2), (3, 7, 4)])
def test_witness_isomorphism_sweep(n, m, t):
    module = CyclicModule(n, m, t)
    fs = list(itertools.islice(normalized_cochains(module), 60))
    for f, h in itertools.product(fs, normalized_cochains(module, 1)):
        assert witness_isomorphism(f, h)


def test_kernel_in_nucleus_and_center():
    for n, m in [(3, 2), (3, 3), (4, 2)]:
        module = CyclicModule(n, m)
        for f in normalized_cochains(module):
            ext = build_extension(f)
            assert kernel_in_nucleus(ext) and kernel_is_central(ext)
    for t in (2, 4):
        module = CyclicModule(3, 7, t)
        for f in itertools.islice(normalized_cochains(module), 50):
            ext = build_extension(f)
            assert kernel_in_nucleus(ext)
            assert not kernel_is_central(ext)  # a nontrivial action moves the kernel


def test_classify_bol():
    exts = classify(builtin_law("bol"), M32)
    assert len(exts) == 1
    assert exts[0].loop.is_associative()


def test_classify_commutativity():
    exts = classify(builtin_law("commutativity"), M32)
    assert len(exts) == 2
    assert all(e.loop.is_commutative() for e in exts)


def test_classify_trivial_kernel():
    exts = classify(builtin_law("bol"), CyclicModule(3, 1))
    assert len(exts) == 1 and exts[0].loop == cyclic_group(3)


def test_export(tmp_path):
    ext = build_extension(Cochain.from_entries(M32, CASE_III), law="bol")
    ext.save(tmp_path / "e.json")
    data = json.loads((tmp_path / "e.json").read_text())
    assert data["provenance"] == {"n": 3, "m": 2, "t": 1, "f": [0, 0, 0, 0, 1, 1, 0, 1, 0], "law": "bol"}
    assert load_loop(tmp_path / "e.json") == ext.loop
    ext.save(tmp_path / "e.txt")
    assert (tmp_path / "e.txt").read_text().startswith("# provenance:")
