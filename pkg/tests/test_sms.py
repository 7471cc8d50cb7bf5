import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_language

from lgtextile import catalog
from lgtextile.errors import DimensionError, LevelError
from lgtextile.lgs import lgs_from_sms, window_start
from lgtextile.sms import (
    SymbolicMatrixSystem, compare_languages, higher_block_sms, language, product_system, psse_power_product,
    sms_isomorphic, validate_sms)
from lgtextile.sse import chain_P_system, identify_subshift, induced_P_system
from lgtextile.symbolic import BitMatrix, FormalSum, SymbolicMatrix

EXAMPLES = [catalog.full_shift, catalog.golden_mean, catalog.iota_swap_full_shift, catalog.two_point_system]


@pytest.mark.parametrize("make", EXAMPLES)
def test_examples_are_valid(make):
    assert validate_sms(make())


def test_non_square_stationary_rejected():
    s = SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["a", "b"]]), BitMatrix.of([[1, 1]]))
    assert "not-square" in validate_sms(s).kinds()


def test_explicit_levels_must_chain():
    s = SymbolicMatrixSystem.from_blocks([(SymbolicMatrix.of([["a", "b"]]), BitMatrix.of([[1, 1]]))] * 2)
    assert "shape" in validate_sms(s).kinds()


def test_higher_block_examples():
    assert higher_block_sms(catalog.full_shift(), 1) == catalog.full_shift()
    H = higher_block_sms(catalog.full_shift(), 2)
    assert H.M(0) == SymbolicMatrix.of([["a+b"]]) and H.I(0) == BitMatrix.of([[1]])
    G = higher_block_sms(catalog.golden_mean(), 2)
    assert G.M(0) == catalog.golden_mean().M(0) and G.I(0) == BitMatrix.identity(2)


def test_higher_block_of_explicit_system():
    AB = catalog.two_point_system(6)
    H = higher_block_sms(AB, 2)
    assert H.n_levels == 3 and validate_sms(H)
    # level 0 reads M_0 I_1: from the root a or b into two vertices
    assert H.M(0) == SymbolicMatrix.of([["a", "b"]])
    with pytest.raises(LevelError):
        higher_block_sms(catalog.two_point_system(1), 2)


def test_higher_block_of_iota_swap_keeps_language():
    S = catalog.iota_swap_full_shift()
    H = higher_block_sms(S, 2)
    assert validate_sms(H) and H.I(0) == BitMatrix.identity(2)
    for m in range(1, 6):
        assert compare_languages(H, S, m)


def test_product_trivial_cases():
    GM = catalog.golden_mean()
    assert product_system(GM, GM, 0, 1) is GM
    assert product_system(GM, GM, 1, 0) is GM


def test_product_with_unit_system():
    P = induced_P_system(catalog.swap_step())
    out = product_system(P, catalog.full_shift(), 1, 1)
    assert out.M(0) == SymbolicMatrix.of([[FormalSum([("I", "a"), ("I", "b")])]])
    assert out.I(0) == BitMatrix.of([[1]])


def test_product_needs_squares():
    with pytest.raises(DimensionError):
        product_system(catalog.full_shift(), catalog.golden_mean(), 1, 1)


def test_power_product_examples():
    step = catalog.swap_step()
    FS = catalog.full_shift()
    P = induced_P_system(step)
    assert psse_power_product(P, FS, 0, 1) is FS
    assert psse_power_product(P, FS, 1, 1).M(0) == product_system(P, FS, 1, 1).M(0)
    two = psse_power_product(P, FS, 2, 1)
    assert two.M(0) == SymbolicMatrix.of([[FormalSum([("I", "I", "a"), ("I", "I", "b")])]])


def test_power_product_blocked_equals_raw():
    # the N = 2 chain through the swap: P blocks and their [2]-blocked version give the same words
    from lgtextile.sse import PsseChain
    sw = catalog.swap_step()
    ch = PsseChain((sw, sw), "sw2")
    cb = chain_P_system(ch)
    raw = identify_subshift(ch, 1, 1)
    blocked = psse_power_product(cb.blocked, higher_block_sms(ch.base, 2), 1, 1, 1)
    for m in range(1, 7):
        assert language(raw, m) == language(blocked, m)


def test_golden_mean_words():
    GM = catalog.golden_mean()
    assert language(GM, 2) == {(("a",), ("a",)), (("a",), ("b",)), (("b",), ("a",))}
    assert [len(language(GM, m)) for m in range(1, 5)] == [2, 3, 5, 8]


@pytest.mark.parametrize("m", range(1, 11))
def test_full_shift_counts(m):
    assert len(language(catalog.full_shift(), m)) == 2 ** m


@pytest.mark.parametrize("make", [catalog.golden_mean, catalog.iota_swap_full_shift, catalog.non_lr_golden_mean])
@pytest.mark.parametrize("m", range(1, 7))
def test_language_matches_brute_force(make, m):
    assert language(make(), m) == brute_language(make(), m)


def test_explicit_language_uses_deepest_window():
    AB = catalog.two_point_system(4)
    g = lgs_from_sms(AB)
    assert window_start(g, 2) == 2
    assert language(AB, 2) == brute_language(AB, 2, 2) == {(("a",), ("a",)), (("b",), ("b",))}
    with pytest.raises(LevelError):
        language(AB, 5)


@pytest.mark.parametrize("make", [catalog.two_point_system, lambda: catalog.golden_mean().materialize(7)])
def test_language_shrinks_with_level(make):
    sys = make()
    for m in range(1, 4):
        windows = [language(sys, m, l) for l in range(sys.n_levels - m + 1)]
        for lower, upper in zip(windows, windows[1:]):
            assert upper <= lower


def test_compare_languages_witness():
    v = compare_languages(catalog.full_shift(), catalog.golden_mean(), 2)
    assert not v and [x.detail["word"] for x in v.violations] == ["bb"]
    assert compare_languages(catalog.golden_mean(), catalog.golden_mean(), 4)


def test_isomorphic_to_itself():
    v = sms_isomorphic(catalog.golden_mean(), catalog.golden_mean())
    assert v and v.info["S"] == ["[[1, 0], [0, 1]]"]


def test_isomorphic_under_row_permutation():
    M = SymbolicMatrix.of([["0", "b"], ["a", "a"]])
    permuted = SymbolicMatrixSystem.from_stationary(M)
    v = sms_isomorphic(catalog.golden_mean(), permuted)
    assert v and v.info["S"] == ["[[0, 1], [1, 0]]"]


def test_not_isomorphic_by_shape():
    v = sms_isomorphic(catalog.full_shift(), catalog.golden_mean())
    assert not v and v.first().kind == "shape"


@given(st.integers(1, 3), st.integers(0, 2), st.integers(1, 2))
def test_constructions_stay_valid(N, k, n):
    GM = catalog.golden_mean()
    assert validate_sms(higher_block_sms(GM, N))
    assert validate_sms(product_system(GM, GM, k, n))
    assert validate_sms(higher_block_sms(catalog.two_point_system(6), N))
