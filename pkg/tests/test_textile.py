import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgtextile import catalog
from lgtextile.errors import DecoderError, NotLeftResolvingError, SpecificationError
from lgtextile.lgs import LambdaGraphSystem, Layer, higher_block_lgs
from lgtextile.sms import SymbolicMatrixSystem, language
from lgtextile.sse import induced_P_system, synth_kappa_P
from lgtextile.symbolic import Specification, SymbolicMatrix
from lgtextile.textile import (
    TextileLayer, TextileSystem, apply_phi_T, build_decoder, build_lr_textile, canonical_form, check_nondegenerate,
    dual_textile, expansion_report, j_maps, textile_higher_block, validate_textile)
from lgtextile.textile.decode import Ambiguity, Decoder, require_decoder

AB = [("a",), ("b",)]


def swap_textile():
    step = catalog.swap_step()
    return build_lr_textile(step.source, induced_P_system(step), synth_kappa_P(step), "swap")


def gm_identity_textile():
    GM = catalog.golden_mean()
    return build_lr_textile(GM, GM, Specification({(x, y): (x, y) for x in "ab" for y in "ab"}), "gm")


def xy_textile():
    """M = [a+b], N = [x+y], κ(αβ) = βα: the N labels are invisible from the M rows."""
    N = SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["x+y"]]))
    kappa = Specification({(a, b): (b, a) for a in "ab" for b in "xy"})
    return build_lr_textile(catalog.full_shift(), N, kappa, "xy")


def drop_k_edge(T, i):
    klay, tlay = T.K.layer(0), T.layer(0)
    keep = [j for j in range(len(klay.edges)) if j != i]
    K = LambdaGraphSystem((Layer(klay.n_src, klay.n_tgt, tuple(klay.edges[j] for j in keep), klay.iota),), True)
    lay = TextileLayer(tuple(tlay.p[j] for j in keep), tuple(tlay.q[j] for j in keep))
    return TextileSystem(T.M, T.N, K, (lay,), True, "mutant")


TEXTILES = [swap_textile, gm_identity_textile, xy_textile]


@pytest.mark.parametrize("make", TEXTILES)
def test_lr_textiles_validate(make):
    T = make()
    assert validate_textile(T)
    assert check_nondegenerate(T, 5)


def test_swap_squares():
    quads = sorted(j_maps(swap_textile()).values())
    # κ(α I) = I π(α): each square has unit sides, top α and bottom π(α)
    assert quads == [(("I",), ("I",), ("a",), ("b",)), (("I",), ("I",), ("b",), ("a",))]


def test_incompatible_specification_has_level_zero_witness():
    GM = catalog.golden_mean()
    kappa = Specification({(x, y): (y, x) for x in "ab" for y in "ab"})
    with pytest.raises(SpecificationError) as exc:
        build_lr_textile(GM, GM, kappa)
    assert exc.value.witness["level"] == 0 and exc.value.witness["entry"] == [0, 0]


def test_non_lr_component_rejected():
    GMr = catalog.non_lr_golden_mean()
    with pytest.raises(NotLeftResolvingError):
        build_lr_textile(GMr, GMr, Specification({(x, y): (x, y) for x in "ab" for y in "ab"}))


def test_removing_a_square_from_an_explicit_textile_breaks_locality():
    GM = catalog.golden_mean().materialize(4)
    T = build_lr_textile(GM, GM, Specification({(x, y): (x, y) for x in "ab" for y in "ab"}))
    for l in range(T.n_levels):
        for i in range(len(T.K.edges(l))):
            layers, tl = list(T.K.layers), list(T.layers)
            k, t = layers[l], tl[l]
            keep = [j for j in range(len(k.edges)) if j != i]
            layers[l] = Layer(k.n_src, k.n_tgt, tuple(k.edges[j] for j in keep), k.iota)
            tl[l] = TextileLayer(tuple(t.p[j] for j in keep), tuple(t.q[j] for j in keep))
            v = validate_textile(TextileSystem(T.M, T.N, LambdaGraphSystem(tuple(layers)), tuple(tl)))
            w = v.first("lgs-K:local-property")
            assert w is not None and w.level in (l, l + 1)


def test_removing_a_square_from_a_stationary_textile_degenerates():
    # the same square vanishes at every level, so the six conditions can still hold
    T = gm_identity_textile()
    for i in range(len(T.K.edges(0))):
        nd = check_nondegenerate(drop_k_edge(T, i), 3)
        assert not nd and nd.first().kind == "unliftable"
        w = nd.first().detail
        assert w["side"] in ("p", "q") and len(w["path"]) == 3


def test_duplicated_square_breaks_condition_five():
    T = swap_textile()
    klay, tlay = T.K.layer(0), T.layer(0)
    K = LambdaGraphSystem((Layer(klay.n_src, klay.n_tgt, klay.edges + klay.edges[:1], klay.iota),), True)
    lay = TextileLayer(tlay.p + tlay.p[:1], tlay.q + tlay.q[:1])
    v = validate_textile(TextileSystem(T.M, T.N, K, (lay,), True))
    assert "condition-5" in v.kinds()


@pytest.mark.parametrize("make", TEXTILES)
def test_dual_textile(make):
    T = make()
    D = dual_textile(T)
    assert validate_textile(D) and check_nondegenerate(D, 4)
    assert D.M == T.N and D.N == T.M
    assert canonical_form(dual_textile(D)) == canonical_form(T)


@pytest.mark.parametrize("make", TEXTILES)
def test_higher_block_textile(make):
    T = make()
    H = textile_higher_block(T, 2)
    assert validate_textile(H)
    assert H.M == higher_block_lgs(T.M, 2)
    # an N-edge of the higher block is a K-edge of T, so its label spells one square
    labels = {e.label for e in H.N.edges(0)}
    assert labels == {(k.label[0],) for k in T.K.edges(0)}
    assert textile_higher_block(T, 1) is T


def test_swap_decoders():
    T = swap_textile()
    xi, eta = build_decoder(T, "xi"), build_decoder(T, "eta")
    assert (xi.window, eta.window) == (1, 1)
    assert {img: j_maps(T)[k][2] for img, k in xi.table} == {(("a",),): ("a",), (("b",),): ("b",)}


def test_ambiguous_decoder():
    T = xy_textile()
    d = build_decoder(T, "xi", 3)
    assert isinstance(d, Ambiguity) and not d
    w = d.to_dict()
    assert w["code"] == "xi" and len(w["k_words"]) == 2
    with pytest.raises(DecoderError):
        require_decoder(T, "xi", 3)


def test_phi_T_on_swap_is_the_swap():
    T = swap_textile()
    for x in itertools.product(AB, repeat=5):
        y = apply_phi_T(T, x)
        assert y.start == 0 and y.word == tuple(AB[1 - AB.index(c)] for c in x)


@given(st.lists(st.sampled_from("ab"), min_size=2, max_size=10).filter(lambda w: "bb" not in "".join(w)))
def test_phi_T_on_golden_mean_identity_is_the_shift(word):
    T = gm_identity_textile()
    x = tuple((c,) for c in word)
    y = apply_phi_T(T, x)
    assert y.start == 0
    assert y.word == x[1:1 + len(y.word)] and len(y.word) == len(x) - 1


def test_k_language_projects_onto_m_language():
    T = gm_identity_textile()
    K = T.K
    assert isinstance(build_decoder(T, "xi"), Decoder)
    for m in range(1, 5):
        tops = {tuple(j_maps(T)[lab][2] for lab in w) for w in language_of(K, m)}
        assert tops == language(catalog.golden_mean(), m)


def language_of(g, m):
    from lgtextile.lgs import enumerate_words
    return enumerate_words(g, 0, m)


@pytest.mark.parametrize("make", TEXTILES)
def test_expansion_report_follows_the_pipeline(make):
    T = make()
    r = expansion_report(T, 1, 3)
    D = dual_textile(textile_higher_block(T, 2))
    for code in ("xi", "eta"):
        d = build_decoder(D, code, 3)
        if isinstance(d, Decoder):
            assert r[code] == {"window": d.window, "offset": d.offset}
        else:
            assert r[code] == d.to_dict()
    assert set(r) == {"k", "block", "max_window", "xi", "eta"}


def test_require_decoder_witness_carries_the_clash():
    with pytest.raises(DecoderError) as exc:
        require_decoder(xy_textile(), "xi", 2)
    assert exc.value.witness["code"] == "xi" and len(exc.value.witness["k_words"]) == 2
