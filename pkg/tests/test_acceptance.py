"""The nine acceptance criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import itertools
import random

import pytest

from conftest import ACCEPTANCE
from oracles import axiom_violations, brute_language

from lgtextile import catalog
from lgtextile.lgs import (
    check_essential, check_left_resolving, check_local_property, enumerate_words, lgs_from_sms, sms_from_lgs)
from lgtextile.sms import (
    SymbolicMatrixSystem, compare_languages, higher_block_sms, language, product_system, validate_sms)
from lgtextile.sse import (
    Encoder, PsseChain, apply_automorphism, as_chain, encode_length, forward_automorphism_code,
    identify_subshift, induced_P_system, psse_from_specification_automorphism, synth_kappa_P)
from lgtextile.symbolic import BitMatrix, SymbolicMatrix
from lgtextile.textile import (
    apply_phi_T, build_decoder, build_lr_textile, canonical_form, check_nondegenerate, dual_textile,
    validate_textile)
from lgtextile.textile.decode import Decoder
from lgtextile.textile.weave import (
    PatchShifter, bias_cells, enumerate_patches, extract_bias_word, hat_to_check, rectangle, validate_patch)

AB = [("a",), ("b",)]
SLOPES = [(1, 1), (1, 2), (2, 1)]


def record(number, ok, summary):
    ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {summary}")
    print(ACCEPTANCE[-1])
    assert ok, summary


def swap_textile():
    step = catalog.swap_step()
    return build_lr_textile(step.source, induced_P_system(step), synth_kappa_P(step), "swap")


def seen(verdict):
    out = set()
    for v in verdict.violations:
        d = v.detail
        if v.kind == "I-row":
            out.add((v.kind, v.level, d["row"]))
        elif v.kind == "I-column":
            out.add((v.kind, v.level, d["col"], d["ones"]))
        elif v.kind == "commutation":
            out.add((v.kind, v.level, tuple(d["entry"])))
    return out


def mutations():
    """(name, mutated system, targeted kind)."""
    GM = catalog.golden_mean()
    M = GM.M(0)
    out = [
        ("golden mean: I swaps the vertices", SymbolicMatrixSystem.from_stationary(M, BitMatrix.of([[0, 1], [1, 0]])),
         "commutation"),
        ("golden mean: column with two 1s", SymbolicMatrixSystem.from_stationary(M, BitMatrix.of([[1, 0], [1, 1]])),
         "I-column"),
        ("golden mean: zero row", SymbolicMatrixSystem.from_stationary(M, BitMatrix.of([[1, 1], [0, 0]])), "I-row"),
    ]
    # a 1x1 stationary block always commutes, so the full-shift mutations act on an explicit copy
    FS = list(catalog.full_shift().materialize(3).blocks)

    def at1(M1=None, I1=None):
        b = list(FS)
        b[1] = (M1 or b[1][0], I1 or b[1][1])
        return SymbolicMatrixSystem.from_blocks(b)

    out += [
        ("full shift: level-1 M loses b", at1(M1=SymbolicMatrix.of([["a"]])), "commutation"),
        ("full shift: level-1 I entry 2", at1(I1=BitMatrix.of([[2]])), "I-column"),
        ("full shift: level-1 I zero", at1(I1=BitMatrix.of([[0]])), "I-row"),
    ]
    return out


def test_criterion_1_axiom_validation():
    base_ok = bool(validate_sms(catalog.golden_mean())) and bool(validate_sms(catalog.full_shift()))
    base_ok &= bool(validate_sms(catalog.full_shift().materialize(3)))
    bad = []
    for name, sys, kind in mutations():
        v = validate_sms(sys)
        expected = axiom_violations(sys)
        if v or seen(v) != expected or kind not in v.kinds() or not any(e[0] == kind for e in expected):
            bad.append((name, v.kinds(), sorted(map(str, expected))))
    record(1, base_ok and not bad and len(mutations()) == 6,
           f"examples valid={base_ok}; 6 mutations rejected with matching witnesses, mismatches={bad}")


def test_criterion_2_structure_checks():
    g = lgs_from_sms(catalog.golden_mean())
    good = bool(check_essential(g)) and bool(check_left_resolving(g)) and bool(check_local_property(g))
    r = lgs_from_sms(catalog.non_lr_golden_mean())
    lr = check_left_resolving(r)
    # the a-edges into each terminal vertex, found by scanning the edge list
    a_edges = [i for i, e in enumerate(r.edges(0)) if e.label == ("a",)]
    pairs = [[i, j] for i, j in itertools.combinations(a_edges, 2) if r.edges(0)[i].tgt == r.edges(0)[j].tgt]
    w = lr.first("left-resolving")
    ok = good and not lr and w is not None and [w.detail["edges"]] == pairs and w.detail["label"] == "a"
    record(2, ok, f"golden mean essential/LR/local ok={good}; non-LR witness={w.detail if w else None}, expected {pairs}")


def test_criterion_3_language_oracle():
    GM = catalog.golden_mean()
    g = lgs_from_sms(GM)
    counts, agree = [], True
    for m in range(1, 6):
        a = brute_language(GM, m)
        b = enumerate_words(g, 0, m)
        agree &= a == b
        counts.append(len(b))
    record(3, agree and counts == [2, 3, 5, 8, 13], f"counts {counts}, brute force agrees={agree}")


def test_criterion_4_higher_block_invariance():
    bad = []
    for sys in (catalog.golden_mean(), catalog.full_shift()):
        for N in (2, 3):
            H = higher_block_sms(sys, N)
            for m in range(1, 7):
                if not compare_languages(H, sys, m):
                    bad.append((sys.name, N, m))
    record(4, not bad, f"M^[N] vs M for N in 2,3 and m <= 6 on both systems, unequal={bad}")


def test_criterion_5_swap_textile():
    T = swap_textile()
    D = dual_textile(T)
    checks = {
        "valid": bool(validate_textile(T)),
        "nondegenerate": all(check_nondegenerate(T, d) for d in range(1, 7)),
        "dual valid": bool(validate_textile(D)),
        "dual nondegenerate": all(check_nondegenerate(D, d) for d in range(1, 7)),
        "dual of dual": canonical_form(dual_textile(D)) == canonical_form(T),
    }
    record(5, all(checks.values()), ", ".join(f"{k}={v}" for k, v in checks.items()))


def test_criterion_6_decoders_and_phi_T():
    T = swap_textile()
    xi, eta = build_decoder(T, "xi", 2), build_decoder(T, "eta", 2)
    have = isinstance(xi, Decoder) and isinstance(eta, Decoder)
    swap = {"a": "b", "b": "a"}
    bad = 0
    total = 0
    for m in range(xi.window if have else 1, 9):
        for x in itertools.product(AB, repeat=m):
            y = apply_phi_T(T, x, xi)
            expected = tuple((swap[c[0]],) for c in x[y.start:y.end])
            total += 1
            bad += y.word != expected
    ok = have and bad == 0 and total > 0
    windows = (xi.window, eta.window) if have else None
    record(6, ok, f"decoder windows {windows}; phi_T = swap on {total} words, mismatches {bad}")


def chains():
    sw = catalog.swap_step()
    return {"swap": as_chain(sw), "swap.swap": PsseChain((sw, sw), "swap2"), "shift": catalog.shift_chain()}


def inputs(L, exhaustive=12, sample=1500):
    """Every word of length L when that is at most 2^exhaustive words, else a seeded sample."""
    if L <= exhaustive:
        return itertools.product(AB, repeat=L)
    rng = random.Random(L)
    return (tuple(rng.choice(AB) for _ in range(L)) for _ in range(sample))


def test_criterion_7_encoding():
    bad = []
    samples = 0
    for cname, ch in chains().items():
        code = forward_automorphism_code(ch)
        for k, n in SLOPES:
            enc = Encoder.build(ch, k, n)
            ident = identify_subshift(ch, k, n)
            for m in range(1, 5):
                L = encode_length(enc, m, lambda L: AB[:1] * L)
                image = set()
                for x in itertools.product(AB, repeat=L):
                    out = enc.encode(x).crop(0, m)
                    if len(out) == m:
                        image.add(out.word)
                if image != language(ident, m):
                    bad.append((cname, k, n, m, "image"))
            # intertwining: encoding φ^k σ^n x reads the encoding of x one symbol later
            L = encode_length(enc, 4, lambda L: AB[:1] * L) + k * (code.window - 1) + n
            for x in inputs(L):
                e1 = enc.encode(x)
                e2 = enc.encode(apply_automorphism(code, x, k, n))
                lo, hi = max(e1.start - 1, e2.start), min(e1.end - 1, e2.end)
                samples += 1
                if hi <= lo or e2.crop(lo, hi).word != e1.shifted(-1).crop(lo, hi).word:
                    bad.append((cname, k, n, "intertwine"))
                    break
    record(7, not bad, f"3 chains x 3 slopes, image = identified language for m <= 4; "
                       f"{samples} intertwining samples; failures={bad}")


def test_criterion_8_identification():
    FS = catalog.full_shift()
    step_swap = psse_from_specification_automorphism(FS, catalog.swap(), name="swap")
    step_id = psse_from_specification_automorphism(FS, catalog.identity_spec(), name="id")
    A = identify_subshift(step_swap, 1, 1)
    B = identify_subshift(step_id, 1, 1)
    counts = [len(language(A, m)) for m in range(1, 9)]
    same = A == B and A.blocks == B.blocks
    record(8, counts == [2 ** m for m in range(1, 9)] and same, f"counts {counts}; swap and id identical={same}")


def patch_textiles():
    from lgtextile.sse import chain_P_system, chain_Q_system
    from lgtextile.symbolic import Specification
    GM = catalog.golden_mean()
    ident = Specification({(x, y): (x, y) for x in "ab" for y in "ab"}, "id2")
    sh = catalog.shift_chain()
    return {"swap": swap_textile(), "shift P": chain_P_system(sh).textile(),
            "shift Q": chain_Q_system(sh).textile(), "golden mean": build_lr_textile(GM, GM, ident)}


def fitting(k, n, cells, variant="check"):
    t = 0
    while all(c in cells for c in sum(bias_cells(k, n, t, variant), [])):
        t += 1
    return t


def test_criterion_9_patch_properties():
    bad = []
    relations = 0
    for name, T in patch_textiles().items():
        Ns, Ms = sms_from_lgs(T.N), sms_from_lgs(T.M)
        m_len = len(next(iter(T.M.labels())))
        shifter = PatchShifter(T)
        for k, n in SLOPES:
            found = {}
            for rows in range(1, 5):
                for cols in range(1, 5):
                    cells = rectangle(rows, cols)
                    count = fitting(k, n, cells)
                    for p in enumerate_patches(T, cells):
                        if not validate_patch(T, p):
                            bad.append((name, "invalid patch"))
                        if count:
                            found.setdefault(count, set()).add(extract_bias_word(T, p, k, n, count=count))
                        h = fitting(k, n, cells, "hat")
                        if h >= 2:
                            hat = extract_bias_word(T, p, k, n, "hat", count=h)
                            q = p
                            for _ in range(n):
                                q = shifter.shift(q, "R")
                            want = hat_to_check(hat, n, m_len)
                            relations += 1
                            if extract_bias_word(T, q, k, n, count=len(want)) != want:
                                bad.append((name, k, n, "relation"))
            for count, words in found.items():
                lang = language(product_system(Ns, Ms, k, n), count, 0)
                if words != lang:
                    bad.append((name, k, n, count, len(words), len(lang)))
    record(9, not bad and relations > 0,
           f"4 textiles x 3 slopes, patches up to 4x4 exhaust the product language; "
           f"{relations} shift relations checked; failures={bad}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
