"""Command-line front end. Exit codes: 0 success or equal, 1 failure or unequal, 2 usage or parse error."""

import argparse
import json
import sys

from ..errors import LgtError, ParseError
from ..lgs import check_left_resolving, lgs_from_sms, validate_lgs, window_start
from ..sms import compare_languages, higher_block_sms, language, product_system, validate_sms
from ..sse import (
    Encoder, apply_automorphism, as_chain, chain_P_system, chain_Q_system, forward_automorphism_code,
    identify_subshift, psse_from_specification_automorphism, validate_chain, validate_psse_step)
from ..symbolic import Alphabet, format_label_word, sort_key
from ..textile import (
    build_decoder, build_lr_textile, check_nondegenerate, describe, dual_textile, textile_higher_block,
    validate_textile)
from ..textile.decode import Decoder
from ..verdict import Verdict
from .grammar import Decl, SystemFile, load, parse_word, serialize, serialize_decl


class Report:
    def __init__(self, out):
        self.out = out

    def line(self, text=""):
        print(text, file=self.out)

    def witness(self, payload):
        if isinstance(payload, Verdict):
            text = payload.witness_json()
        else:
            text = json.dumps(payload, sort_keys=True, default=str)
        self.line(f"WITNESS {text}")

    def verdict(self, title, v):
        if v:
            self.line(f"{title}: ok")
            return 0
        self.line(f"{title}: FAILED ({', '.join(v.kinds())})")
        for x in v.violations:
            self.line(f"  {x.kind} at level {x.level}: {json.dumps(x.detail, sort_keys=True, default=str)}")
        self.witness(v)
        return 1


def _words(ws):
    return sorted(ws, key=sort_key)


def cmd_validate(f, a, r):
    d = f.get(a.system)
    if d.kind in ("sms", "graph"):
        sys_ = f.system(a.system)
        code = r.verdict(f"{a.system} symbolic matrix system", validate_sms(sys_))
        if code:
            return code
        g = lgs_from_sms(sys_)
        code = r.verdict(f"{a.system} λ-graph system", validate_lgs(g))
        lr = check_left_resolving(g)
        r.line(f"{a.system} left-resolving: {'yes' if lr else 'no'}")
        if not lr:
            r.witness(lr)
        return code
    if d.kind == "psse":
        return r.verdict(f"{a.system} equivalence step", validate_psse_step(d.value))
    if d.kind == "chain":
        return r.verdict(f"{a.system} chain", validate_chain(d.value))
    raise LgtError(f"cannot validate a {d.kind}")


def cmd_lang(f, a, r):
    sys_ = f.system(a.system)
    words = _words(language(sys_, a.len, a.base))
    if not sys_.stationary:
        l0 = window_start(lgs_from_sms(sys_), a.len, a.base)
        r.line(f"# window levels {l0}..{l0 + a.len} of {sys_.n_levels} (truncated explicit system)")
    for w in words:
        r.line(format_label_word(w))
    r.line(f"count {len(words)}")
    return 0


def cmd_compare(f, a, r):
    A, B = f.system(a.a), f.system(a.b)
    recode = None
    if a.recode:
        spec = f.get(a.recode, ("spec",)).value
        recode = lambda w: tuple(spec(x) for x in w)  # noqa: E731
    v = compare_languages(A, B, a.len, recode, a.base, a.base)
    r.line(f"sizes {v.info['size_a']} {v.info['size_b']}")
    if v:
        r.line("languages equal")
        return 0
    r.line("languages differ")
    for x in v.violations:
        r.line(f"  {x.kind}: {x.detail['word']}")
    r.witness(v)
    return 1


def _emit_system(r, name, sys_, alphabet_name="composite"):
    r.line(serialize_decl(Decl("sms", name, sys_, (alphabet_name,))))


def cmd_higher_block(f, a, r):
    out = higher_block_sms(f.system(a.system), a.N)
    _emit_system(r, f"{a.system}_{a.N}", out, f.get(a.system).meta[0])
    return r.verdict("validate", validate_sms(out))


def cmd_product(f, a, r):
    out = product_system(f.system(a.nsys), f.system(a.msys), a.k, a.n)
    _emit_system(r, f"{a.nsys}{a.k}{a.msys}{a.n}", out)
    return r.verdict("validate", validate_sms(out))


def _textile(f, a):
    if a.psse or a.chain:
        ch = as_chain(f.get(a.psse or a.chain, ("psse", "chain")).value)
        cb = chain_P_system(ch) if a.side == "P" else chain_Q_system(ch)
        return cb.textile()
    if not (a.m and a.nsys and a.kappa):
        raise LgtError("give --m, --n-sys and --kappa, or --psse/--chain")
    return build_lr_textile(f.system(a.m), f.system(a.nsys), f.get(a.kappa, ("spec",)).value, "T")


def cmd_textile(f, a, r):
    T = _textile(f, a)
    op = a.op
    if op == "build-lr":
        r.line(describe(T))
        return r.verdict("textile", validate_textile(T))
    if op == "validate":
        return r.verdict("textile", validate_textile(T))
    if op == "dual":
        D = dual_textile(T)
        r.line(describe(D))
        return r.verdict("dual textile", validate_textile(D))
    if op == "check-nondeg":
        return r.verdict(f"nondegenerate to depth {a.depth}", check_nondegenerate(T, a.depth))
    if op == "decoder":
        d = build_decoder(T, a.code, a.window)
        if isinstance(d, Decoder):
            r.line(f"{a.code}-decoder: window {d.window}, offset {d.offset}")
            for img, sym in d.table:
                r.line(f"  {format_label_word(img)} -> {format_label_word((sym,))}")
            return 0
        r.line(f"{a.code}: not decodable within window {a.window}")
        r.witness(d.to_dict() if d is not None else {"window": a.window})
        return 1
    if op == "higher-block":
        H = textile_higher_block(T, a.N)
        r.line(describe(H))
        return r.verdict("higher block textile", validate_textile(H))
    raise LgtError(f"unknown textile operation {op}")


def _chain(f, name):
    return as_chain(f.get(name, ("psse", "chain")).value)


def cmd_psse(f, a, r):
    op = a.op
    if op == "validate":
        d = f.get(a.chain, ("psse", "chain"))
        v = validate_psse_step(d.value) if d.kind == "psse" else validate_chain(d.value)
        return r.verdict(a.chain, v)
    if op == "from-spec":
        sys_ = f.system(a.system)
        pi = f.get(a.spec, ("spec",)).value
        step = psse_from_specification_automorphism(sys_, pi, name=f"{a.system}_{a.spec}")
        out = _file_for_step(f, a.system, step)
        r.line(serialize(out).rstrip("\n"))
        return r.verdict("equivalence step", validate_psse_step(step))
    ch = _chain(f, a.chain)
    alphabet = f.alphabet_of(a.chain)
    if op == "induce":
        cb = chain_P_system(ch) if a.side == "P" else chain_Q_system(ch)
        _emit_system(r, f"{a.chain}_{a.side}", cb.blocked)
        r.line(f"kappa_{a.side}: " + ", ".join(
            f"{format_label_word((k,))} -> {format_label_word((v,))}" for k, v in cb.kappa.items()))
        return 0
    if op == "identify":
        out = identify_subshift(ch, a.k, a.n, a.side)
        _emit_system(r, f"{a.chain}_{a.k}_{a.n}", out)
        if a.len:
            words = _words(language(out, a.len))
            r.line(f"count {len(words)} at length {a.len}")
        return 0
    if not a.word:
        raise LgtError("--word is required")
    word = parse_word(a.word, alphabet)
    if op == "apply":
        code = forward_automorphism_code(ch)
        out = apply_automorphism(code, word, a.k, a.n)
        r.line(f"{format_label_word(out.word)} at {out.start}")
        return 0
    if op == "encode":
        out = Encoder.build(ch, a.k, a.n).encode(word)
        r.line(f"{format_label_word(out.word)} at {out.start}")
        return 0
    raise LgtError(f"unknown psse operation {op}")


def _file_for_step(f, sysname, step):
    out = SystemFile()
    sys_decl = f.get(sysname)
    alph = f.get(sys_decl.meta[0], ("alphabet",))
    out.add(alph)
    out.add(sys_decl)
    unit = step.kappa0.image()[0][0]
    cname = "C" if "C" not in f.decls else "C_unit"
    out.add(Decl("alphabet", cname, Alphabet(cname, (unit,))))
    src = (alph.name,)
    out.add(Decl("spec", "kappa", step.kappa0, (src, (cname, alph.name))))
    out.add(Decl("spec", "kappa'", step.kappa1, (src, (alph.name, cname))))
    out.add(Decl("psse", step.name, step, (sysname, sysname, cname, alph.name, "kappa", "kappa'")))
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="lgtextile", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file")
        return sp

    v = with_file(sub.add_parser("validate", help="validate a system, step or chain"))
    v.add_argument("--system", required=True)

    la = with_file(sub.add_parser("lang", help="list the words of a length"))
    la.add_argument("--system", required=True)
    la.add_argument("--len", type=int, required=True)
    la.add_argument("--base", default="deepest")

    c = with_file(sub.add_parser("compare-lang", help="compare two languages"))
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--len", type=int, required=True)
    c.add_argument("--recode")
    c.add_argument("--base", default="deepest")

    h = with_file(sub.add_parser("higher-block"))
    h.add_argument("--system", required=True)
    h.add_argument("--N", type=int, default=2)

    pr = with_file(sub.add_parser("product"))
    pr.add_argument("--n-sys", dest="nsys", required=True)
    pr.add_argument("--m-sys", dest="msys", required=True)
    pr.add_argument("--k", type=int, default=1)
    pr.add_argument("--n", type=int, default=1)

    t = sub.add_parser("textile")
    t.add_argument("op", choices=["build-lr", "dual", "validate", "check-nondeg", "decoder", "higher-block"])
    t.add_argument("file")
    t.add_argument("--m")
    t.add_argument("--n-sys", dest="nsys")
    t.add_argument("--kappa")
    t.add_argument("--psse")
    t.add_argument("--chain")
    t.add_argument("--side", choices=["P", "Q"], default="P")
    t.add_argument("--depth", type=int, default=4)
    t.add_argument("--code", choices=["xi", "eta"], default="xi")
    t.add_argument("--window", type=int, default=4)
    t.add_argument("--N", type=int, default=2)

    s = sub.add_parser("psse")
    s.add_argument("op", choices=["validate", "induce", "identify", "apply", "encode", "from-spec"])
    s.add_argument("file")
    s.add_argument("--chain")
    s.add_argument("--system")
    s.add_argument("--spec")
    s.add_argument("--side", choices=["P", "Q"], default="P")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--len", type=int)
    s.add_argument("--word")
    return p


HANDLERS = {"validate": cmd_validate, "lang": cmd_lang, "compare-lang": cmd_compare,
            "higher-block": cmd_higher_block, "product": cmd_product, "textile": cmd_textile, "psse": cmd_psse}


def run_command(argv, out=None):
    out = out or sys.stdout
    r = Report(out)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if a.command == "psse":
        need = {"from-spec": ("system", "spec")}.get(a.op, ("chain",))
        missing = [n for n in need if not getattr(a, n)]
        if missing:
            r.line(f"error: psse {a.op} needs --{' --'.join(missing)}")
            return 2
    try:
        f = load(a.file)
    except ParseError as exc:
        r.line(f"parse error: {exc}")
        r.witness(exc.witness)
        return 2
    except OSError as exc:
        r.line(f"error: {exc}")
        return 2
    try:
        return HANDLERS[a.command](f, a, r)
    except LgtError as exc:
        r.line(f"error: {exc}")
        r.witness({"error": type(exc).__name__, **exc.witness})
        return 1


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
