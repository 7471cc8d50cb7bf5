"""The system-definition file format.

    alphabet S = { a, b }
    spec pi : S -> S { a -> b, b -> a }
    sms FS over S stationary { M = [[a+b]] I = [[1]] }
    sms AB over S { level 0 { M = [[a, b]] I = [[1, 1]] } level 1 { ... } }
    graph GM over S { v1 -a-> v1  v1 -a-> v2  v2 -b-> v1 }
    psse swap { from = FS, to = FS, C = C, D = S, kappa = k0, kappa' = k1,
                P[2l] = [[I]], P[2l+1] = [[I]], Q[2l] = [[a+b]], ... }
    chain sw2 = swap . swap

Terms are juxtaposed symbols, split by longest match against the alphabet in
scope; `(x,y)` inside a term is read as the letters x y. `#` starts a comment.
"""

import re
from dataclasses import dataclass, field

from ..errors import LgtError, ParseError
from ..lgs import LabeledGraph, lgs_from_labeled_graph, sms_from_lgs
from ..sms import SymbolicMatrixSystem
from ..sse import BACKWARD, FORWARD, HalfLevels, PsseChain, PsseStep
from ..symbolic import Alphabet, BitMatrix, FormalSum, Specification, SymbolicMatrix, sort_key

PUNCT = "{}[](),=+.:*"
_TOKEN = re.compile(r"\s+|#[^\n]*|->|-|[{}\[\](),=+.:*]|[^\s{}\[\](),=+.:*#-]+")


@dataclass(frozen=True)
class Token:
    kind: str  # "name" or the punctuation itself
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        s = m.group(0)
        if not (s[0].isspace() or s[0] == "#"):
            kind = s if (s in PUNCT or s in ("->", "-")) else "name"
            out.append(Token(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass(frozen=True)
class Decl:
    kind: str
    name: str
    value: object
    meta: tuple = ()  # names of referenced declarations, kept for serialization


@dataclass
class SystemFile:
    decls: dict = field(default_factory=dict)

    def add(self, decl, token=None):
        if decl.name in self.decls:
            raise ParseError(f"duplicate name {decl.name!r}", token.line if token else None,
                             token.col if token else None)
        self.decls[decl.name] = decl

    def get(self, name, kinds=None):
        d = self.decls.get(name)
        if d is None or (kinds and d.kind not in kinds):
            want = "/".join(kinds) if kinds else "declaration"
            raise LgtError(f"no {want} named {name!r}")
        return d

    def system(self, name):
        """An SMS by name; labeled graphs are converted."""
        d = self.get(name, ("sms", "graph"))
        if d.kind == "graph":
            return sms_from_lgs(lgs_from_labeled_graph(d.value, name))
        return d.value

    def alphabet_of(self, name):
        d = self.get(name)
        if d.kind in ("sms", "graph"):
            return self.get(d.meta[0], ("alphabet",)).value
        if d.kind in ("psse", "chain"):
            step = d.value if d.kind == "psse" else d.value.steps[0]
            return self.alphabet_of(self._system_name(step.source))
        raise LgtError(f"{name!r} has no alphabet")

    def _system_name(self, sys):
        for d in self.decls.values():
            if d.kind == "sms" and d.value == sys:
                return d.name
        for d in self.decls.values():
            if d.kind == "graph" and self.system(d.name) == sys:
                return d.name
        raise LgtError("system is not declared in this file")

    def __eq__(self, other):
        return isinstance(other, SystemFile) and list(self.decls.items()) == list(other.decls.items())


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0
        self.file = SystemFile()

    # token helpers
    def peek(self, k=0):
        return self.toks[self.pos + k]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def expect(self, kind, text=None):
        t = self.next()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {t.text or 'end of file'!r}", t.line, t.col)
        return t

    def accept(self, kind, text=None):
        t = self.peek()
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def ref(self, kinds):
        t = self.expect("name")
        d = self.file.decls.get(t.text)
        if d is None or d.kind not in kinds:
            raise ParseError(f"unresolved reference {t.text!r} (expected {'/'.join(kinds)})", t.line, t.col)
        return d, t

    # grammar
    def parse(self):
        while self.peek().kind != "eof":
            t = self.expect("name")
            handler = getattr(self, f"p_{t.text}", None)
            if handler is None:
                raise ParseError(f"unknown declaration {t.text!r}", t.line, t.col)
            handler()
        return self.file

    def p_alphabet(self):
        name = self.expect("name")
        self.expect("=")
        self.expect("{")
        symbols = []
        while not self.accept("}"):
            s = self.expect("name")
            if s.text in symbols:
                raise ParseError(f"duplicate symbol {s.text!r}", s.line, s.col)
            symbols.append(s.text)
            self.accept(",")
        if not symbols:
            raise self.error("alphabet must not be empty", name)
        self.file.add(Decl("alphabet", name.text, Alphabet(name.text, tuple(symbols))), name)

    def alphabet_names(self, stop):
        names = []
        while self.peek().kind not in stop:
            d, _ = self.ref(("alphabet",))
            names.append(d.name)
            self.accept("*") or self.accept(".")
        return tuple(names)

    def symbols_of(self, names):
        out = set()
        for n in names:
            out |= set(self.file.decls[n].value.symbols)
        return out

    def split(self, tok, symbols):
        """Longest-match segmentation of a name token into symbols."""
        text, out, i = tok.text, [], 0
        longest = max((len(s) for s in symbols), default=0)
        while i < len(text):
            for L in range(min(longest, len(text) - i), 0, -1):
                if text[i:i + L] in symbols:
                    out.append(text[i:i + L])
                    i += L
                    break
            else:
                raise ParseError(f"cannot split {text!r} into declared symbols", tok.line, tok.col + i)
        return out

    def term(self, symbols, stops):
        letters = []
        while self.peek().kind not in stops:
            if self.accept("("):
                while not self.accept(")"):
                    letters += self.split(self.expect("name"), symbols)
                    self.accept(",")
            else:
                letters += self.split(self.expect("name"), symbols)
        return tuple(letters)

    def entry(self, symbols):
        if self.peek().kind == "name" and self.peek().text == "0" and self.peek(1).kind in (",", "]"):
            self.next()
            return FormalSum()
        terms = [self.term(symbols, ("+", ",", "]"))]
        while self.accept("+"):
            terms.append(self.term(symbols, ("+", ",", "]")))
        if any(len(t) == 0 for t in terms):
            raise self.error("empty term")
        return FormalSum(terms)

    def matrix(self, cell):
        self.expect("[")
        rows = []
        while not self.accept("]"):
            self.expect("[")
            row = []
            while not self.accept("]"):
                row.append(cell())
                self.accept(",")
            rows.append(tuple(row))
            self.accept(",")
        return tuple(rows)

    def symbolic(self, symbols):
        start = self.peek()
        try:
            return SymbolicMatrix(self.matrix(lambda: self.entry(symbols)))
        except ParseError:
            raise
        except LgtError as exc:
            raise ParseError(str(exc), start.line, start.col) from None

    def bits(self):
        def cell():
            t = self.expect("name")
            if not t.text.isdigit():
                raise ParseError(f"expected 0 or 1, found {t.text!r}", t.line, t.col)
            return int(t.text)
        start = self.peek()
        try:
            return BitMatrix(self.matrix(cell))
        except ParseError:
            raise
        except (LgtError, ValueError) as exc:
            raise ParseError(str(exc), start.line, start.col) from None

    def p_spec(self):
        name = self.expect("name")
        self.expect(":")
        src = self.alphabet_names(("->",))
        self.expect("->")
        dst = self.alphabet_names(("{",))
        self.expect("{")
        s_src, s_dst = self.symbols_of(src), self.symbols_of(dst)
        mapping = {}
        while not self.accept("}"):
            t = self.peek()
            w = self.term(s_src, ("->",))
            self.expect("->")
            v = self.term(s_dst, (",", "}"))
            if w in mapping:
                raise ParseError(f"word {' '.join(w)!r} mapped twice", t.line, t.col)
            mapping[w] = v
            self.accept(",")
        try:
            spec = Specification(mapping, name.text, "*".join(src), "*".join(dst))
        except LgtError as exc:
            raise ParseError(str(exc), name.line, name.col) from None
        self.file.add(Decl("spec", name.text, spec, (src, dst)), name)

    def p_sms(self):
        name = self.expect("name")
        self.expect("name", "over")
        alph, _ = self.ref(("alphabet",))
        symbols = set(alph.value.symbols)
        if self.accept("name", "stationary"):
            self.expect("{")
            M, I = self.block(symbols)
            self.expect("}")
            sys = SymbolicMatrixSystem.from_stationary(M, I, alph.value, name.text)
        else:
            self.expect("{")
            blocks = []
            while not self.accept("}"):
                self.expect("name", "level")
                lv = self.expect("name")
                if lv.text != str(len(blocks)):
                    raise ParseError(f"expected level {len(blocks)}, found {lv.text}", lv.line, lv.col)
                self.expect("{")
                blocks.append(self.block(symbols, require_I=True))
                self.expect("}")
            if not blocks:
                raise self.error("explicit system without levels", name)
            sys = SymbolicMatrixSystem.from_blocks(blocks, alph.value, name.text)
        self.file.add(Decl("sms", name.text, sys, (alph.name,)), name)

    def block(self, symbols, require_I=False):
        self.expect("name", "M")
        self.expect("=")
        M = self.symbolic(symbols)
        I = None
        if self.accept("name", "I"):
            self.expect("=")
            I = self.bits()
        elif require_I:
            raise self.error("expected 'I = ...'")
        if I is None:
            I = BitMatrix.identity(M.rows)
        return M, I

    def p_graph(self):
        name = self.expect("name")
        self.expect("name", "over")
        alph, _ = self.ref(("alphabet",))
        symbols = set(alph.value.symbols)
        self.expect("{")
        vertices, edges = [], []
        while not self.accept("}"):
            s = self.expect("name").text
            self.expect("-")
            label = self.term(symbols, ("->",))
            self.expect("->")
            t = self.expect("name").text
            for v in (s, t):
                if v not in vertices:
                    vertices.append(v)
            edges.append((s, t, label))
            self.accept(",")
        self.file.add(Decl("graph", name.text, LabeledGraph(tuple(vertices), tuple(edges)), (alph.name,)), name)

    def p_psse(self):
        name = self.expect("name")
        self.expect("{")
        refs, raw = {}, {}
        direction = FORWARD
        while not self.accept("}"):
            key = self.expect("name")
            if key.text in "PQXY" and self.accept("["):
                idx = self.half_index()
                self.expect("]")
                self.expect("=")
                start = self.pos
                self.skip_matrix()
                slot = raw.setdefault(key.text, {})
                if idx in slot:
                    raise ParseError(f"{key.text}[{idx}] given twice", key.line, key.col)
                slot[idx] = start
            else:
                self.expect("=")
                kinds = {"from": ("sms", "graph"), "to": ("sms", "graph"), "C": ("alphabet",),
                         "D": ("alphabet",), "kappa": ("spec",), "kappa'": ("spec",)}
                if key.text == "direction":
                    direction = self.expect("name").text
                    if direction not in (FORWARD, BACKWARD):
                        raise ParseError("direction is forward or backward", key.line, key.col)
                elif key.text in kinds:
                    refs[key.text], _ = self.ref(kinds[key.text])
                else:
                    raise ParseError(f"unknown psse field {key.text!r}", key.line, key.col)
            self.accept(",")
        for k in ("from", "to", "C", "D", "kappa", "kappa'"):
            if k not in refs:
                raise self.error(f"psse {name.text!r} is missing {k!r}", name)
        C, D = set(refs["C"].value.symbols), set(refs["D"].value.symbols)
        end = self.pos
        mats = {}
        for key, slot in raw.items():
            mats[key] = self.half_levels(key, slot, C if key == "P" else D, name)
        self.pos = end
        for key in "PQXY":
            if key not in mats:
                raise self.error(f"psse {name.text!r} is missing {key}", name)
        src = self.file.system(refs["from"].name)
        tgt = self.file.system(refs["to"].name)
        step = PsseStep(src, tgt, refs["kappa"].value, refs["kappa'"].value, mats["P"], mats["Q"], mats["X"],
                        mats["Y"], direction, name.text)
        meta = tuple(refs[k].name for k in ("from", "to", "C", "D", "kappa", "kappa'"))
        self.file.add(Decl("psse", name.text, step, meta), name)

    def half_index(self):
        t = self.expect("name")
        if t.text.isdigit():
            return int(t.text)
        if t.text == "2l":
            if self.accept("+"):
                one = self.expect("name")
                if one.text != "1":
                    raise ParseError("expected 2l+1", one.line, one.col)
                return "odd"
            return "even"
        raise ParseError(f"bad half-level index {t.text!r}", t.line, t.col)

    def skip_matrix(self):
        depth = 0
        while True:
            t = self.next()
            if t.kind == "eof":
                raise ParseError("unterminated matrix", t.line, t.col)
            if t.kind == "[":
                depth += 1
            elif t.kind == "]":
                depth -= 1
                if depth == 0:
                    return

    def half_levels(self, key, slot, symbols, name):
        def read(pos):
            self.pos = pos
            return self.bits() if key in "XY" else self.symbolic(symbols)
        keys = set(slot)
        if keys <= {"even", "odd"}:
            if keys != {"even", "odd"}:
                raise self.error(f"{key} needs both [2l] and [2l+1]", name)
            return HalfLevels((read(slot["even"]), read(slot["odd"])), True)
        if any(isinstance(k, str) for k in keys):
            raise self.error(f"{key} mixes templates and explicit indices", name)
        if keys != set(range(len(keys))):
            raise self.error(f"{key} indices must be 0..{len(keys) - 1}", name)
        return HalfLevels(tuple(read(slot[j]) for j in range(len(keys))))

    def p_chain(self):
        name = self.expect("name")
        self.expect("=")
        steps, names = [], []
        while True:
            d, _ = self.ref(("psse",))
            steps.append(d.value)
            names.append(d.name)
            if not self.accept("."):
                break
        self.file.add(Decl("chain", name.text, PsseChain(tuple(steps), name.text), tuple(names)), name)


def parse_file(text):
    return Parser(text).parse()


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_file(fh.read())


# serialization

def _word(w):
    return " ".join(str(x) for x in w)


def _entry(e):
    if not e:
        return "0"
    return "+".join(_word(w) for w in e)


def _sym_matrix(M):
    return "[" + ", ".join("[" + ", ".join(_entry(e) for e in row) + "]" for row in M.entries) + "]"


def _bit_matrix(B):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in B.entries) + "]"


def serialize_decl(d):
    if d.kind == "alphabet":
        return f"alphabet {d.name} = {{ {', '.join(d.value.symbols)} }}"
    if d.kind == "spec":
        src, dst = d.meta
        body = ", ".join(f"{_word(k)} -> {_word(v)}" for k, v in d.value.items())
        return f"spec {d.name} : {' * '.join(src)} -> {' * '.join(dst)} {{ {body} }}"
    if d.kind == "sms":
        sys = d.value
        if sys.stationary:
            M, I = sys.blocks[0]
            return f"sms {d.name} over {d.meta[0]} stationary {{ M = {_sym_matrix(M)} I = {_bit_matrix(I)} }}"
        lines = [f"sms {d.name} over {d.meta[0]} {{"]
        for l, (M, I) in enumerate(sys.blocks):
            lines.append(f"  level {l} {{ M = {_sym_matrix(M)} I = {_bit_matrix(I)} }}")
        lines.append("}")
        return "\n".join(lines)
    if d.kind == "graph":
        body = "  ".join(f"{s} -{_word(a)}-> {t}" for s, t, a in d.value.edges)
        return f"graph {d.name} over {d.meta[0]} {{ {body} }}"
    if d.kind == "psse":
        s = d.value
        src, tgt, C, D, k0, k1 = d.meta
        lines = [f"psse {d.name} {{",
                 f"  from = {src}, to = {tgt}, C = {C}, D = {D}, kappa = {k0}, kappa' = {k1},"]
        if s.direction != FORWARD:
            lines.append(f"  direction = {s.direction},")
        for key in "PQXY":
            h = getattr(s, key)
            fmt = _bit_matrix if key in "XY" else _sym_matrix
            if h.periodic:
                lines.append(f"  {key}[2l] = {fmt(h.values[0])}, {key}[2l+1] = {fmt(h.values[1])},")
            else:
                lines.append("  " + ", ".join(f"{key}[{j}] = {fmt(m)}" for j, m in enumerate(h.values)) + ",")
        lines.append("}")
        return "\n".join(lines)
    if d.kind == "chain":
        return f"chain {d.name} = {' . '.join(d.meta)}"
    raise ValueError(f"unknown declaration kind {d.kind}")


def serialize(f):
    return "\n".join(serialize_decl(d) for d in f.decls.values()) + "\n"


def symbols_sorted(alphabet):
    return sorted(alphabet.symbols, key=sort_key)


def parse_word(text, alphabet):
    """A command-line word such as 'abba' split into the alphabet's symbols."""
    p = Parser(text)
    symbols = set(alphabet.symbols)
    return tuple((s,) for s in p.term(symbols, ("eof",)))
