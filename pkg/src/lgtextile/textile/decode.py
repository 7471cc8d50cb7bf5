"""Bounded lift searches, sliding-block decoders for ξ and η, and φ_T on words."""

from collections import defaultdict
from dataclasses import dataclass

from ..errors import DecoderError, InadmissibleWordError
from ..lgs import enumerate_paths
from ..symbolic import format_label_word
from ..verdict import Verdict
from ..window import Window
from .system import dual_textile, j_maps, textile_higher_block

CODES = ("xi", "eta")


def _image(T, code, l, e):
    if code == "xi":
        return T.M.label(l, T.p(l, e))
    if code == "eta":
        return T.M.label(l + 1, T.q(l, e))
    raise ValueError(f"unknown code {code!r}; expected one of {CODES}")


def _preimages(T, side, l):
    """M-edge index -> K-edges at level l mapping onto it under p (or q)."""
    out = defaultdict(list)
    lay = T.layer(l)
    images = lay.p if side == "p" else lay.q
    for e, m in enumerate(images):
        out[m].append(e)
    return out


def lift_path(T, side, l0, mpath):
    """A K-path from level l0 whose p- (or q-) image is mpath, or None."""
    pre = [_preimages(T, side, l0 + t) for t in range(len(mpath))]

    def dfs(t, prev_tgt, acc):
        if t == len(mpath):
            return acc
        for e in pre[t].get(mpath[t], ()):
            k = T.K.edges(l0 + t)[e]
            if prev_tgt is None or k.src == prev_tgt:
                found = dfs(t + 1, k.tgt, acc + (e,))
                if found is not None:
                    return found
        return None

    return dfs(0, None, ())


def check_nondegenerate(T, depth):
    """Every M-path of the given length lifts to a K-path under p and under q."""
    v = Verdict(info={"depth": depth})
    for l0 in T.levels_for(depth):
        for side, start in (("p", l0), ("q", l0 + 1)):
            for mpath in enumerate_paths(T.M, start, depth):
                if lift_path(T, side, l0, mpath) is None:
                    labels = tuple(T.M.label(start + t, e) for t, e in enumerate(mpath))
                    v.add("unliftable", l0, side=side, m_level=start, path=list(mpath),
                          word=format_label_word(labels))
                    break
    return v


def k_words(T, w):
    """(K-label word, xi image, eta image) for every K-path of length w over the available windows."""
    out = set()
    for l0 in T.levels_for(w):
        for path in enumerate_paths(T.K, l0, w):
            kw = tuple(T.K.label(l0 + t, e) for t, e in enumerate(path))
            xi = tuple(_image(T, "xi", l0 + t, e) for t, e in enumerate(path))
            eta = tuple(_image(T, "eta", l0 + t, e) for t, e in enumerate(path))
            out.add((kw, xi, eta))
    return out


@dataclass(frozen=True)
class Decoder:
    """Reads an image word of length `window` and returns the K-symbol at position `offset`."""

    code: str
    window: int
    offset: int
    table: tuple  # sorted (image word, K-symbol) pairs

    @property
    def memory(self):
        return self.offset

    @property
    def anticipation(self):
        return self.window - 1 - self.offset

    def lookup(self):
        return dict(self.table)

    def apply(self, word):
        """Decode a Window (or plain word at coordinate 0) into a Window of K-symbols."""
        win = Window.of(word)
        if len(win) < self.window:
            raise InadmissibleWordError(f"word of length {len(win)} shorter than decoder window {self.window}")
        table = self.lookup()
        out = []
        for s in range(len(win) - self.window + 1):
            chunk = win.word[s:s + self.window]
            if chunk not in table:
                raise InadmissibleWordError(f"window {format_label_word(chunk)} is not an image word",
                                            {"position": win.start + s, "window": format_label_word(chunk)})
            out.append(table[chunk])
        return Window(win.start + self.offset, tuple(out))


@dataclass(frozen=True)
class Ambiguity:
    code: str
    window: int
    image: tuple
    k_words: tuple

    def __bool__(self):
        return False

    def to_dict(self):
        return {"code": self.code, "window": self.window, "image": format_label_word(self.image),
                "k_words": [format_label_word(w) for w in self.k_words]}


def build_decoder(T, code, max_window=4):
    """Smallest window (then smallest offset) at which image words determine a K-symbol."""
    if code not in CODES:
        raise ValueError(f"unknown code {code!r}")
    last = None
    for w in range(1, max_window + 1):
        rows = k_words(T, w)
        for offset in range(w):
            table, clash = {}, None
            for kw, xi, eta in sorted(rows, key=lambda r: (format_label_word(r[0]), format_label_word(r[1]))):
                img = xi if code == "xi" else eta
                sym = kw[offset]
                if table.setdefault(img, (sym, kw))[0] != sym:
                    clash = (img, (table[img][1], kw))
                    break
            if clash is None:
                items = sorted(((img, s) for img, (s, _) in table.items()), key=lambda r: format_label_word(r[0]))
                return Decoder(code, w, offset, tuple(items))
            if offset == 0:
                last = Ambiguity(code, w, clash[0], clash[1])
    return last


def require_decoder(T, code, max_window=4):
    d = build_decoder(T, code, max_window)
    if not isinstance(d, Decoder):
        raise DecoderError(f"no {code} decoder within window {max_window}", d.to_dict() if d is not None else {})
    return d


def apply_phi_T(T, word, decoder=None, max_window=4):
    """φ_T = η∘ξ^{-1} on a finite word: ξ-decode, then read the bottom labels."""
    if decoder is None:
        decoder = require_decoder(T, "xi", max_window)
    cells = decoder.apply(word)
    lower = {k: quad[3] for k, quad in j_maps(T).items()}
    return Window(cells.start, tuple(lower[c] for c in cells.word))


def expansion_report(T, k, max_window=4):
    """Run the 2k-block, dual, decoder pipeline and report what was found.

    Whether φ_T is expansive with constant 1/k is not decided here. The
    report only says whether the dual of the 2k-block textile has ξ and η
    decoders within `max_window`.
    """
    D = dual_textile(textile_higher_block(T, 2 * k))
    out = {"k": k, "block": 2 * k, "max_window": max_window}
    for code in CODES:
        d = build_decoder(D, code, max_window)
        if isinstance(d, Decoder):
            out[code] = {"window": d.window, "offset": d.offset}
        else:
            out[code] = d.to_dict() if d is not None else None
    return out
