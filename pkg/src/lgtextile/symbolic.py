"""Words, formal sums, symbolic matrices, 0/1 matrices and specifications.

A word is a plain tuple of letters. A letter is a string, or a tuple for
structured letters such as the quadruple labels of a textile. Products of
symbolic matrices concatenate words, so composite symbols flatten by
construction: ``(ab)c`` and ``a(bc)`` are the same tuple.
"""

from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType

from .errors import DimensionError, SpecificationError
from .verdict import Verdict


def sort_key(x):
    """Total order on letters, words and nested tuples of mixed type."""
    if isinstance(x, tuple):
        return (1, tuple(sort_key(y) for y in x))
    if isinstance(x, int):
        return (0, "", x)
    return (0, str(x), 0)


def as_word(w):
    if isinstance(w, tuple):
        return w
    if isinstance(w, str):
        return (w,)
    return tuple(w)


def format_letter(x):
    if isinstance(x, tuple):
        return "[" + ",".join(format_word(c) if isinstance(c, tuple) else format_letter(c) for c in x) + "]"
    return str(x)


def format_word(w, sep=None):
    """Juxtapose letters; fall back to spaces when some letter is longer than one character."""
    if not w:
        return "ε"
    parts = [format_letter(x) for x in w]
    if sep is None:
        sep = "" if all(len(p) == 1 for p in parts) else " "
    return sep.join(parts)


def format_label(label):
    """A label of length one prints bare, a composite label prints as ``(x,y)``."""
    if len(label) == 1:
        return format_letter(label[0])
    return "(" + ",".join(format_letter(x) for x in label) + ")"


def format_label_word(labels):
    if not labels:
        return "ε"
    parts = [format_label(lab) for lab in labels]
    if all(len(p) == 1 for p in parts) or all(len(lab) > 1 for lab in labels):
        return "".join(parts)
    return " ".join(parts)


@dataclass(frozen=True)
class Alphabet:
    name: str
    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise ValueError(f"alphabet {self.name} is empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"alphabet {self.name} has repeated symbols")

    def __contains__(self, s):
        return s in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)


class FormalSum:
    """Finite multiset of equal-length words. The empty multiset is the entry 0."""

    __slots__ = ("_items", "_hash")

    def __init__(self, terms=()):
        c = Counter(as_word(t) for t in terms)
        self._set(c)

    def _set(self, counter):
        items = tuple(sorted(((w, n) for w, n in counter.items() if n > 0), key=lambda kv: sort_key(kv[0])))
        lengths = {len(w) for w, _ in items}
        if len(lengths) > 1:
            raise DimensionError(f"formal sum mixes word lengths {sorted(lengths)}")
        self._items = items
        self._hash = hash(items)

    @classmethod
    def from_counts(cls, counts):
        out = cls.__new__(cls)
        out._set(Counter({as_word(w): n for w, n in dict(counts).items()}))
        return out

    @classmethod
    def parse(cls, text):
        """Convenience parser for single-character letters: ``"a+ab+0"``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        return cls(tuple(t) for t in text.split("+") if t != "0")

    zero = None  # set below

    def items(self):
        return self._items

    def counts(self):
        return dict(self._items)

    def support(self):
        return tuple(w for w, _ in self._items)

    def __iter__(self):
        for w, n in self._items:
            for _ in range(n):
                yield w

    def __len__(self):
        return sum(n for _, n in self._items)

    def __bool__(self):
        return bool(self._items)

    def multiplicity(self, w):
        return dict(self._items).get(as_word(w), 0)

    @property
    def word_length(self):
        return len(self._items[0][0]) if self._items else None

    def __add__(self, other):
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return FormalSum.from_counts(c)

    def concat(self, other):
        c = Counter()
        for u, m in self._items:
            for v, n in other._items:
                c[u + v] += m * n
        return FormalSum.from_counts(c)

    def scale(self, k):
        return FormalSum.from_counts({w: n * k for w, n in self._items})

    def map_words(self, f):
        c = Counter()
        for w, n in self._items:
            c[f(w)] += n
        return FormalSum.from_counts(c)

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return "0"
        return "+".join(format_word(w) for w in self)

    def __repr__(self):
        return f"FormalSum({str(self)!r})"


FormalSum.zero = FormalSum()


def _coerce_entry(e):
    if isinstance(e, FormalSum):
        return e
    if e == 0 or e is None:
        return FormalSum()
    if isinstance(e, str):
        return FormalSum.parse(e)
    if isinstance(e, tuple):
        return FormalSum([e])
    return FormalSum(e)


@dataclass(frozen=True)
class SymbolicMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_coerce_entry(e) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("symbolic matrix must have positive shape")
        if len({len(r) for r in rows}) != 1:
            raise DimensionError("ragged symbolic matrix")
        lengths = {e.word_length for r in rows for e in r if e}
        if len(lengths) > 1:
            raise DimensionError(f"symbolic matrix mixes word lengths {sorted(lengths)}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple(tuple(FormalSum() for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, n, word):
        w = as_word(word)
        return cls(tuple(tuple(FormalSum([w]) if i == j else FormalSum() for j in range(n)) for i in range(n)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def word_length(self):
        for r in self.entries:
            for e in r:
                if e:
                    return e.word_length
        return None

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def labels(self):
        return {w for r in self.entries for e in r for w in e.support()}

    def map_words(self, f):
        return SymbolicMatrix(tuple(tuple(e.map_words(f) for e in r) for r in self.entries))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries) + "]"


@dataclass(frozen=True)
class BitMatrix:
    """Nonnegative integer matrix; the matrices of a valid system are 0/1."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("bit matrix must have positive shape")
        if len({len(r) for r in rows}) != 1:
            raise DimensionError("ragged bit matrix")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("negative entry in bit matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_binary(self):
        return all(x in (0, 1) for r in self.entries for x in r)

    def column_owner(self, j):
        """The row holding the unique 1 of column j, or None."""
        ones = [i for i in range(self.rows) if self.entries[i][j] == 1]
        return ones[0] if len(ones) == 1 and sum(self.entries[i][j] for i in range(self.rows)) == 1 else None

    def __matmul__(self, other):
        return bit_mul(self, other)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"


def _check_inner(a, b, what):
    if a.cols != b.rows:
        raise DimensionError(f"{what}: {a.shape} times {b.shape}", {"left": a.shape, "right": b.shape})


def bit_mul(A, B):
    _check_inner(A, B, "bit_mul")
    return BitMatrix(tuple(
        tuple(sum(A.entries[i][t] * B.entries[t][j] for t in range(A.cols)) for j in range(B.cols))
        for i in range(A.rows)))


def sym_mat_mul(A, B):
    _check_inner(A, B, "sym_mat_mul")
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            c = Counter()
            for t in range(A.cols):
                a, b = A.entries[i][t], B.entries[t][j]
                if a and b:
                    for u, m in a.items():
                        for v, n in b.items():
                            c[u + v] += m * n
            row.append(FormalSum.from_counts(c))
        out.append(tuple(row))
    return SymbolicMatrix(tuple(out))


def bit_sym_mul(I, A):
    _check_inner(I, A, "bit_sym_mul")
    out = []
    for i in range(I.rows):
        row = []
        for j in range(A.cols):
            c = Counter()
            for t in range(I.cols):
                k = I.entries[i][t]
                if k:
                    for w, n in A.entries[t][j].items():
                        c[w] += k * n
            row.append(FormalSum.from_counts(c))
        out.append(tuple(row))
    return SymbolicMatrix(tuple(out))


def sym_bit_mul(A, I):
    _check_inner(A, I, "sym_bit_mul")
    out = []
    for i in range(A.rows):
        row = []
        for j in range(I.cols):
            c = Counter()
            for t in range(A.cols):
                k = I.entries[t][j]
                if k:
                    for w, n in A.entries[i][t].items():
                        c[w] += k * n
            row.append(FormalSum.from_counts(c))
        out.append(tuple(row))
    return SymbolicMatrix(tuple(out))


def mat_mul(A, B):
    """Dispatch on operand types."""
    if isinstance(A, BitMatrix) and isinstance(B, BitMatrix):
        return bit_mul(A, B)
    if isinstance(A, BitMatrix):
        return bit_sym_mul(A, B)
    if isinstance(B, BitMatrix):
        return sym_bit_mul(A, B)
    return sym_mat_mul(A, B)


def mat_chain(factors):
    out = factors[0]
    for f in factors[1:]:
        out = mat_mul(out, f)
    return out


def bit_to_sym(I, word):
    """I(w): replace every 1 of I by the single word w."""
    w = as_word(word)
    return SymbolicMatrix(tuple(
        tuple(FormalSum([w] * x) if x else FormalSum() for x in r) for r in I.entries))


class Specification:
    """A finite bijection between words of one fixed length and words of another.

    Applied to longer words blockwise: a term is cut into consecutive blocks of
    the domain length and each block is rewritten.
    """

    __slots__ = ("_map", "name", "src", "dst")

    def __init__(self, mapping, name="", src="", dst=""):
        m = {as_word(k): as_word(v) for k, v in dict(mapping).items()}
        if not m:
            raise SpecificationError(f"specification {name!r} is empty")
        if len({len(k) for k in m}) != 1:
            raise SpecificationError(f"specification {name!r}: domain words of different lengths")
        if len({len(v) for v in m.values()}) != 1:
            raise SpecificationError(f"specification {name!r}: range words of different lengths")
        if len(set(m.values())) != len(m):
            seen = {}
            for k, v in m.items():
                if v in seen:
                    raise SpecificationError(
                        f"specification {name!r} is not injective",
                        {"a": format_word(seen[v]), "b": format_word(k), "image": format_word(v)})
                seen[v] = k
        self._map = MappingProxyType(dict(sorted(m.items(), key=lambda kv: sort_key(kv[0]))))
        self.name = name
        self.src = src
        self.dst = dst

    @classmethod
    def identity(cls, words, name="id"):
        return cls({as_word(w): as_word(w) for w in words}, name=name)

    @classmethod
    def letterwise(cls, pairs, name=""):
        return cls({(a,): (b,) for a, b in dict(pairs).items()}, name=name)

    @property
    def mapping(self):
        return self._map

    @property
    def domain_length(self):
        return len(next(iter(self._map)))

    @property
    def range_length(self):
        return len(next(iter(self._map.values())))

    def domain(self):
        return tuple(self._map)

    def image(self):
        return tuple(self._map.values())

    def items(self):
        return self._map.items()

    def __contains__(self, w):
        return as_word(w) in self._map

    def __call__(self, w):
        w = as_word(w)
        try:
            return self._map[w]
        except KeyError:
            raise SpecificationError(f"{format_word(w)} not in domain of {self.name or 'specification'}",
                                     {"word": format_word(w)}) from None

    def get(self, w, default=None):
        return self._map.get(as_word(w), default)

    def rewrite(self, w):
        d = self.domain_length
        if len(w) % d:
            raise SpecificationError(f"word {format_word(w)} does not cut into blocks of length {d}",
                                     {"word": format_word(w)})
        out = ()
        for s in range(0, len(w), d):
            out += self(w[s:s + d])
        return out

    def __eq__(self, other):
        return isinstance(other, Specification) and dict(self._map) == dict(other._map)

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        body = ", ".join(f"{format_word(k)}->{format_word(v)}" for k, v in self._map.items())
        return f"Specification({self.name!r}: {body})"


def apply_specification(kappa, A):
    out = []
    for i, row in enumerate(A.entries):
        new = []
        for j, e in enumerate(row):
            c = Counter()
            for w, n in e.items():
                try:
                    c[kappa.rewrite(w)] += n
                except SpecificationError as exc:
                    raise SpecificationError(
                        f"entry ({i},{j}): {exc}", {"entry": [i, j], "term": format_word(w)}) from None
            new.append(FormalSum.from_counts(c))
        out.append(tuple(new))
    return SymbolicMatrix(tuple(out))


def first_difference(A, B):
    if A.shape != B.shape:
        return "shape"
    for i in range(A.rows):
        for j in range(A.cols):
            if A.entries[i][j] != B.entries[i][j]:
                return (i, j)
    return None


def check_specified_equivalence(A, B, kappa):
    """Does rewriting A through kappa give B entrywise?"""
    v = Verdict()
    if A.shape != B.shape:
        v.add("shape", left=list(A.shape), right=list(B.shape))
        return v
    try:
        R = apply_specification(kappa, A)
    except SpecificationError as exc:
        v.add("unmapped", **exc.witness)
        return v
    d = first_difference(R, B)
    if d is not None:
        i, j = d
        v.add("entry", entry=[i, j], rewritten=str(R.entries[i][j]), expected=str(B.entries[i][j]))
    return v


def compose_specifications(k2, k1):
    """k2 after k1. The range of k1 is cut blockwise into k2's domain shape."""
    if k1.range_length % k2.domain_length:
        raise SpecificationError(
            f"shape mismatch: range length {k1.range_length} vs domain length {k2.domain_length}")
    return Specification({w: k2.rewrite(v) for w, v in k1.items()},
                         name=f"{k2.name}.{k1.name}", src=k1.src, dst=k2.dst)


def invert_specification(kappa):
    return Specification({v: w for w, v in kappa.items()},
                         name=f"{kappa.name}^-1", src=kappa.dst, dst=kappa.src)
