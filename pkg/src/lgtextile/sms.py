"""Symbolic matrix systems (M_l, I_l) and the constructions on them."""

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .errors import DimensionError, LevelError, LgtError
from .symbolic import (
    Alphabet, BitMatrix, SymbolicMatrix, bit_mul, bit_sym_mul, first_difference, format_label,
    format_label_word, mat_chain, sort_key, sym_bit_mul)
from .verdict import Verdict


@dataclass(frozen=True)
class SymbolicMatrixSystem:
    """Blocks (M_l, I_l). A stationary system stores one block reused at every level.

    M_l has shape m(l) x m(l+1) and I_l the same shape.
    """

    blocks: tuple
    stationary: bool = False
    alphabet: Alphabet | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        blocks = tuple((M, I) for M, I in self.blocks)
        if not blocks:
            raise LevelError("a system needs at least one level")
        if self.stationary and len(blocks) != 1:
            raise ValueError("a stationary system has exactly one block")
        for M, I in blocks:
            if not isinstance(M, SymbolicMatrix) or not isinstance(I, BitMatrix):
                raise TypeError("blocks are (SymbolicMatrix, BitMatrix) pairs")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_stationary(cls, M, I=None, alphabet=None, name=""):
        if I is None:
            I = BitMatrix.identity(M.rows)
        return cls(((M, I),), True, alphabet, name)

    @classmethod
    def from_blocks(cls, blocks, alphabet=None, name=""):
        return cls(tuple(blocks), False, alphabet, name)

    @property
    def n_levels(self):
        """Number of (M, I) blocks, or None for a stationary system."""
        return None if self.stationary else len(self.blocks)

    def block(self, l):
        if l < 0:
            raise LevelError(f"negative level {l}")
        if self.stationary:
            return self.blocks[0]
        if l >= len(self.blocks):
            raise LevelError(f"level {l} unavailable: system has {len(self.blocks)} levels",
                             {"level": l, "levels": len(self.blocks)})
        return self.blocks[l]

    def M(self, l):
        return self.block(l)[0]

    def I(self, l):
        return self.block(l)[1]

    def size(self, l):
        if self.stationary or l < len(self.blocks):
            return self.block(l)[0].rows
        if l == len(self.blocks):
            return self.blocks[-1][0].cols
        raise LevelError(f"level {l} unavailable")

    def labels(self):
        out = set()
        for M, _ in self.blocks:
            out |= M.labels()
        return out

    def materialize(self, L):
        """Explicit copy of the first L levels."""
        return SymbolicMatrixSystem(tuple(self.block(l) for l in range(L)), False, self.alphabet, self.name)

    def __str__(self):
        if self.stationary:
            M, I = self.blocks[0]
            return f"stationary M={M} I={I}"
        return "; ".join(f"level {l}: M={M} I={I}" for l, (M, I) in enumerate(self.blocks))


SMS = SymbolicMatrixSystem


def output_levels(n_levels, span):
    """Output levels when every output level consumes `span` input levels."""
    if n_levels is None:
        return None
    out = n_levels // span
    if out < 1:
        raise LevelError(f"need at least {span} levels, have {n_levels}", {"need": span, "have": n_levels})
    return out


def min_levels(*counts):
    finite = [c for c in counts if c is not None]
    return min(finite) if finite else None


def derive_system(n_levels, fn, alphabet=None, name=""):
    """Build a system whose level-l block is fn(l). Stationary when n_levels is None."""
    if n_levels is None:
        return SymbolicMatrixSystem((fn(0),), True, alphabet, name)
    return SymbolicMatrixSystem(tuple(fn(l) for l in range(n_levels)), False, alphabet, name)


def _pairs_to_check(sys):
    if sys.stationary:
        return [0]
    return list(range(len(sys.blocks) - 1))


def validate_sms(sys):
    v = Verdict()
    levels = [0] if sys.stationary else list(range(len(sys.blocks)))
    for l in levels:
        M, I = sys.block(l)
        if M.shape != I.shape:
            v.add("shape", l, M=list(M.shape), I=list(I.shape))
            continue
        if sys.stationary and M.rows != M.cols:
            v.add("not-square", l, shape=list(M.shape))
        if not I.is_binary():
            v.add("I-entry", l, detail="entries must be 0 or 1")
        for i in range(I.rows):
            if not any(I.entries[i]):
                v.add("I-row", l, row=i, ones=0)
        for j in range(I.cols):
            ones = sum(I.entries[i][j] for i in range(I.rows))
            if ones != 1:
                v.add("I-column", l, col=j, ones=ones)
    if not sys.stationary:
        for l in range(len(sys.blocks) - 1):
            if sys.M(l).cols != sys.M(l + 1).rows:
                v.add("shape", l, detail="adjacent blocks do not chain",
                      cols=sys.M(l).cols, next_rows=sys.M(l + 1).rows)
    if v.first("shape") or v.first("not-square"):
        return v
    for l in _pairs_to_check(sys):
        I0, M1 = sys.I(l), sys.M(l + 1)
        M0, I1 = sys.M(l), sys.I(l + 1)
        left, right = bit_sym_mul(I0, M1), sym_bit_mul(M0, I1)
        d = first_difference(left, right)
        if d is not None:
            i, j = d
            v.add("commutation", l, entry=[i, j], IM=str(left.entries[i][j]), MI=str(right.entries[i][j]))
    return v


def require_valid(sys, what="system"):
    v = validate_sms(sys)
    if not v:
        from .errors import InvalidSystemError
        raise InvalidSystemError(f"{what} is not a valid symbolic matrix system: {v}",
                                 {"violations": [x.to_dict() for x in v.violations]})
    return sys


def higher_block_sms(sys, N):
    """M^[N]_l = M_{Nl} I_{Nl+1} ... I_{Nl+N-1}, I^[N]_l = I_{Nl} ... I_{Nl+N-1}."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N == 1:
        return sys

    def fn(l):
        M = mat_chain([sys.M(N * l)] + [sys.I(N * l + t) for t in range(1, N)])
        I = mat_chain([sys.I(N * l + t) for t in range(N)])
        return M, I

    return derive_system(output_levels(sys.n_levels, N), fn, sys.alphabet, f"{sys.name}^[{N}]")


def forms_squares(A, B, levels=None):
    """Same sizes at every level and the same I matrices."""
    v = Verdict()
    n = min_levels(A.n_levels, B.n_levels)
    count = 1 if n is None else n
    if levels is not None:
        count = levels
    for l in range(count):
        if A.I(l) != B.I(l):
            v.add("squares", l, detail="I matrices differ", A=str(A.I(l)), B=str(B.I(l)))
            break
    return v


def product_system(Nsys, Msys, k, n):
    """(N^k M^n)_l: k consecutive N blocks then n consecutive M blocks."""
    if k < 0 or n < 0 or k + n < 1:
        raise ValueError("need k, n >= 0 and k + n >= 1")
    s = k + n
    levels = output_levels(min_levels(Nsys.n_levels, Msys.n_levels), s)
    sq = forms_squares(Nsys, Msys, None if levels is None else levels * s)
    if not sq:
        raise DimensionError("systems do not form squares", sq.violations[0].to_dict())
    if (k, n) == (0, 1) and levels == Msys.n_levels:
        return Msys
    if (k, n) == (1, 0) and levels == Nsys.n_levels:
        return Nsys

    def fn(l):
        base = l * s
        factors = [Nsys.M(base + t) for t in range(k)] + [Msys.M(base + k + t) for t in range(n)]
        I = mat_chain([Msys.I(base + t) for t in range(s)])
        return mat_chain(factors), I

    return derive_system(levels, fn, None, f"{Nsys.name}^{k}{Msys.name}^{n}")


@dataclass(frozen=True)
class SpanBlocks:
    """Blocks P_{a,a+span} for every start level a.

    `fn(a)` returns the matrix; `n_levels` bounds a + span (None for stationary data).
    """

    span: int
    fn: Callable
    n_levels: int | None = None
    name: str = ""

    def __call__(self, a):
        if a < 0 or (self.n_levels is not None and a + self.span > self.n_levels):
            raise LevelError(f"block starting at level {a} unavailable")
        return self.fn(a)

    @classmethod
    def from_sms(cls, sys):
        return cls(1, sys.M, sys.n_levels, sys.name)


def psse_power_product(P, Msys, k, n, N=None):
    """(P^k M^n)_l: k blocks P spanning N levels each, then n blocks of M.

    Each output level consumes kN + n input levels; I is the product of the
    I matrices over those levels.
    """
    if isinstance(P, SymbolicMatrixSystem):
        P = SpanBlocks.from_sms(P)
    if N is None:
        N = P.span
    if P.span != N:
        raise LevelError(f"P blocks span {P.span} levels, expected {N}")
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    s = k * N + n
    avail = Msys.n_levels
    if P.n_levels is not None:
        avail = P.n_levels if avail is None else min(avail, P.n_levels)
    levels = output_levels(avail, s)

    def fn(l):
        base = l * s
        factors = [P(base + j * N) for j in range(k)] + [Msys.M(base + k * N + t) for t in range(n)]
        I = mat_chain([Msys.I(base + t) for t in range(s)])
        return mat_chain(factors), I

    if k == 0 and n == 1:
        return Msys if levels is None else derive_system(levels, Msys.block, Msys.alphabet, Msys.name)
    return derive_system(levels, fn, None, f"{P.name}^{k}{Msys.name}^{n}")


def language(sys, m, base="deepest"):
    from .lgs import enumerate_words, lgs_from_sms, window_start
    g = lgs_from_sms(sys) if isinstance(sys, SymbolicMatrixSystem) else sys
    return enumerate_words(g, window_start(g, m, base), m)


def compare_languages(A, B, m, recode=None, base_a="deepest", base_b="deepest", limit=10):
    """Compare the length-m languages, optionally pushing A's words through `recode`."""
    LA = language(A, m, base_a)
    LB = language(B, m, base_b)
    if recode is not None:
        LA = {recode(w) for w in LA}
    only_a = sorted(LA - LB, key=sort_key)
    only_b = sorted(LB - LA, key=sort_key)
    v = Verdict(info={"length": m, "size_a": len(LA), "size_b": len(LB)})
    for w in only_a[:limit]:
        v.add("only-in-a", None, word=format_label_word(w))
    for w in only_b[:limit]:
        v.add("only-in-b", None, word=format_label_word(w))
    return v


def _permutation_matrix(sigma):
    n = len(sigma)
    return BitMatrix(tuple(tuple(int(sigma[i] == j) for j in range(n)) for i in range(n)))


def _permuted_entry_ok(MA, MB, IA, IB, s0, s1, kappa):
    # S_l M_l ~ M'_l S_{l+1} reads kappa(M(s0(i), s1(j))) = M'(i, j)
    for i in range(MB.rows):
        for j in range(MB.cols):
            if IA.entries[s0[i]][s1[j]] != IB.entries[i][j]:
                return False
            e = MA.entries[s0[i]][s1[j]]
            if e.map_words(lambda w: kappa[w]) != MB.entries[i][j]:
                return False
    return True


def sms_isomorphic(A, B, max_size=6, max_labels=7):
    """Brute-force search for (kappa, S_l) with S_l M_l ~kappa M'_l S_{l+1} and S_l I_l = I'_l S_{l+1}.

    Two stationary systems are searched with one constant permutation.
    """
    if A.stationary != B.stationary:
        L = A.n_levels or B.n_levels
        A, B = A.materialize(L), B.materialize(L)
    v = Verdict()
    levels = 1 if A.stationary else A.n_levels
    if not A.stationary and A.n_levels != B.n_levels:
        v.add("shape", None, detail="different number of levels")
        return v
    sizes_a = [A.size(l) for l in range(levels + 1)]
    sizes_b = [B.size(l) for l in range(levels + 1)]
    if sizes_a != sizes_b:
        v.add("shape", None, sizes_a=sizes_a, sizes_b=sizes_b)
        return v
    if max(sizes_a) > max_size:
        raise LgtError(f"size limit exceeded: {max(sizes_a)} > {max_size}")
    la = sorted(A.labels(), key=sort_key)
    lb = sorted(B.labels(), key=sort_key)
    if len(la) != len(lb):
        v.add("alphabet", None, size_a=len(la), size_b=len(lb))
        return v
    if len(la) > max_labels:
        raise LgtError(f"alphabet too large for brute force: {len(la)}")

    def search(kappa, l, perms):
        if l == levels:
            return perms
        MA, IA = A.block(l)
        MB, IB = B.block(l)
        s0 = perms[-1]
        candidates = [s0] if A.stationary else itertools.permutations(range(sizes_a[l + 1]))
        for s1 in candidates:
            if _permuted_entry_ok(MA, MB, IA, IB, s0, s1, kappa):
                found = search(kappa, l + 1, perms + [s1])
                if found is not None:
                    return found
        return None

    for image in itertools.permutations(lb):
        kappa = dict(zip(la, image))
        for s0 in itertools.permutations(range(sizes_a[0])):
            found = search(kappa, 0, [s0])
            if found is not None:
                v.info = {
                    "kappa": {format_label(a): format_label(b) for a, b in kappa.items()},
                    "S": [str(_permutation_matrix(s)) for s in (found[:1] if A.stationary else found)],
                }
                return v
    v.add("none", None, detail="no specification and permutations found")
    return v


__all__ = [
    "SymbolicMatrixSystem", "SMS", "SpanBlocks", "validate_sms", "higher_block_sms", "product_system",
    "psse_power_product", "language", "compare_languages", "sms_isomorphic", "forms_squares",
    "derive_system", "output_levels", "bit_mul",
]
