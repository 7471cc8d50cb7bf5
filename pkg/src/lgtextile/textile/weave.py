"""Finite weave patches on the lattice {(i, j) : i + j >= 0}.

Cell (i, j) holds an edge of E^K_{i+j,i+j+1}. Row index i grows downward,
column index j grows to the right. Vertically adjacent cells share an M-edge
(bottom of the upper cell = top of the lower one); horizontally adjacent
cells share an N-edge.
"""

from dataclasses import dataclass
from types import MappingProxyType

from ..errors import ExtensionError, LevelError
from ..lgs import PhiMap
from ..verdict import Verdict
from .system import dual_textile


@dataclass(frozen=True)
class WeavePatch:
    cells: MappingProxyType

    def __init__(self, cells=()):
        object.__setattr__(self, "cells", MappingProxyType(dict(cells)))

    def __eq__(self, other):
        return isinstance(other, WeavePatch) and dict(self.cells) == dict(other.cells)

    def __hash__(self):
        return hash(frozenset(self.cells.items()))

    @property
    def region(self):
        return frozenset(self.cells)

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, ij):
        return self.cells[ij]

    def __contains__(self, ij):
        return ij in self.cells

    def restrict(self, region):
        return WeavePatch({c: e for c, e in self.cells.items() if c in region})


def triangle(n, k):
    """△_(n,k) = {(i, j) : i + j >= 0, i <= n, j <= k}."""
    return frozenset((i, j) for i in range(-k, n + 1) for j in range(-n, k + 1) if i + j >= 0)


def rectangle(rows, cols, top=0, left=0):
    return frozenset((top + i, left + j) for i in range(rows) for j in range(cols))


def _convex(coords):
    coords = sorted(coords)
    return coords[-1] - coords[0] + 1 == len(coords)


def _fits(T, cells, i, j, e):
    l = i + j
    k = T.K.edges(l)[e]
    if (i, j - 1) in cells and T.K.edges(l - 1)[cells[(i, j - 1)]].tgt != k.src:
        return False
    if (i, j + 1) in cells and T.K.edges(l + 1)[cells[(i, j + 1)]].src != k.tgt:
        return False
    if (i - 1, j) in cells and T.q(l - 1, cells[(i - 1, j)]) != T.p(l, e):
        return False
    if (i + 1, j) in cells and T.p(l + 1, cells[(i + 1, j)]) != T.q(l, e):
        return False
    return True


def validate_patch(T, patch):
    v = Verdict()
    cells = patch.cells
    rows, cols = {}, {}
    for (i, j) in cells:
        if i + j < 0:
            v.add("lattice", None, cell=[i, j])
        rows.setdefault(i, []).append(j)
        cols.setdefault(j, []).append(i)
    for i, js in rows.items():
        if not _convex(js):
            v.add("row-convex", None, row=i)
    for j, is_ in cols.items():
        if not _convex(is_):
            v.add("column-convex", None, col=j)
    if v.violations:
        return v
    for (i, j), e in sorted(cells.items()):
        try:
            n_edges = len(T.K.edges(i + j))
        except LevelError:
            v.add("level", i + j, cell=[i, j])
            continue
        if not 0 <= e < n_edges:
            v.add("edge-index", i + j, cell=[i, j], edge=e)
            continue
        if (i, j + 1) in cells and T.K.edges(i + j + 1)[cells[(i, j + 1)]].src != T.K.edges(i + j)[e].tgt:
            v.add("horizontal", i + j, cells=[[i, j], [i, j + 1]])
        if (i + 1, j) in cells and T.p(i + j + 1, cells[(i + 1, j)]) != T.q(i + j, e):
            v.add("vertical", i + j, cells=[[i, j], [i + 1, j]])
    return v


def fill(T, cells, order):
    """Backtracking assignment of the cells in `order`, lexicographic in edge index."""
    cells = dict(cells)
    order = list(order)

    def rec(t):
        if t == len(order):
            return True
        i, j = order[t]
        for e in range(len(T.K.edges(i + j))):
            if _fits(T, cells, i, j, e):
                cells[(i, j)] = e
                if rec(t + 1):
                    return True
                del cells[(i, j)]
        return False

    return WeavePatch(cells) if rec(0) else None


def extend_patch(T, patch):
    """Extend a patch on △_(n,k) to △_(n+1,k+1): first the new column, then the new row."""
    if len(patch) == 0:
        out = fill(T, {}, [(0, 0)])
        if out is None:
            raise ExtensionError("no edge at level 0")
        return out
    n = max(i for i, _ in patch.region)
    k = max(j for _, j in patch.region)
    if patch.region != triangle(n, k):
        raise ValueError(f"patch region is not the triangle △_({n},{k})")
    column = [(i, k + 1) for i in range(-k - 1, n + 1)]
    row = [(n + 1, j) for j in range(-n - 1, k + 2)]
    out = fill(T, patch.cells, column + row)
    if out is None:
        raise ExtensionError(f"patch on △_({n},{k}) does not extend", {"n": n, "k": k})
    return out


def enumerate_patches(T, region):
    """All valid patches on a region (row-major backtracking)."""
    order = sorted(region)
    out = []

    def rec(t, cells):
        if t == len(order):
            out.append(WeavePatch(cells))
            return
        i, j = order[t]
        for e in range(len(T.K.edges(i + j))):
            if _fits(T, cells, i, j, e):
                cells[(i, j)] = e
                rec(t + 1, cells)
                del cells[(i, j)]

    rec(0, {})
    return out


class PatchShifter:
    """S_R and S_D on patches, via φ^K and φ^{K*}."""

    def __init__(self, T):
        self.T = T
        self.phiK = PhiMap(T.K)
        self.phiKstar = PhiMap(dual_textile(T).K)

    def shift(self, patch, direction):
        if direction == "R":
            di, dj, phi = 0, 1, self.phiK
        elif direction == "D":
            di, dj, phi = 1, 0, self.phiKstar
        else:
            raise ValueError("direction is 'R' or 'D'")
        out = {}
        for (i, j), e in patch.cells.items():
            ni, nj = i - di, j - dj
            if ni + nj >= 0:
                out[(ni, nj)] = phi(i + j, e)
        return WeavePatch(out)


def shift_patch(T, patch, direction, shifter=None):
    return (shifter or PatchShifter(T)).shift(patch, direction)


def _labels(T, patch):
    def a(i, j):
        return T.M.label(i + j, T.p(i + j, patch[(i, j)]))

    def b(i, j):
        return T.N.label(i + j, T.K.edges(i + j)[patch[(i, j)]].src)

    return a, b


def bias_cells(k, n, t, variant="check", origin=(0, 0)):
    """(b-cells, a-cells) read for composite symbol t."""
    i0, j0 = origin[0] + t * k, origin[1] + t * n
    if variant == "check":
        return [(i0 + s, j0) for s in range(k)], [(i0 + k, j0 + r) for r in range(n)]
    if variant == "hat":
        return [(i0 + s, j0 + n) for s in range(k)], [(i0, j0 + r) for r in range(n)]
    raise ValueError("variant is 'check' or 'hat'")


def extract_bias_word(T, patch, k, n, variant="check", count=None, origin=(0, 0)):
    """Composite word of slope (k, n) read from a patch.

    check: k left labels down a column, then n top labels along a row.
    hat: n top labels along a row, then k left labels down the next column.
    """
    if k < 0 or n < 0 or k + n < 1:
        raise ValueError("need k, n >= 0 and k + n >= 1")
    a, b = _labels(T, patch)
    out = []
    t = 0
    while count is None or t < count:
        bs, as_ = bias_cells(k, n, t, variant, origin)
        if any(c not in patch for c in bs + as_):
            if count is not None:
                raise ValueError(f"patch too small for {count} symbols (stopped at {t})")
            break
        bw = sum((b(*c) for c in bs), ())
        aw = sum((a(*c) for c in as_), ())
        out.append(bw + aw if variant == "check" else aw + bw)
        t += 1
    return tuple(out)


def hat_to_check(word, n, m_len):
    """The 2-block recoding taking the hat word of a patch to the check word of the patch shifted n columns.

    m_len is the length of one M-label, so the first n * m_len letters of a hat
    symbol are its top labels.
    """
    cut = n * m_len
    return tuple(word[t][cut:] + word[t + 1][:cut] for t in range(len(word) - 1))
