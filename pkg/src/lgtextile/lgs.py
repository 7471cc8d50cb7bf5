"""λ-graph systems: leveled labeled Bratteli diagrams (V, E, λ, ι).

Vertices at level l are the integers 0..n_l-1. Layer l holds the edges
E_{l,l+1} and the map ι: V_{l+1} -> V_l. A stationary system repeats a single
layer at every level.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidSystemError, LevelError, NotLeftResolvingError
from .sms import SymbolicMatrixSystem, min_levels, validate_sms
from .symbolic import BitMatrix, FormalSum, SymbolicMatrix, as_word, format_label, sort_key
from .verdict import Verdict


@dataclass(frozen=True)
class Edge:
    src: int
    tgt: int
    label: tuple


@dataclass(frozen=True)
class Layer:
    n_src: int
    n_tgt: int
    edges: tuple
    iota: tuple

    @cached_property
    def out_edges(self):
        out = [[] for _ in range(self.n_src)]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self):
        out = [[] for _ in range(self.n_tgt)]
        for i, e in enumerate(self.edges):
            out[e.tgt].append(i)
        return tuple(tuple(x) for x in out)


@dataclass(frozen=True)
class LambdaGraphSystem:
    layers: tuple
    stationary: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise LevelError("a λ-graph system needs at least one layer")
        if self.stationary and len(self.layers) != 1:
            raise ValueError("a stationary system has exactly one layer")
        for l, lay in enumerate(self.layers):
            if len(lay.iota) != lay.n_tgt:
                raise InvalidSystemError(f"layer {l}: ι must be defined on all {lay.n_tgt} upper vertices")
            for e in lay.edges:
                if not (0 <= e.src < lay.n_src and 0 <= e.tgt < lay.n_tgt):
                    raise InvalidSystemError(f"layer {l}: edge {e} out of range")
            if any(not 0 <= x < lay.n_src for x in lay.iota):
                raise InvalidSystemError(f"layer {l}: ι value out of range")

    @property
    def n_levels(self):
        """Number of edge layers, or None for a stationary system."""
        return None if self.stationary else len(self.layers)

    def layer(self, l):
        if l < 0:
            raise LevelError(f"negative level {l}")
        if self.stationary:
            return self.layers[0]
        if l >= len(self.layers):
            raise LevelError(f"edge level {l} unavailable: system has {len(self.layers)} layers",
                             {"level": l, "layers": len(self.layers)})
        return self.layers[l]

    def edges(self, l):
        return self.layer(l).edges

    def iota(self, l):
        """ι_{l,l+1}: V_{l+1} -> V_l."""
        return self.layer(l).iota

    def n_vertices(self, l):
        if self.stationary or l < len(self.layers):
            return self.layer(l).n_src
        if l == len(self.layers):
            return self.layers[-1].n_tgt
        raise LevelError(f"vertex level {l} unavailable")

    def labels(self):
        return {e.label for lay in self.layers for e in lay.edges}

    def label(self, l, e):
        return self.layer(l).edges[e].label

    def materialize(self, L):
        return LambdaGraphSystem(tuple(self.layer(l) for l in range(L)), False, self.name)

    def check_levels(self):
        """Levels worth checking for layer-local properties."""
        return [0] if self.stationary else list(range(len(self.layers)))

    def check_pairs(self):
        """Levels l >= 1 at which both layers l-1 and l exist."""
        return [1] if self.stationary else list(range(1, len(self.layers)))


LGS = LambdaGraphSystem


def derive_lgs(n_levels, fn, name=""):
    if n_levels is None:
        return LambdaGraphSystem((fn(0),), True, name)
    if n_levels < 1:
        raise LevelError("no levels left")
    return LambdaGraphSystem(tuple(fn(l) for l in range(n_levels)), False, name)


def edge_order_key(e):
    return (e.src, e.tgt, sort_key(e.label))


def make_layer(n_src, n_tgt, edges, iota):
    return Layer(n_src, n_tgt, tuple(sorted(edges, key=edge_order_key)), tuple(iota))


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple
    edges: tuple  # (src name, tgt name, label word)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((s, t, as_word(a)) for s, t, a in self.edges))


def lgs_from_labeled_graph(G, name=""):
    index = {v: i for i, v in enumerate(G.vertices)}
    n = len(index)
    has_out, has_in = set(), set()
    edges = []
    for s, t, a in G.edges:
        if s not in index or t not in index:
            raise InvalidSystemError(f"edge {s}->{t} uses an undeclared vertex")
        has_out.add(s)
        has_in.add(t)
        edges.append(Edge(index[s], index[t], a))
    for v in G.vertices:
        if v not in has_out or v not in has_in:
            raise InvalidSystemError(f"vertex {v} is dangling (needs in- and out-edges)", {"vertex": str(v)})
    return LambdaGraphSystem((make_layer(n, n, edges, range(n)),), True, name)


def _layer_from_block(M, I):
    edges = []
    for i in range(M.rows):
        for j in range(M.cols):
            for w in M.entries[i][j]:
                edges.append(Edge(i, j, w))
    iota = [I.column_owner(j) for j in range(I.cols)]
    return make_layer(M.rows, M.cols, edges, iota)


def lgs_from_sms(sys):
    v = validate_sms(sys)
    if not v:
        raise InvalidSystemError(f"invalid symbolic matrix system: {v}",
                                 {"violations": [x.to_dict() for x in v.violations]})
    if sys.stationary:
        return LambdaGraphSystem((_layer_from_block(*sys.blocks[0]),), True, sys.name)
    return LambdaGraphSystem(tuple(_layer_from_block(M, I) for M, I in sys.blocks), False, sys.name)


def _block_from_layer(lay):
    cells = [[[] for _ in range(lay.n_tgt)] for _ in range(lay.n_src)]
    for e in lay.edges:
        cells[e.src][e.tgt].append(e.label)
    M = SymbolicMatrix(tuple(tuple(FormalSum(c) for c in row) for row in cells))
    I = BitMatrix(tuple(tuple(int(lay.iota[j] == i) for j in range(lay.n_tgt)) for i in range(lay.n_src)))
    return M, I


def sms_from_lgs(g):
    return SymbolicMatrixSystem(tuple(_block_from_layer(lay) for lay in g.layers), g.stationary, None, g.name)


def check_essential(g):
    v = Verdict()
    for l in g.check_levels():
        seen = {}
        for i, e in enumerate(g.edges(l)):
            key = (e.src, e.tgt, e.label)
            if key in seen:
                v.add("essential", l, edges=[seen[key], i], src=e.src, tgt=e.tgt, label=format_label(e.label))
            else:
                seen[key] = i
    return v


def check_left_resolving(g):
    v = Verdict()
    for l in g.check_levels():
        seen = {}
        for i, e in enumerate(g.edges(l)):
            key = (e.tgt, e.label)
            if key in seen:
                j = seen[key]
                v.add("left-resolving", l, edges=[j, i], sources=[g.edges(l)[j].src, e.src],
                      tgt=e.tgt, label=format_label(e.label))
            else:
                seen[key] = i
    return v


def is_left_resolving(g):
    return check_left_resolving(g).ok


def require_left_resolving(g, what="system"):
    v = check_left_resolving(g)
    if not v:
        raise NotLeftResolvingError(f"{what} is not left-resolving", v.violations[0].to_dict())


def _local_groups(g, l):
    """Label multisets of E^ι_{l,l+1}(u,v) and E_ι^{l-1,l}(u,v) keyed by (u, v)."""
    lower, upper = g.layer(l - 1), g.layer(l)
    upper_groups = defaultdict(list)
    for i, e in enumerate(upper.edges):
        upper_groups[(lower.iota[e.src], e.tgt)].append(i)
    lower_groups = defaultdict(list)
    for v in range(upper.n_tgt):
        w = upper.iota[v]
        for i in lower.in_edges[w]:
            lower_groups[(lower.edges[i].src, v)].append(i)
    return upper_groups, lower_groups


def check_local_property(g):
    v = Verdict()
    for l in g.check_pairs():
        ug, lg = _local_groups(g, l)
        up, lo = g.layer(l).edges, g.layer(l - 1).edges
        for key in sorted(set(ug) | set(lg)):
            a = Counter(up[i].label for i in ug.get(key, ()))
            b = Counter(lo[i].label for i in lg.get(key, ()))
            if a != b:
                v.add("local-property", l, u=key[0], v=key[1],
                      upper=sorted(format_label(x) for x in a.elements()),
                      lower=sorted(format_label(x) for x in b.elements()))
    return v


def validate_lgs(g):
    """All structural invariants of a λ-graph system."""
    v = Verdict()
    L = g.layers
    for l in range(len(L) - 1):
        if L[l].n_tgt != L[l + 1].n_src:
            v.add("shape", l, detail="layers do not chain")
    if g.stationary and L[0].n_src != L[0].n_tgt:
        v.add("shape", 0, detail="stationary layer must be square")
    if v.violations:
        return v
    for l in g.check_levels():
        lay = g.layer(l)
        missing = sorted(set(range(lay.n_src)) - set(lay.iota))
        if missing:
            v.add("iota-surjective", l, missing=missing)
        for u in range(lay.n_src):
            if not lay.out_edges[u]:
                v.add("successor", l, vertex=u)
        for w in range(lay.n_tgt):
            if not lay.in_edges[w]:
                v.add("predecessor", l + 1, vertex=w)
    for l in g.check_pairs():
        lower, upper = g.layer(l - 1), g.layer(l)
        for w in range(upper.n_tgt):
            a = {upper.edges[i].label for i in upper.in_edges[w]}
            b = {lower.edges[i].label for i in lower.in_edges[upper.iota[w]]}
            if a != b:
                v.add("iota-labels", l, vertex=w, labels=sorted(map(format_label, a)),
                      below=sorted(map(format_label, b)))
    v.extend(check_essential(g))
    v.extend(check_local_property(g))
    return v


class PhiMap:
    """φ_l: E_{l,l+1} -> E_{l-1,l} for l >= 1, computed level by level on demand."""

    def __init__(self, g):
        self.g = g
        self._cache = {}

    def at(self, l):
        if l < 1:
            raise LevelError("φ is defined from level 1 on")
        key = 1 if self.g.stationary else l
        if key not in self._cache:
            self._cache[key] = self._compute(key)
        return self._cache[key]

    def __call__(self, l, e):
        return self.at(l)[e]

    def _compute(self, l):
        g = self.g
        ug, lg = _local_groups(g, l)
        up, lo = g.layer(l).edges, g.layer(l - 1).edges
        phi = [None] * len(up)
        for key, members in ug.items():
            by_label = defaultdict(list)
            for i in lg.get(key, ()):
                by_label[lo[i].label].append(i)
            pending = defaultdict(list)
            for i in members:
                pending[up[i].label].append(i)
            for lab, ups in pending.items():
                downs = by_label.get(lab, [])
                if len(downs) != len(ups):
                    raise InvalidSystemError(
                        f"local property fails at level {l} for {key}",
                        {"level": l, "u": key[0], "v": key[1], "label": format_label(lab)})
                for a, b in zip(ups, downs):
                    phi[a] = b
        hit = set(phi)
        if len(hit) != len(lo) and len(up) > 0:
            missing = sorted(set(range(len(lo))) - hit)
            raise InvalidSystemError(f"φ at level {l} is not surjective", {"level": l, "missing": missing})
        return tuple(phi)


def phi_map(g):
    pm = PhiMap(g)
    for l in g.check_pairs():
        pm.at(l)
    return pm


def enumerate_paths(g, l0, m):
    """All edge paths of length m starting at vertex level l0, as index tuples, sorted."""
    if m == 0:
        return [()]
    if not g.stationary and l0 + m > len(g.layers):
        raise LevelError(f"window [{l0}, {l0 + m}] unavailable", {"l0": l0, "m": m})
    paths = [(i,) for i in range(len(g.edges(l0)))]
    for t in range(1, m):
        prev, lay = g.layer(l0 + t - 1), g.layer(l0 + t)
        paths = [p + (j,) for p in paths for j in lay.out_edges[prev.edges[p[-1]].tgt]]
    return sorted(paths)


def enumerate_words(g, l0, m):
    if m == 0:
        return {()}
    if not g.stationary and l0 + m > len(g.layers):
        raise LevelError(f"window [{l0}, {l0 + m}] unavailable", {"l0": l0, "m": m})
    frontier = defaultdict(set)
    for e in g.edges(l0):
        frontier[e.tgt].add((e.label,))
    for t in range(1, m):
        lay = g.layer(l0 + t)
        nxt = defaultdict(set)
        for v, words in frontier.items():
            for j in lay.out_edges[v]:
                e = lay.edges[j]
                nxt[e.tgt].update(w + (e.label,) for w in words)
        frontier = nxt
    out = set()
    for words in frontier.values():
        out |= words
    return out


def window_start(g, m, base="deepest"):
    """Start level of the word window. Deepest complete window for explicit systems."""
    if base in (None, "deepest"):
        if g.stationary:
            return 0
        l0 = len(g.layers) - m
        if l0 < 0:
            raise LevelError(f"no complete window of length {m}: {len(g.layers)} layers",
                             {"m": m, "layers": len(g.layers)})
        return l0
    l0 = int(base)
    if not g.stationary and (l0 < 0 or l0 + m > len(g.layers)):
        raise LevelError(f"window [{l0}, {l0 + m}] unavailable", {"l0": l0, "m": m})
    return l0


class PathIndex:
    """Indexes of paths of a fixed length starting at each level (cached)."""

    def __init__(self, g, length):
        self.g = g
        self.length = length
        self._cache = {}

    def paths(self, l):
        key = 0 if self.g.stationary else l
        if key not in self._cache:
            ps = enumerate_paths(self.g, key, self.length)
            self._cache[key] = (ps, {p: i for i, p in enumerate(ps)})
        return self._cache[key][0]

    def index(self, l):
        self.paths(l)
        return self._cache[0 if self.g.stationary else l][1]


@dataclass
class HigherBlock:
    system: LambdaGraphSystem
    vertex_paths: PathIndex
    edge_paths: PathIndex


def higher_block_with_paths(g, N):
    """The N-higher block together with the path bookkeeping of its vertices and edges."""
    if N < 2:
        raise ValueError("use N >= 2 here")
    require_left_resolving(g)
    phi = PhiMap(g)
    vp, ep = PathIndex(g, N - 1), PathIndex(g, N)
    n_levels = None if g.stationary else len(g.layers) - N + 1
    if n_levels is not None and n_levels < 1:
        raise LevelError(f"need at least {N} layers for the {N}-higher block", {"have": len(g.layers)})

    def fn(l):
        lower_idx, upper_idx = vp.index(l), vp.index(l + 1)
        edges = []
        for path in ep.paths(l):
            label = ()
            for t, e in enumerate(path):
                label += g.label(l + t, e)
            edges.append(Edge(lower_idx[path[:-1]], upper_idx[path[1:]], label))
        # ι^[N] maps each component through φ; for stationary g use level l+1 >= 1 regardless
        iota = []
        for path in vp.paths(l + 1):
            image = tuple(phi(l + 1 + t, e) for t, e in enumerate(path))
            iota.append(lower_idx[image])
        return Layer(len(vp.paths(l)), len(vp.paths(l + 1)), tuple(edges), tuple(iota))

    return HigherBlock(derive_lgs(n_levels, fn, f"{g.name}^[{N}]"), vp, ep)


def higher_block_lgs(g, N):
    if N == 1:
        return g
    return higher_block_with_paths(g, N).system


def forms_squares_lgs(A, B):
    v = Verdict()
    n = min_levels(A.n_levels, B.n_levels)
    for l in range(1 if n is None else n):
        a, b = A.layer(l), B.layer(l)
        if (a.n_src, a.n_tgt) != (b.n_src, b.n_tgt):
            v.add("squares", l, detail="vertex counts differ", a=[a.n_src, a.n_tgt], b=[b.n_src, b.n_tgt])
        elif a.iota != b.iota:
            v.add("squares", l, detail="ι maps differ")
    return v


def sources(g, l):
    return tuple(e.src for e in g.edges(l))


def targets(g, l):
    return tuple(e.tgt for e in g.edges(l))
