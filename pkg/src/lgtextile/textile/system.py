"""Textile systems (p, q: L^K -> L^M) over a pair M, N forming squares.

The vertices of K at level l are identified with the edges of N at level l,
so a K-edge e from f' to f is a square with left side f', right side f,
top p(e) in E^M_{l,l+1} and bottom q(e) in E^M_{l+1,l+2}.
"""

from collections import defaultdict
from dataclasses import dataclass, field

from ..errors import InvalidSystemError, LevelError, SpecificationError
from ..lgs import (
    Edge, LambdaGraphSystem, Layer, PhiMap, derive_lgs, forms_squares_lgs, higher_block_with_paths,
    lgs_from_sms, require_left_resolving, sms_from_lgs, validate_lgs)
from ..sms import SymbolicMatrixSystem, min_levels
from ..symbolic import check_specified_equivalence, format_label, sort_key, sym_mat_mul
from ..verdict import Verdict


@dataclass(frozen=True)
class TextileLayer:
    p: tuple  # K-edge index -> M-edge index at level l
    q: tuple  # K-edge index -> M-edge index at level l+1


@dataclass(frozen=True)
class TextileSystem:
    M: LambdaGraphSystem
    N: LambdaGraphSystem
    K: LambdaGraphSystem
    layers: tuple
    stationary: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def n_levels(self):
        return None if self.stationary else len(self.layers)

    def layer(self, l):
        if l < 0:
            raise LevelError("negative level")
        if self.stationary:
            return self.layers[0]
        if l >= len(self.layers):
            raise LevelError(f"textile level {l} unavailable", {"level": l, "levels": len(self.layers)})
        return self.layers[l]

    def p(self, l, e):
        return self.layer(l).p[e]

    def q(self, l, e):
        return self.layer(l).q[e]

    def square(self, l, e):
        """(f', f, top, bottom) edge indices of the K-edge e at level l."""
        k = self.K.edges(l)[e]
        lay = self.layer(l)
        return k.src, k.tgt, lay.p[e], lay.q[e]

    def quad(self, l, e):
        """(λN(f'), λN(f), λM(top), λM(bottom))."""
        f1, f2, a, b = self.square(l, e)
        return (self.N.label(l, f1), self.N.label(l + 1, f2), self.M.label(l, a), self.M.label(l + 1, b))

    def check_levels(self):
        return [0] if self.stationary else list(range(len(self.layers)))

    def levels_for(self, depth):
        """Start levels l0 with K-paths of the given length available."""
        if self.stationary:
            return [0]
        return list(range(0, len(self.layers) - depth + 1))


def _derive_textile(n_levels, fn, M, N, name=""):
    """fn(l) -> (K layer, TextileLayer)."""
    if n_levels is None:
        klay, tlay = fn(0)
        return TextileSystem(M, N, LambdaGraphSystem((klay,), True), (tlay,), True, name)
    if n_levels < 1:
        raise LevelError("not enough levels for a textile")
    pairs = [fn(l) for l in range(n_levels)]
    K = LambdaGraphSystem(tuple(k for k, _ in pairs), False)
    return TextileSystem(M, N, K, tuple(t for _, t in pairs), False, name)


def _as_pair(sys):
    if isinstance(sys, SymbolicMatrixSystem):
        return sys, lgs_from_sms(sys)
    return sms_from_lgs(sys), sys


def _label_length(g):
    lay = g.layer(0)
    return len(lay.edges[0].label) if lay.edges else 0


def check_commuting_squares(Ms, Ns, kappa):
    """M_l N_{l+1} ~kappa N_l M_{l+1} at every available level pair."""
    v = Verdict()
    n = min_levels(Ms.n_levels, Ns.n_levels)
    levels = [0] if n is None else list(range(n - 1))
    for l in levels:
        left = sym_mat_mul(Ms.M(l), Ns.M(l + 1))
        right = sym_mat_mul(Ns.M(l), Ms.M(l + 1))
        r = check_specified_equivalence(left, right, kappa)
        for x in r.violations:
            v.add(x.kind, l, **x.detail)
        if not r:
            break
    return v


def build_lr_textile(Msys, Nsys, kappa, name=""):
    """The LR textile whose squares are (f', f, e, e') with κ(λ(e)λ(f)) = λ(f')λ(e')."""
    Ms, Mg = _as_pair(Msys)
    Ns, Ng = _as_pair(Nsys)
    sq = forms_squares_lgs(Mg, Ng)
    if not sq:
        raise InvalidSystemError("M and N do not form squares", sq.violations[0].to_dict())
    require_left_resolving(Mg, "M")
    require_left_resolving(Ng, "N")
    comm = check_commuting_squares(Ms, Ns, kappa)
    if not comm:
        raise SpecificationError("specified equivalence M N ~ N M fails", comm.violations[0].to_dict())
    wN = _label_length(Ng)
    phiN = PhiMap(Ng)
    n = min_levels(Mg.n_levels, Ng.n_levels)
    n_levels = None if n is None else n - 1

    def fn(l):
        EM0, EM1 = Mg.edges(l), Mg.edges(l + 1)
        EN0, EN1 = Ng.edges(l), Ng.edges(l + 1)
        m_in = defaultdict(list)
        for i, e in enumerate(EM1):
            m_in[(e.tgt, e.label)].append(i)
        n_out = defaultdict(list)
        for i, f in enumerate(EN0):
            n_out[(f.src, f.label)].append(i)
        squares = []
        for ei, e in enumerate(EM0):
            for fi in Ng.layer(l + 1).out_edges[e.tgt]:
                f = EN1[fi]
                w = kappa.rewrite(e.label + f.label)
                left, bottom = w[:wN], w[wN:]
                for bi in m_in.get((f.tgt, bottom), ()):
                    for li in n_out.get((e.src, left), ()):
                        if EN0[li].tgt == EM1[bi].src:
                            squares.append((li, fi, ei, bi))
        squares.sort()
        edges = tuple(Edge(f1, f2, ((EN0[f1].label, EN1[f2].label, EM0[a].label, EM1[b].label),))
                      for f1, f2, a, b in squares)
        klay = Layer(len(EN0), len(EN1), edges, phiN.at(l + 1))
        return klay, TextileLayer(tuple(s[2] for s in squares), tuple(s[3] for s in squares))

    T = _derive_textile(n_levels, fn, Mg, Ng, name)
    v = validate_textile(T)
    if not v:
        raise InvalidSystemError(f"constructed textile fails validation: {v}",
                                 {"violations": [x.to_dict() for x in v.violations]})
    return T


def validate_textile(T):
    v = Verdict()
    M, N, K = T.M, T.N, T.K
    for name, g in (("M", M), ("N", N), ("K", K)):
        v.extend(validate_lgs(g), prefix=f"lgs-{name}")
    sq = forms_squares_lgs(M, N)
    for x in sq.violations:
        v.add("condition-1", x.level, **x.detail)
    phiN = PhiMap(N)
    p_sigma, q_sigma, quad_to_label, label_to_quad = {}, {}, {}, {}
    for l in T.check_levels():
        klay = K.layer(l)
        tlay = T.layer(l)
        EN0, EN1 = N.edges(l), N.edges(l + 1)
        EM0, EM1 = M.edges(l), M.edges(l + 1)
        if (klay.n_src, klay.n_tgt) != (len(EN0), len(EN1)):
            v.add("condition-2", l, K_vertices=[klay.n_src, klay.n_tgt], N_edges=[len(EN0), len(EN1)])
            continue
        if len(tlay.p) != len(klay.edges) or len(tlay.q) != len(klay.edges):
            v.add("condition-4", l, detail="p or q not defined on every K-edge")
            continue
        try:
            phi = phiN.at(l + 1)
        except (InvalidSystemError, LevelError) as exc:
            v.add("condition-3", l, detail=str(exc))
            phi = None
        if phi is not None and tuple(klay.iota) != tuple(phi):
            diff = next(i for i in range(len(phi)) if klay.iota[i] != phi[i])
            v.add("condition-3", l, vertex=diff, iota=klay.iota[diff], phi=phi[diff])
        seen = {}
        for i, k in enumerate(klay.edges):
            a, b = tlay.p[i], tlay.q[i]
            f1, f2 = EN0[k.src], EN1[k.tgt]
            ea, eb = EM0[a], EM1[b]
            if f1.src != ea.src or f2.src != ea.tgt:
                v.add("condition-4", l, edge=i, map="p", detail="top side does not match s^N")
            if f1.tgt != eb.src or f2.tgt != eb.tgt:
                v.add("condition-4", l, edge=i, map="q", detail="bottom side does not match t^N")
            for table, img, which in ((p_sigma, ea.label, "p"), (q_sigma, eb.label, "q")):
                if table.setdefault(k.label, img) != img:
                    v.add("condition-4", l, edge=i, map=which, detail="symbol map not well defined",
                          label=format_label(k.label))
            key = (k.src, k.tgt, a, b)
            if key in seen:
                v.add("condition-5", l, edges=[seen[key], i])
            seen[key] = i
            quad = (f1.label, f2.label, ea.label, eb.label)
            if quad_to_label.setdefault(quad, k.label) != k.label or label_to_quad.setdefault(k.label, quad) != quad:
                v.add("condition-6", l, edge=i, label=format_label(k.label),
                      quad=[format_label(x) for x in quad])
        if phi is not None:
            # ι-compatibility of p^V = s^N and q^V = t^N
            iota0, iota1 = M.iota(l), M.iota(l + 1)
            for w, f in enumerate(EN1):
                g0 = EN0[klay.iota[w]]
                if g0.src != iota0[f.src]:
                    v.add("condition-4", l, vertex=w, map="p", detail="p^V not ι-compatible")
                if g0.tgt != iota1[f.tgt]:
                    v.add("condition-4", l, vertex=w, map="q", detail="q^V not ι-compatible")
    return v


def dual_textile(T):
    """Squares read sideways: V^{K*} = E^M, s* = p^E, t* = q^E, ι* = φ^M; M and N exchange roles."""
    v = validate_textile(T)
    if not v:
        raise InvalidSystemError(f"textile is invalid: {v}")
    phiM = PhiMap(T.M)
    n = min_levels(T.n_levels, None if T.M.n_levels is None else T.M.n_levels - 1)

    def fn(l):
        klay, tlay = T.K.layer(l), T.layer(l)
        EM0, EM1 = T.M.edges(l), T.M.edges(l + 1)
        edges = []
        for i, k in enumerate(klay.edges):
            a, b, f1, f2 = T.quad(l, i)
            edges.append(Edge(tlay.p[i], tlay.q[i], ((f1, f2, a, b),)))
        lay = Layer(len(EM0), len(EM1), tuple(edges), phiM.at(l + 1))
        return lay, TextileLayer(tuple(k.src for k in klay.edges), tuple(k.tgt for k in klay.edges))

    return _derive_textile(n, fn, T.N, T.M, f"{T.name}*")


def canonical_form(T):
    """Every layer's K-edges sorted by their square; the textile data as nested tuples."""
    out = []
    for l in T.check_levels():
        klay, tlay = T.K.layer(l), T.layer(l)
        rows = sorted((k.src, k.tgt, tlay.p[i], tlay.q[i], sort_key(k.label)) for i, k in enumerate(klay.edges))
        out.append((klay.n_src, klay.n_tgt, tuple(rows)))
    return (T.M, T.N, T.stationary, tuple(out))


def textile_higher_block(T, N):
    """The N-higher block: K^[N], M^[N] and the relative system whose edges are (N-1)-paths of K."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N == 1:
        return T
    v = validate_textile(T)
    if not v:
        raise InvalidSystemError(f"textile is invalid: {v}")
    hK = higher_block_with_paths(T.K, N)
    hM = higher_block_with_paths(T.M, N)
    KN, MN = hK.system, hM.system
    n_levels = min_levels(KN.n_levels, None if MN.n_levels is None else MN.n_levels - 1)

    def rel_layer(l):
        vidx0, vidx1 = hM.vertex_paths.index(l), hM.vertex_paths.index(l + 1)
        edges = []
        for path in hK.vertex_paths.paths(l):
            src = vidx0[tuple(T.p(l + t, e) for t, e in enumerate(path))]
            tgt = vidx1[tuple(T.q(l + t, e) for t, e in enumerate(path))]
            label = ()
            for t, e in enumerate(path):
                label += T.K.label(l + t, e)
            edges.append(Edge(src, tgt, label))
        return Layer(len(vidx0), len(vidx1), tuple(edges), MN.iota(l))

    relN = derive_lgs(n_levels, rel_layer)

    def fn(l):
        eidx0, eidx1 = hM.edge_paths.index(l), hM.edge_paths.index(l + 1)
        p, q = [], []
        for path in hK.edge_paths.paths(l):
            p.append(eidx0[tuple(T.p(l + t, e) for t, e in enumerate(path))])
            q.append(eidx1[tuple(T.q(l + t, e) for t, e in enumerate(path))])
        return KN.layer(l), TextileLayer(tuple(p), tuple(q))

    out = _derive_textile(n_levels, fn, MN, relN, f"{T.name}^[{N}]")
    return out


def j_maps(T):
    """K-label -> (left, right, upper, lower) labels, read off the edges."""
    out = {}
    for l in T.check_levels():
        for i, k in enumerate(T.K.edges(l)):
            out.setdefault(k.label, T.quad(l, i))
    return out


def describe(T):
    lines = [f"textile {T.name or ''}".rstrip(),
             f"  stationary: {T.stationary}"]
    for l in T.check_levels()[:3]:
        lines.append(f"  level {l}: |V^K|={T.K.layer(l).n_src} |E^K|={len(T.K.edges(l))} "
                     f"|E^M|={len(T.M.edges(l))} |E^N|={len(T.N.edges(l))}")
        for i in range(len(T.K.edges(l))):
            quad = T.quad(l, i)
            lines.append("    (" + ", ".join(format_label(x) for x in quad) + ")")
    return "\n".join(lines)


__all__ = ["TextileSystem", "TextileLayer", "build_lr_textile", "validate_textile", "dual_textile",
           "textile_higher_block", "canonical_form", "j_maps", "check_commuting_squares"]
