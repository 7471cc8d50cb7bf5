"""Properly strong shift equivalences, their induced systems, and the automorphisms they define.

A 1-step equivalence (P, Q, X, Y) between (M, I) and (M', I') is indexed by
half-levels j: M_l ~ P_{2l} Q_{2l+1}, M'_l ~ Q_{2l} P_{2l+1}, I_l = X_{2l} X_{2l+1},
I'_l = Y_{2l} Y_{2l+1}, X_j P_{j+1} = P_j Y_{j+1}, Y_j Q_{j+1} = Q_j X_{j+1}.
"""

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    DimensionError, InadmissibleWordError, InvalidSystemError, LevelError, SpecificationError)
from .sms import (
    SpanBlocks, SymbolicMatrixSystem, derive_system, higher_block_sms, min_levels, psse_power_product,
    require_valid)
from .symbolic import (
    BitMatrix, Specification, SymbolicMatrix, check_specified_equivalence, first_difference, format_label,
    format_label_word, mat_chain, mat_mul, sort_key)
from .textile.decode import apply_phi_T, require_decoder
from .textile.system import build_lr_textile, check_commuting_squares
from .verdict import Verdict
from .window import Window

FORWARD, BACKWARD = "forward", "backward"


@dataclass(frozen=True)
class HalfLevels:
    """Matrices indexed by half-level j. Periodic data holds (even, odd) templates."""

    values: tuple
    periodic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.periodic and len(self.values) != 2:
            raise ValueError("periodic half-level data is an (even, odd) pair")

    @classmethod
    def stationary(cls, even, odd=None):
        return cls((even, even if odd is None else odd), True)

    def __call__(self, j):
        if j < 0:
            raise LevelError(f"negative half-level {j}")
        if self.periodic:
            return self.values[j % 2]
        if j >= len(self.values):
            raise LevelError(f"half-level {j} unavailable", {"half_level": j, "available": len(self.values)})
        return self.values[j]

    @property
    def count(self):
        return None if self.periodic else len(self.values)


def _half(x):
    return x if isinstance(x, HalfLevels) else HalfLevels(tuple(x))


@dataclass(frozen=True)
class PsseStep:
    source: SymbolicMatrixSystem
    target: SymbolicMatrixSystem
    kappa0: Specification  # Σ -> C D
    kappa1: Specification  # Σ' -> D C
    P: HalfLevels
    Q: HalfLevels
    X: HalfLevels
    Y: HalfLevels
    direction: str = FORWARD
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for attr in "PQXY":
            object.__setattr__(self, attr, _half(getattr(self, attr)))
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError("direction is 'forward' or 'backward'")

    @property
    def n_levels(self):
        halves = [m.count for m in (self.P, self.Q, self.X, self.Y)]
        return min_levels(self.source.n_levels, self.target.n_levels,
                          *[None if h is None else h // 2 for h in halves])

    @property
    def stationary(self):
        return self.n_levels is None

    def levels(self):
        return [0] if self.stationary else list(range(self.n_levels))

    def half_levels(self):
        """Half-levels j at which the intertwinings X_j P_{j+1} = P_j Y_{j+1} are checked."""
        return [0, 1] if self.stationary else list(range(2 * self.n_levels - 1))

    @property
    def c_length(self):
        return self.P(0).word_length

    @property
    def d_length(self):
        return self.Q(0).word_length

    def c_labels(self):
        return _labels(self.P, self.stationary, self.n_levels)

    def d_labels(self):
        return _labels(self.Q, self.stationary, self.n_levels)


def _labels(h, stationary, L):
    js = [0, 1] if stationary else range(2 * L)
    out = set()
    for j in js:
        out |= h(j).labels()
    return out


def _entry_check(v, kind, l, A, B, kappa=None):
    try:
        if kappa is None:
            d = first_difference(A, B)
            if d == "shape":
                v.add(kind, l, detail="shape", left=list(A.shape), right=list(B.shape))
            elif d is not None:
                v.add(kind, l, entry=list(d), left=str(A[d]), right=str(B[d]))
        else:
            r = check_specified_equivalence(A, B, kappa)
            for x in r.violations:
                v.add(kind, l, **x.detail)
    except DimensionError as exc:
        v.add(kind, l, detail=str(exc))


def validate_psse_step(step):
    v = Verdict(info={"levels": step.n_levels})
    s = step
    for l in s.levels():
        try:
            PQ = mat_mul(s.P(2 * l), s.Q(2 * l + 1))
            _entry_check(v, "M-factor", l, s.source.M(l), PQ, s.kappa0)
        except DimensionError as exc:
            v.add("M-factor", l, detail=str(exc))
        try:
            QP = mat_mul(s.Q(2 * l), s.P(2 * l + 1))
            _entry_check(v, "M'-factor", l, s.target.M(l), QP, s.kappa1)
        except DimensionError as exc:
            v.add("M'-factor", l, detail=str(exc))
        for kind, lhs, a, b in (("I-factor", s.source.I(l), s.X, s.X), ("I'-factor", s.target.I(l), s.Y, s.Y)):
            try:
                _entry_check(v, kind, l, lhs, mat_mul(a(2 * l), b(2 * l + 1)))
            except DimensionError as exc:
                v.add(kind, l, detail=str(exc))
    for j in s.half_levels():
        for kind, a, b, c, d in (("XP=PY", s.X, s.P, s.P, s.Y), ("YQ=QX", s.Y, s.Q, s.Q, s.X)):
            try:
                _entry_check(v, kind, j, mat_mul(a(j), b(j + 1)), mat_mul(c(j), d(j + 1)))
            except DimensionError as exc:
                v.add(kind, j, detail=str(exc))
    return v


def require_valid_step(step):
    v = validate_psse_step(step)
    if not v:
        raise InvalidSystemError(f"invalid equivalence step {step.name!r}: {v}",
                                 {"violations": [x.to_dict() for x in v.violations]})
    return step


def _require_self(step):
    if step.source != step.target:
        raise InvalidSystemError("the step does not go from a system to itself")


def induced_blocks(step, side):
    """l -> P_{2l} Y_{2l+1} (checked against X_{2l} P_{2l+1}), or Q_{2l} X_{2l+1} (against Y_{2l} Q_{2l+1})."""
    A, B1, B2, A2 = (step.P, step.Y, step.X, step.P) if side == "P" else (step.Q, step.X, step.Y, step.Q)

    def fn(l):
        M1 = mat_mul(A(2 * l), B1(2 * l + 1))
        M2 = mat_mul(B2(2 * l), A2(2 * l + 1))
        d = first_difference(M1, M2)
        if d is not None:
            raise InvalidSystemError(f"the two forms of {side}_{{l,l+1}} differ at level {l}",
                                     {"level": l, "entry": d if d == "shape" else list(d)})
        return M1

    return fn


def _induced(step, side):
    require_valid_step(step)
    _require_self(step)
    fn = induced_blocks(step, side)
    return derive_system(step.n_levels, lambda l: (fn(l), step.source.I(l)), None, f"{step.name}.{side}")


def induced_P_system(step):
    """(P, I^P) over C. Its I matrices are those of the source system."""
    return _induced(step, "P")


def induced_Q_system(step):
    """(Q, I^Q) over D. Its I matrices are those of the source system."""
    return _induced(step, "Q")


def _split(w, n):
    return w[:n], w[n:]


def synth_kappa_P(step, verify=True):
    """κ^P(αc) = c_α κ'^{-1}(d_α c), where κ(α) = c_α d_α. Realizes M P ~ P M."""
    inv1 = {v: k for k, v in step.kappa1.items()}
    wc = step.c_length
    out = {}
    for alpha, image in step.kappa0.items():
        ca, da = _split(image, wc)
        for c in step.c_labels():
            beta = inv1.get(da + c)
            if beta is not None:
                out[alpha + c] = ca + beta
    kappa = Specification(out, name=f"{step.name}.kappaP")
    if verify:
        _verify_commuting(step.source, induced_P_system(step), kappa, "P")
    return kappa


def synth_kappa_Q(step, verify=True):
    """κ^Q(αd) = d'_α κ^{-1}(c'_α d), where κ'(α) = d'_α c'_α. Realizes M' Q ~ Q M."""
    inv0 = {v: k for k, v in step.kappa0.items()}
    wd = step.d_length
    out = {}
    for alpha, image in step.kappa1.items():
        da, ca = _split(image, wd)
        for d in step.d_labels():
            beta = inv0.get(ca + d)
            if beta is not None:
                out[alpha + d] = da + beta
    kappa = Specification(out, name=f"{step.name}.kappaQ")
    if verify:
        _verify_commuting(step.target, induced_Q_system(step), kappa, "Q")
    return kappa


def _verify_commuting(Msys, Nsys, kappa, what):
    v = check_commuting_squares(Msys, Nsys, kappa)
    if not v:
        raise SpecificationError(f"synthesized kappa for {what} fails the specified equivalence",
                                 v.violations[0].to_dict())


@dataclass(frozen=True)
class PsseChain:
    steps: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a chain needs at least one step")

    @property
    def N(self):
        return len(self.steps)

    @property
    def base(self):
        return self.steps[0].source

    @property
    def closed(self):
        return self.steps[-1].target == self.steps[0].source

    @property
    def forward(self):
        return all(s.direction == FORWARD for s in self.steps)

    @property
    def n_levels(self):
        return min_levels(*[s.n_levels for s in self.steps])


def validate_chain(chain):
    v = Verdict(info={"steps": chain.N, "closed": chain.closed})
    for i, s in enumerate(chain.steps):
        v.extend(validate_psse_step(s), prefix=f"step{i + 1}")
    for i in range(chain.N - 1):
        if chain.steps[i].target != chain.steps[i + 1].source:
            v.add("adjacency", None, steps=[i + 1, i + 2])
    if not chain.closed:
        v.add("not-closed", None)
    return v


def require_valid_chain(chain):
    v = validate_chain(chain)
    if not v:
        raise InvalidSystemError(f"invalid chain {chain.name!r}: {v}",
                                 {"violations": [x.to_dict() for x in v.violations]})
    return chain


def as_chain(x):
    return x if isinstance(x, PsseChain) else PsseChain((x,), getattr(x, "name", ""))


@dataclass(frozen=True)
class ChainBlocks:
    """Span-N blocks of a closed chain together with the blocked systems and κ."""

    side: str
    blocks: SpanBlocks
    kappa: Specification
    blocked: SymbolicMatrixSystem  # P^[N] (or Q^[N])
    base_blocked: SymbolicMatrixSystem  # M^[N]

    def textile(self):
        return build_lr_textile(self.base_blocked, self.blocked, self.kappa, f"T_{self.side}")


def _chain_letters(systems):
    out = []
    for sys in systems:
        labels = set()
        for l in ([0] if sys.stationary else range(sys.n_levels)):
            labels |= sys.M(l).labels()
        out.append(sorted(labels, key=sort_key))
    return out


def _chain_kappa_P(chain):
    """Iterate α_{i-1} c_i -> c'_i α_i through the steps, κ0^(i)(α_{i-1}) = c'_i d_i, α_i = κ1^(i)^{-1}(d_i c_i)."""
    steps = chain.steps
    inv1 = [{v: k for k, v in s.kappa1.items()} for s in steps]
    c_sets = [sorted(s.c_labels(), key=sort_key) for s in steps]
    out = {}
    for alpha in sorted(steps[0].kappa0.domain(), key=sort_key):
        for cs in itertools.product(*c_sets):
            a, prefix = alpha, ()
            for i, s in enumerate(steps):
                c1, d = _split(s.kappa0.get(a), s.c_length)
                a = inv1[i].get(d + cs[i])
                if a is None:
                    break
                prefix += c1
            else:
                out[alpha + sum(cs, ())] = prefix + a
    return Specification(out, name=f"{chain.name}.kappaP")


def _chain_kappa_Q(chain):
    """Iterate from the last step down: κ1^(i)(α) = d'_i c'_i, β = κ0^(i)^{-1}(c'_i d_i)."""
    steps = chain.steps
    inv0 = [{v: k for k, v in s.kappa0.items()} for s in steps]
    d_sets = [sorted(s.d_labels(), key=sort_key) for s in steps]
    out = {}
    for alpha in sorted(steps[-1].kappa1.domain(), key=sort_key):
        for ds in itertools.product(*reversed(d_sets)):  # d_N, ..., d_1
            a, prefix = alpha, ()
            for t, i in enumerate(reversed(range(len(steps)))):
                s = steps[i]
                d1, c = _split(s.kappa1.get(a), s.d_length)
                a = inv0[i].get(c + ds[t])
                if a is None:
                    break
                prefix += d1
            else:
                out[alpha + sum(ds, ())] = prefix + a
    return Specification(out, name=f"{chain.name}.kappaQ")


def _chain_blocks(chain, side):
    chain = as_chain(chain)
    require_valid_chain(chain)
    N = chain.N
    induced = [induced_blocks(s, side) for s in chain.steps]
    order = induced if side == "P" else induced[::-1]
    n_levels = chain.n_levels

    def block(a):
        return mat_chain([fn(a + t) for t, fn in enumerate(order)])

    blocks = SpanBlocks(N, block, n_levels, f"{chain.name}.{side}")
    base = chain.base
    # intertwining: B_{l,l+N} I_{l+N} = I_l B_{l+1,l+N+1}
    checks = [0] if n_levels is None else range(max(0, n_levels - N))
    for l in checks:
        lhs = mat_mul(blocks(l), base.I(l + N))
        rhs = mat_mul(base.I(l), blocks(l + 1))
        d = first_difference(lhs, rhs)
        if d is not None:
            raise InvalidSystemError(f"{side} blocks do not intertwine with I at level {l}",
                                     {"level": l, "entry": d if d == "shape" else list(d)})
    kappa = _chain_kappa_P(chain) if side == "P" else _chain_kappa_Q(chain)
    # M_l B_{l+1,l+1+N} ~ B_{l,l+N} M_{l+N}
    for l in checks:
        r = check_specified_equivalence(mat_mul(base.M(l), blocks(l + 1)), mat_mul(blocks(l), base.M(l + N)), kappa)
        if not r:
            raise SpecificationError(f"chain kappa_{side} fails at level {l}", r.violations[0].to_dict())

    def blocked_fn(l):
        return blocks(N * l), mat_chain([base.I(N * l + t) for t in range(N)])

    out_levels = None if n_levels is None else n_levels // N
    if out_levels is not None and out_levels < 1:
        raise LevelError(f"chain needs at least {N} levels")
    blocked = derive_system(out_levels, blocked_fn, None, f"{chain.name}.{side}^[{N}]")
    require_valid(blocked, f"{side}^[{N}]")
    return ChainBlocks(side, blocks, kappa, blocked, higher_block_sms(base, N))


def chain_P_system(chain):
    """Blocks P_{a,a+N} = P^(1)_{a,a+1} P^(2)_{a+1,a+2} ... P^(N)_{a+N-1,a+N} with κ_P."""
    return _chain_blocks(chain, "P")


def chain_Q_system(chain):
    """Blocks Q_{a,a+N} = Q^(N)_{a,a+1} Q^(N-1)_{a+1,a+2} ... Q^(1)_{a+N-1,a+N} with κ_Q.

    The reversed order is what makes the block dimensions match for chains
    between systems of different sizes.
    """
    return _chain_blocks(chain, "Q")


@dataclass(frozen=True)
class SlidingBlockCode:
    """Output at coordinate i reads input coordinates i - memory .. i + anticipation."""

    memory: int
    anticipation: int
    rule: Callable
    name: str = ""

    @property
    def window(self):
        return self.memory + self.anticipation + 1

    def apply(self, word):
        win = Window.of(word)
        w = self.window
        if len(win) < w:
            raise InadmissibleWordError(f"word of length {len(win)} shorter than code window {w}",
                                        {"length": len(win), "window": w})
        out = tuple(self.rule(win.word[s:s + w]) for s in range(len(win) - w + 1))
        return Window(win.start + self.memory, out)

    def then(self, outer):
        """outer after self."""
        inner = self

        def rule(window):
            mid = tuple(inner.rule(window[s:s + inner.window]) for s in range(outer.window))
            return outer.rule(mid)

        return SlidingBlockCode(inner.memory + outer.memory, inner.anticipation + outer.anticipation, rule,
                                f"{outer.name}.{inner.name}")

    def table(self, words):
        """(input window, output symbol) for the given window words."""
        return [(w, self.rule(tuple(w))) for w in words]


def identity_code():
    return SlidingBlockCode(0, 0, lambda w: w[0], "id")


def shift_code(n=1):
    """σ^n: (σx)_i = x_{i+1}, as a code with anticipation n."""
    return SlidingBlockCode(0, n, lambda w: w[-1], f"sigma^{n}")


def bipartite_code(step):
    """The per-step conjugacy κ1^{-1}(d_l c_{l+1}) (forward) or κ1^{-1}(d_{l-1} c_l) (backward)."""
    inv1 = {v: k for k, v in step.kappa1.items()}
    wc = step.c_length

    def split(alpha):
        img = step.kappa0.get(alpha)
        if img is None:
            raise InadmissibleWordError(f"{format_label(alpha)} not in the domain of kappa",
                                        {"symbol": format_label(alpha)})
        return _split(img, wc)

    def rule(window):
        (_, d), (c, _) = split(window[0]), split(window[1])
        out = inv1.get(d + c)
        if out is None:
            raise InadmissibleWordError(f"window {format_label_word(window)} is not admissible",
                                        {"window": format_label_word(window)})
        return out

    if step.direction == FORWARD:
        return SlidingBlockCode(0, 1, rule, step.name)
    return SlidingBlockCode(1, 0, rule, step.name)


def forward_automorphism_code(chain):
    """φ as the composition of the per-step forward codes, step 1 applied first."""
    chain = as_chain(chain)
    if not chain.closed:
        raise InvalidSystemError("the chain is not closed, so it defines no automorphism")
    if not chain.forward:
        raise InvalidSystemError("forward_automorphism_code needs every step to be forward")
    code = None
    for s in chain.steps:
        c = bipartite_code(s)
        code = c if code is None else code.then(c)
    return SlidingBlockCode(code.memory, code.anticipation, code.rule, f"phi[{chain.name}]")


def apply_automorphism(code, word, k, n):
    """φ^k σ^n on a finite window; returns a Window in absolute coordinates.

    Each application of φ trims `memory` symbols on the left and `anticipation`
    on the right; σ^n moves coordinates left by n.
    """
    if k < 0 or n < 0:
        raise ValueError("need k, n >= 0")
    win = Window.of(word)
    for _ in range(k):
        win = code.apply(win)
    win = win.shifted(-n)
    if len(win) == 0:
        raise InadmissibleWordError("word too short")
    return win


def identify_subshift(chain, k, n, side="P"):
    """The system (P^k M^n) whose subshift is conjugate to (Λ, φ^k σ^n).

    With side="Q" the Q blocks are used; that system realizes (σ^N φ^{-1})^k σ^n.
    """
    chain = as_chain(chain)
    cb = chain_P_system(chain) if side == "P" else chain_Q_system(chain)
    out = psse_power_product(cb.blocks, chain.base, k, n, chain.N)
    return require_valid(out, "identified system")


@dataclass(frozen=True)
class Encoder:
    """ξ-decode rows of a weave grown by φ_T and read the check bias word of slope (k, n)."""

    chain: PsseChain
    k: int
    n: int
    textile: object
    decoder: object

    @classmethod
    def build(cls, chain, k, n, side="P", max_window=4):
        chain = as_chain(chain)
        if k < 0 or n < 1:
            raise ValueError("need k >= 0 and n >= 1")
        T = (chain_P_system(chain) if side == "P" else chain_Q_system(chain)).textile()
        return cls(chain, k, n, T, require_decoder(T, "xi", max_window))

    def rows(self, word, count):
        rows = [Window.of(word)]
        while len(rows) < count:
            prev = rows[-1]
            if len(prev) < self.decoder.window:
                break
            rows.append(apply_phi_T(self.textile, prev, self.decoder))
        return rows

    def encode(self, word):
        k, n = self.k, self.n
        x = Window.of(word)
        if len(x) < n:
            raise InadmissibleWordError("word too short")
        t_lo = -(-x.start // n)
        t_hi = (x.end - n) // n
        rows = self.rows(x, t_hi * k + k + 1 if t_hi >= 0 else k + 1)
        left = {}
        for i, r in enumerate(rows):
            if len(r) >= self.decoder.window:
                cells = self.decoder.apply(r)
                left[i] = Window(cells.start, tuple(j_quad[0] for j_quad in (_quad(c) for c in cells.word)))

        def symbol(t):
            out = ()
            for s in range(k):
                i, j = t * k + s, t * n
                if i not in left or not left[i].start <= j < left[i].end:
                    return None
                out += left[i].at(j)
            i = t * k + k
            if i >= len(rows):
                return None
            row = rows[i]
            for r in range(n):
                j = t * n + r
                if not row.start <= j < row.end:
                    return None
                out += row.at(j)
            return out

        syms = {}
        for t in range(t_lo, t_hi + 1):
            s = symbol(t)
            if s is not None:
                syms[t] = s
        if not syms:
            raise InadmissibleWordError("word too short to encode a single symbol", {"length": len(x)})
        lo = min(syms)
        hi = lo
        while hi + 1 in syms:
            hi += 1
        return Window(lo, tuple(syms[t] for t in range(lo, hi + 1)))


def _quad(k_label):
    return k_label[0]


def encode_conjugacy(chain, word, k, n, encoder=None):
    """The composite word over (C^(1)...C^(N))^k Σ^n coding the φ^k σ^n orbit of `word`."""
    enc = encoder or Encoder.build(chain, k, n)
    return enc.encode(word)


def encode_length(encoder, m, sample):
    """Smallest input length whose encoding covers coordinates 0..m-1, probing with `sample(L)`."""
    L = encoder.n * m
    while L < 10 * (m + 1) * (encoder.k + 1) * (encoder.n + 1) * max(1, encoder.decoder.window):
        w = sample(L)
        if w is not None:
            try:
                out = encoder.encode(w).crop(0, m)
            except InadmissibleWordError:
                out = ()
            if len(out) == m:
                return L
        L += 1
    raise InadmissibleWordError(f"no input length found for {m} encoded symbols")


def _unit_letter(sys):
    letters = set()
    for label in sys.labels():
        letters |= set(label)
    return "I" if "I" not in letters else "𝕀"


def check_self_equivalence(sys, pi):
    """M_l ~π M_l at every level."""
    v = Verdict()
    for l in ([0] if sys.stationary else range(sys.n_levels)):
        r = check_specified_equivalence(sys.M(l), sys.M(l), pi)
        for x in r.violations:
            v.add(x.kind, l, **x.detail)
        if not r:
            break
    return v


def psse_from_specification_automorphism(sys, pi, unit=None, name=""):
    """The 1-step equivalence from (M, I) to itself realizing the symbolic automorphism φ_π.

    C = {unit}, D = Σ, κ(γ) = unit π(γ), κ'(γ) = γ unit, P = unit on the
    diagonal, Q = M, X_{2l} = Y_{2l+1} = I_l and X_{2l+1} = Y_{2l} = identity.
    """
    require_valid(sys)
    v = check_self_equivalence(sys, pi)
    if not v:
        raise SpecificationError(f"M is not specified equivalent to itself under {pi.name or 'pi'}",
                                 v.violations[0].to_dict())
    unit = (unit or _unit_letter(sys),)
    k0 = Specification({g: unit + pi(g) for g in pi.domain()}, name="kappa", dst="CD")
    k1 = Specification({g: g + unit for g in pi.domain()}, name="kappa'", dst="DC")
    if sys.stationary:
        M, I = sys.block(0)
        m = M.rows
        D = SymbolicMatrix.diagonal(m, unit)
        Id = BitMatrix.identity(m)
        P = HalfLevels.stationary(D)
        Q = HalfLevels.stationary(M)
        X = HalfLevels((I, Id), True)
        Y = HalfLevels((Id, I), True)
    else:
        P, Q, X, Y = [], [], [], []
        for l in range(sys.n_levels):
            M, I = sys.block(l)
            P += [SymbolicMatrix.diagonal(M.rows, unit), SymbolicMatrix.diagonal(M.cols, unit)]
            Q += [M, M]
            X += [I, BitMatrix.identity(M.cols)]
            Y += [BitMatrix.identity(M.rows), I]
        P, Q, X, Y = (HalfLevels(tuple(h)) for h in (P, Q, X, Y))
    step = PsseStep(sys, sys, k0, k1, P, Q, X, Y, FORWARD, name or f"psse[{pi.name or 'pi'}]")
    return require_valid_step(step)


def conjugated_code(psi, code, psi_inv):
    """ψ^{-1} ∘ code ∘ ψ for a user-supplied conjugacy ψ and its inverse."""
    return psi.then(code).then(psi_inv)


def erase_kappa(sys):
    """The bare (M, I) data, for comparing systems built from different specifications."""
    return tuple((str(M), str(I)) for M, I in sys.blocks), sys.stationary


__all__ = [
    "HalfLevels", "PsseStep", "PsseChain", "ChainBlocks", "SlidingBlockCode", "Encoder", "FORWARD", "BACKWARD",
    "validate_psse_step", "validate_chain", "induced_P_system", "induced_Q_system", "synth_kappa_P",
    "synth_kappa_Q", "chain_P_system", "chain_Q_system", "forward_automorphism_code", "bipartite_code",
    "apply_automorphism", "identify_subshift", "encode_conjugacy", "encode_length",
    "psse_from_specification_automorphism", "check_self_equivalence", "conjugated_code", "identity_code",
    "shift_code", "as_chain", "erase_kappa"]
