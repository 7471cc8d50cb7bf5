"""Small named systems used by the tests, the CLI and the bundled system files."""

from .sms import SymbolicMatrixSystem
from .sse import HalfLevels, PsseChain, PsseStep, psse_from_specification_automorphism
from .symbolic import BitMatrix, Specification, SymbolicMatrix


def full_shift(symbols="ab"):
    return SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["+".join(symbols)]]), name="FS")


def golden_mean():
    """Left-resolving presentation of the shift with no two consecutive b's."""
    return SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["a", "a"], ["b", "0"]]), name="GM")


def non_lr_golden_mean():
    """Same subshift; two a-edges end at the first vertex."""
    return SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["a", "b"], ["a", "0"]]), name="GMr")


def iota_swap_full_shift():
    """A 2-vertex presentation of the full shift whose ι swaps the vertices."""
    return SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["a", "b"], ["b", "a"]]),
                                                BitMatrix.of([[0, 1], [1, 0]]), name="FSx")


def two_point_system(levels=4):
    """Explicit system for {a^∞, b^∞}: one vertex at level 0, two above it."""
    blocks = [(SymbolicMatrix.of([["a", "b"]]), BitMatrix.of([[1, 1]]))]
    for _ in range(levels - 1):
        blocks.append((SymbolicMatrix.of([["a", "0"], ["0", "b"]]), BitMatrix.identity(2)))
    return SymbolicMatrixSystem.from_blocks(blocks, name="AB")


def swap(symbols="ab"):
    return Specification.letterwise({"a": "b", "b": "a"}, "swap") if symbols == "ab" else cycle(symbols)


def cycle(symbols):
    s = list(symbols)
    return Specification.letterwise({x: s[(i + 1) % len(s)] for i, x in enumerate(s)}, "cycle")


def identity_spec(symbols="ab"):
    return Specification.letterwise({x: x for x in symbols}, "id")


def swap_step():
    return psse_from_specification_automorphism(full_shift(), swap(), name="swap")


def shift_chain():
    """A 2-step chain through a 2x2 system whose automorphism is the shift σ.

    Step 1 splits a -> c1 d1, b -> c2 d2 and reads s_ij = d_i c_j; step 2
    splits s_ij -> p_i q_j and reads a = q1 p1, b = q2 p2.
    """
    FS = full_shift()
    Mp = SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([[("s11",), ("s12",)], [("s21",), ("s22",)]]), name="S")
    P1 = SymbolicMatrix.of([[("c1",), ("c2",)]])
    Q1 = SymbolicMatrix.of([[("d1",)], [("d2",)]])
    k0 = Specification({("a",): ("c1", "d1"), ("b",): ("c2", "d2")}, "split")
    k1 = Specification({(f"s{i}{j}",): (f"d{i}", f"c{j}") for i in (1, 2) for j in (1, 2)}, "read")
    step1 = PsseStep(FS, Mp, k0, k1, HalfLevels.stationary(P1), HalfLevels.stationary(Q1),
                     HalfLevels.stationary(BitMatrix.identity(1)), HalfLevels.stationary(BitMatrix.identity(2)),
                     name="split")
    P2 = SymbolicMatrix.of([[("p1",)], [("p2",)]])
    Q2 = SymbolicMatrix.of([[("q1",), ("q2",)]])
    k0b = Specification({(f"s{i}{j}",): (f"p{i}", f"q{j}") for i in (1, 2) for j in (1, 2)}, "split'")
    k1b = Specification({("a",): ("q1", "p1"), ("b",): ("q2", "p2")}, "read'")
    step2 = PsseStep(Mp, FS, k0b, k1b, HalfLevels.stationary(P2), HalfLevels.stationary(Q2),
                     HalfLevels.stationary(BitMatrix.identity(2)), HalfLevels.stationary(BitMatrix.identity(1)),
                     name="merge")
    return PsseChain((step1, step2), "shift")
