"""Reference computations that share no code with the package.

Everything here works straight from the matrix entries: a symbolic matrix is
read as a list of (row, col, label) edges and admissibility is a reachable-set
walk, so a bug in the graph layer cannot hide itself.
"""

import itertools


def edges_of(M):
    """(i, j, label) for every term of every entry, with multiplicity."""
    out = []
    for i, row in enumerate(M.entries):
        for j, e in enumerate(row):
            for w in e:
                out.append((i, j, w))
    return out


def block_at(sys, l):
    return sys.blocks[0] if sys.stationary else sys.blocks[l]


def accepts(sys, word, l0=0):
    """Is there a path starting anywhere at vertex level l0 that spells `word`?"""
    current = set(range(len(block_at(sys, l0)[0].entries)))
    for t, label in enumerate(word):
        M = block_at(sys, l0 + t)[0]
        current = {j for i, j, w in edges_of(M) if i in current and w == label}
        if not current:
            return False
    return True


def letters(sys, l0, m):
    out = set()
    for t in range(m):
        out |= {w for _, _, w in edges_of(block_at(sys, l0 + t)[0])}
    return sorted(out)


def brute_language(sys, m, l0=None):
    """All label strings of length m that some path spells, by filtering every candidate string."""
    if l0 is None:
        l0 = 0 if sys.stationary else len(sys.blocks) - m
    alphabet = letters(sys, l0, m)
    return {w for w in itertools.product(alphabet, repeat=m) if accepts(sys, w, l0)}


def fibonacci_counts(m):
    """Golden-mean word counts: F(m+2) with F(1) = F(2) = 1."""
    a, b = 1, 2
    for _ in range(m - 1):
        a, b = b, a + b
    return b


def _entry_counts(M):
    from collections import Counter
    out = {}
    for i, j, w in edges_of(M):
        out.setdefault((i, j), Counter())[w] += 1
    return out


def axiom_violations(sys):
    """Violations of the I-matrix and commutation axioms, recomputed from raw entries.

    Returns tuples ("I-row", level, row), ("I-column", level, col, ones) and
    ("commutation", level, (i, j)) for the first differing entry in row-major order.
    """
    from collections import Counter
    out = set()
    n = 1 if sys.stationary else len(sys.blocks)
    for l in range(n):
        I = block_at(sys, l)[1].entries
        for i, row in enumerate(I):
            if not any(row):
                out.add(("I-row", l, i))
        for j in range(len(I[0])):
            ones = sum(r[j] for r in I)
            if ones != 1:
                out.add(("I-column", l, j, ones))
    pairs = [0] if sys.stationary else range(len(sys.blocks) - 1)
    for l in pairs:
        (M0, I0), (M1, I1) = block_at(sys, l), block_at(sys, l + 1)
        E0, E1 = _entry_counts(M0), _entry_counts(M1)
        rows, cols = len(I0.entries), len(M1.entries[0])
        for i in range(rows):
            for j in range(cols):
                left, right = Counter(), Counter()
                for t in range(len(I0.entries[0])):
                    for _ in range(I0.entries[i][t]):
                        left.update(E1.get((t, j), Counter()))
                for t in range(len(M0.entries[0])):
                    for _ in range(I1.entries[t][j]):
                        right.update(E0.get((i, t), Counter()))
                if left != right:
                    out.add(("commutation", l, (i, j)))
                    break
            else:
                continue
            break
    return out
