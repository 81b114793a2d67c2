"""Independent oracles used to derive expected values in the tests.

Everything here recomputes results by brute force or by a second, simpler
algorithm so that the library's own code paths never check themselves.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from fpforge.complex_core import SimplicialComplex

RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
]


def brute_link(K: SimplicialComplex, simplex) -> set[tuple[int, ...]]:
    """Link by coface enumeration over the full simplex set."""
    s = tuple(sorted(simplex))
    out = set()
    for t in K.simplices:
        if set(s) <= set(t) and len(t) > len(s):
            out.add(tuple(v for v in t if v not in s))
    return out


def brute_chain_count(K: SimplicialComplex) -> dict[int, int]:
    """Number of inclusion chains per length, counted by explicit enumeration."""
    simps = sorted(K.simplices, key=lambda s: (len(s), s))
    counts: dict[int, int] = {}
    chains_ending: dict[tuple[int, ...], list[int]] = {}

    def extend(chain: tuple[tuple[int, ...], ...]):
        counts[len(chain)] = counts.get(len(chain), 0) + 1
        top = chain[-1]
        for t in simps:
            if len(t) > len(top) and set(top) < set(t):
                extend(chain + (t,))

    for s in simps:
        extend((s,))
    return counts


def brute_join_double(K: SimplicialComplex) -> set[tuple[int, ...]]:
    """All sign-decorated simplices, enumerated directly from the definition."""
    out = set()
    for s in K.simplices:
        for signs in product((0, 1), repeat=len(s)):
            out.add(tuple(sorted(2 * v + sg for v, sg in zip(s, signs))))
    return out


def brute_flag(K: SimplicialComplex) -> bool:
    """Flag test by enumerating every vertex subset and checking cliques."""
    verts = sorted(K.vertices)
    edges = {s for s in K.simplices if len(s) == 2}
    for k in range(3, len(verts) + 1):
        for sub in combinations(verts, k):
            if all(tuple(sorted(p)) in edges for p in combinations(sub, 2)):
                if sub not in K.simplices:
                    return False
    return True


def field_betti_numbers(K: SimplicialComplex, p: int | None) -> list[int]:
    """Reduced betti numbers over F_p (or Q when p is None) by dense row reduction."""
    dim = K.dimension
    if dim < 0:
        return []
    bases = [sorted(s for s in K.simplices if len(s) == k + 1) for k in range(dim + 1)]
    index = [{s: i for i, s in enumerate(b)} for b in bases]

    def boundary(k: int) -> list[list]:
        zero = 0 if p is not None else Fraction(0)
        rows = len(bases[k - 1])
        cols = len(bases[k])
        M = [[zero] * cols for _ in range(rows)]
        for c, s in enumerate(bases[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                val = -1 if i % 2 else 1
                M[index[k - 1][face]][c] = (val % p) if p is not None else Fraction(val)
        return M

    def rank(M: list[list]) -> int:
        if not M or not M[0]:
            return 0
        M = [row[:] for row in M]
        rows, cols = len(M), len(M[0])
        r = 0
        for c in range(cols):
            pivot = None
            for i in range(r, rows):
                if M[i][c]:
                    pivot = i
                    break
            if pivot is None:
                continue
            M[r], M[pivot] = M[pivot], M[r]
            inv = pow(M[r][c], -1, p) if p is not None else 1 / M[r][c]
            M[r] = [x * inv % p if p is not None else x * inv for x in M[r]]
            for i in range(rows):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [
                        (a - f * b) % p if p is not None else a - f * b
                        for a, b in zip(M[i], M[r])
                    ]
            r += 1
            if r == rows:
                break
        return r

    ranks = [0] * (dim + 2)
    for k in range(1, dim + 1):
        ranks[k] = rank(boundary(k))
    betti = []
    for k in range(dim + 1):
        b = len(bases[k]) - ranks[k] - ranks[k + 1]
        if k == 0:
            b -= 1
        betti.append(b)
    return betti


def minor_gcd_invariants(A: list[list[int]]) -> list[int]:
    """Invariant factors via gcds of k-by-k minors (the determinantal divisors).

    The product of the first k invariant factors equals the gcd of all k-by-k
    minors; this is a completely different route than any elimination, so it
    makes a clean oracle for small matrices.
    """
    from math import gcd

    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[A[i][j] for j in cols] for i in rows]
                g = gcd(g, determinant(sub))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def determinant(A: list[list[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a:
                Bk = B[k]
                Oi = out[i]
                for j in range(cols):
                    Oi[j] += a * Bk[j]
    return out


def all_complexes_on(n: int):
    """Every simplicial complex on a subset of {0..n-1}, by monotone DFS.

    Subsets are processed in size order, so a set may be included only when
    all of its maximal proper subsets already are; this enumerates exactly
    the downward-closed families of nonempty subsets.
    """
    subsets = []
    for k in range(1, n + 1):
        subsets.extend(combinations(range(n), k))
    position = {s: i for i, s in enumerate(subsets)}

    def admissible(s, chosen):
        if len(s) == 1:
            return True
        return all(s[:i] + s[i + 1 :] in chosen for i in range(len(s)))

    out = []

    def walk(i, chosen):
        if i == len(subsets):
            if chosen:
                out.append(frozenset(chosen))
            return
        s = subsets[i]
        walk(i + 1, chosen)
        if admissible(s, chosen):
            chosen.add(s)
            walk(i + 1, chosen)
            chosen.remove(s)

    walk(0, set())
    return out
