"""Exact simplicial chain complexes and reduced homology.

Integral homology is computed by Smith normal form over arbitrary-precision
integers; no modular shortcuts are taken on the integer path, since
intermediate entries can grow.  Field coefficients (the rationals and prime
fields) go through exact rank computations instead.

The public Smith normal form returns the diagonal together with unimodular
transforms U, V satisfying U*A*V = D.  Internally, chain boundary matrices
are reduced by a sparse elimination that peels unit pivots first (the
smallest possible nonzero magnitude) and hands any non-unit remainder to the
dense routine; the split preserves invariant factors because a cleared unit
pivot splits off as a diag(1, rest) block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .complex_core import SimplicialComplex, _require_valid


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring selector: the integers, the rationals, or a prime field."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring tag {self.tag!r}")
        if self.tag == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"{self.p!r} is not prime")
        elif self.p is not None:
            raise ValueError(f"ring {self.tag} takes no prime")

    @classmethod
    def Z(cls) -> "RingSpec":
        return cls("Z")

    @classmethod
    def Q(cls) -> "RingSpec":
        return cls("Q")

    @classmethod
    def Fp(cls, p: int) -> "RingSpec":
        return cls("Fp", int(p))

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        text = text.strip()
        if text == "Z":
            return cls.Z()
        if text == "Q":
            return cls.Q()
        if text.startswith("F"):
            return cls.Fp(int(text[1:]))
        raise ValueError(f"cannot parse ring {text!r} (expected Z, Q, or F<p>)")

    @property
    def key(self) -> str:
        return f"F{self.p}" if self.tag == "Fp" else self.tag

    @property
    def is_field(self) -> bool:
        return self.tag != "Z"

    def __str__(self) -> str:
        return self.key


# ---------------------------------------------------------------------------
# Smith normal form


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix: returns (D, U, V) with U*A*V = D.

    D is diagonal with nonnegative entries forming a divisibility chain;
    U and V are unimodular.  Pivots are chosen by smallest nonzero magnitude,
    which keeps intermediate entries small.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    M = [[int(v) for v in row] for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        if q:
            Md, Ms = M[dst], M[src]
            for c in range(n):
                Md[c] += q * Ms[c]
            Ud, Us = U[dst], U[src]
            for c in range(m):
                Ud[c] += q * Us[c]

    def add_col(dst, src, q):
        if q:
            for row in M:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        if M[t][t] < 0:
            for c in range(n):
                M[t][c] = -M[t][c]
            for c in range(m):
                U[t][c] = -U[t][c]
        piv = M[t][t]
        dirty = False
        for i in range(t + 1, m):
            if M[i][t]:
                add_row(i, t, -(M[i][t] // piv))
                if M[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if M[t][j]:
                add_col(j, t, -(M[t][j] // piv))
                if M[t][j]:
                    dirty = True
        if dirty:
            continue  # a strictly smaller entry appeared; rescan
        offender = None
        for i in range(t + 1, m):
            row = M[i]
            for j in range(t + 1, n):
                if row[j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    return M, U, V


def snf_diagonal(D: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal entries of a (rectangular) diagonal matrix."""
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of a dense matrix."""
    D, _, _ = smith_normal_form(A)
    return [d for d in snf_diagonal(D) if d]


# ---------------------------------------------------------------------------
# Sparse elimination (internal engine for chain complexes)


def _sparse_invariant_factors(entries: Mapping[tuple[int, int], int]) -> list[int]:
    """Invariant factors of a sparse integer matrix given as {(row, col): value}."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    units = 0
    while True:
        # Cheapest unit pivot: scan for the shortest row holding a +-1 entry,
        # break ties toward the sparsest column.
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                if v == 1 or v == -1:
                    key = (len(row), len(cols[c]), r, c)
                    if best is None or key < best[0]:
                        best = (key, r, c)
        if best is None:
            break
        _, r, c = best
        piv = rows[r][c]
        prow = rows[r]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            mult = rows[r2][c] * piv  # piv inverse equals piv for +-1
            row2 = rows[r2]
            for c2, v2 in prow.items():
                cur = row2.get(c2, 0) - mult * v2
                if cur:
                    row2[c2] = cur
                    cols.setdefault(c2, set()).add(r2)
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
            if not row2:
                del rows[r2]
        for c2 in prow:
            cols[c2].discard(r)
        del rows[r]
        units += 1

    factors = [1] * units
    remaining = sorted(r for r in rows)
    if remaining:
        col_ids = sorted({c for r in remaining for c in rows[r]})
        dense = [[rows[r].get(c, 0) for c in col_ids] for r in remaining]
        factors.extend(invariant_factors(dense))
    return factors


def _field_rank(entries: Mapping[tuple[int, int], int], p: int | None) -> int:
    """Rank over F_p (p prime) or over the rationals (p is None)."""
    rowmap: dict[int, dict[int, object]] = {}
    for (r, c), v in entries.items():
        if p is not None:
            v = v % p
        if v:
            rowmap.setdefault(r, {})[c] = v if p is not None else Fraction(v)
    pivots: dict[int, dict] = {}
    rank = 0
    for r in sorted(rowmap):
        row = dict(rowmap[r])
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = pow(row[lead], -1, p) if p is not None else 1 / row[lead]
                normalized = {}
                for c, v in row.items():
                    v = v * inv
                    if p is not None:
                        v %= p
                    if v:
                        normalized[c] = v
                pivots[lead] = normalized
                rank += 1
                break
            coeff = row[lead]
            for c, v in pivots[lead].items():
                cur = row.get(c, 0 if p is not None else Fraction(0)) - coeff * v
                if p is not None:
                    cur %= p
                if cur:
                    row[c] = cur
                elif c in row:
                    del row[c]
    return rank


# ---------------------------------------------------------------------------
# Chain complexes and homology summaries


class ChainComplex:
    """Ordered simplex bases per dimension with integer boundary matrices.

    Boundary signs come from the sorted vertex order: dropping the i-th
    vertex of a sorted simplex carries sign (-1)^i.  The composition of
    consecutive boundaries is verified to vanish exactly.
    """

    __slots__ = ("bases", "boundaries")

    def __init__(self, bases: list[list[tuple[int, ...]]], boundaries: list[dict[tuple[int, int], int]]):
        self.bases = bases
        self.boundaries = boundaries  # boundaries[k] maps C_k -> C_{k-1}; boundaries[0] is empty

    @property
    def dimension(self) -> int:
        return len(self.bases) - 1

    def boundary_dense(self, k: int) -> list[list[int]]:
        rows = len(self.bases[k - 1]) if k >= 1 else 0
        cols = len(self.bases[k]) if k <= self.dimension else 0
        out = [[0] * cols for _ in range(rows)]
        if 1 <= k <= self.dimension:
            for (r, c), v in self.boundaries[k].items():
                out[r][c] = v
        return out


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Boundary matrices of K with the standard alternating signs."""
    _require_valid(K)
    dim = K.dimension
    bases = [K.simplices_of_dim(k) for k in range(dim + 1)]
    index = [{s: i for i, s in enumerate(basis)} for basis in bases]
    boundaries: list[dict[tuple[int, int], int]] = [dict() for _ in range(dim + 1)]
    for k in range(1, dim + 1):
        entries = boundaries[k]
        for c, s in enumerate(bases[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                entries[(index[k - 1][face], c)] = -1 if i % 2 else 1
    for k in range(1, dim):
        _check_composition_zero(boundaries[k], boundaries[k + 1])
    return ChainComplex(bases, boundaries)


def _check_composition_zero(lower: Mapping[tuple[int, int], int], upper: Mapping[tuple[int, int], int]) -> None:
    by_col: dict[int, list[tuple[int, int]]] = {}
    for (r, c), v in upper.items():
        by_col.setdefault(c, []).append((r, v))
    lower_by_col: dict[int, list[tuple[int, int]]] = {}
    for (r, c), v in lower.items():
        lower_by_col.setdefault(c, []).append((r, v))
    for c, col in by_col.items():
        acc: dict[int, int] = {}
        for mid, v in col:
            for r, w in lower_by_col.get(mid, ()):
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            raise AssertionError("boundary composition is nonzero")


@dataclass(frozen=True)
class HomologySummary:
    """Reduced homology ranks (and, over Z, torsion) per degree.

    ``ranks[i]`` is the free rank of reduced H_i; ``torsion[i]`` lists the
    invariant factors > 1 in degree i as a divisibility chain.  Degree 0 uses
    the reduced convention: rank = number of components - 1.
    """

    ring: RingSpec
    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.torsion):
            raise ValueError("ranks and torsion must cover the same degrees")
        if self.ring.is_field and any(self.torsion):
            raise ValueError("field coefficients carry no torsion")

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, i: int) -> int:
        return self.ranks[i] if 0 <= i <= self.max_degree else 0

    def torsion_in(self, i: int) -> tuple[int, ...]:
        return self.torsion[i] if 0 <= i <= self.max_degree else ()

    def is_trivial_in(self, i: int) -> bool:
        return self.rank(i) == 0 and not self.torsion_in(i)

    def to_json_dict(self) -> dict:
        return {
            "ring": self.ring.key,
            "degrees": [
                {"degree": i, "rank": self.ranks[i], "torsion": list(self.torsion[i])}
                for i in range(len(self.ranks))
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "HomologySummary":
        ring = RingSpec.parse(data["ring"])
        degrees = sorted(data["degrees"], key=lambda d: d["degree"])
        if [d["degree"] for d in degrees] != list(range(len(degrees))):
            raise ValueError("degree list must cover 0..max without gaps")
        ranks = tuple(int(d["rank"]) for d in degrees)
        torsion = tuple(tuple(int(t) for t in d.get("torsion", [])) for d in degrees)
        return cls(ring, ranks, torsion)

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.ranks)):
            if self.ranks[i] or self.torsion[i]:
                tor = "".join(f" + Z/{t}" for t in self.torsion[i])
                free = f"rank {self.ranks[i]}" if self.ranks[i] else "0"
                parts.append(f"H~{i}: {free}{tor}")
        return f"[{self.ring}] " + ("; ".join(parts) if parts else "trivial")


def reduced_homology(K: SimplicialComplex, R: RingSpec) -> HomologySummary:
    """Reduced homology of K with coefficients in R."""
    cx = chain_complex(K)
    dim = cx.dimension
    if dim < 0:
        return HomologySummary(R, (), ())
    counts = [len(b) for b in cx.bases]

    if R.is_field:
        p = R.p  # None for the rationals
        ranks_of_boundary = [0] * (dim + 2)
        for k in range(1, dim + 1):
            ranks_of_boundary[k] = _field_rank(cx.boundaries[k], p)
        betti = []
        for k in range(dim + 1):
            b = counts[k] - ranks_of_boundary[k] - ranks_of_boundary[k + 1]
            if k == 0:
                b -= 1
            betti.append(b)
        return HomologySummary(R, tuple(betti), tuple(() for _ in betti))

    factors = [[] for _ in range(dim + 2)]
    for k in range(1, dim + 1):
        factors[k] = _sparse_invariant_factors(cx.boundaries[k])
    ranks = []
    torsion = []
    for k in range(dim + 1):
        free = counts[k] - len(factors[k]) - len(factors[k + 1])
        if k == 0:
            free -= 1
        ranks.append(free)
        torsion.append(tuple(d for d in factors[k + 1] if d > 1))
    return HomologySummary(RingSpec.Z(), tuple(ranks), tuple(torsion))


def field_summary_from_integral(z_summary: HomologySummary, R: RingSpec) -> HomologySummary:
    """Derive a field-coefficient summary from integral data (universal coefficients).

    Over F_p the dimension in degree i is the free rank plus the number of
    invariant factors divisible by p in degrees i and i-1; over Q it is the
    free rank alone.
    """
    if z_summary.ring.tag != "Z":
        raise ValueError("integral summary required")
    if not R.is_field:
        return z_summary
    n = len(z_summary.ranks)
    ranks = []
    for i in range(n):
        r = z_summary.ranks[i]
        if R.tag == "Fp":
            r += sum(1 for d in z_summary.torsion_in(i) if d % R.p == 0)
            r += sum(1 for d in z_summary.torsion_in(i - 1) if d % R.p == 0)
        ranks.append(r)
    return HomologySummary(R, tuple(ranks), tuple(() for _ in range(n)))


def dump_summary(summary: HomologySummary) -> str:
    return json.dumps(summary.to_json_dict(), sort_keys=True, indent=2) + "\n"


def load_summary(path) -> HomologySummary:
    with open(path, "r", encoding="utf-8") as fh:
        return HomologySummary.from_json_dict(json.load(fh))
