"""Words, presentations, and the group-theoretic side of the pipeline.

Generators are named strings; word letters are signed 1-based generator
indices, kept freely reduced.  Presentations carry a provenance tag per
relator (triangle, spread power at a height, or one of the tagged loop
families) plus an optional height window with an "extends to all heights"
flag, which is how an infinite family of spread relators is represented by a
finite artifact.

The coset enumerator is a deterministic relator-first filling procedure with
an explicit row budget; exhausting the budget is a result, never an error,
and a completed table always reports the true index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complex_core import SimplicialComplex, _require_valid, spanning_tree
from .homology import invariant_factors


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise ValueError("letter 0 is not allowed")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word in signed 1-based generator indices."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "letters", free_reduce(letters))

    def __setattr__(self, *args):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def cyclically_reduced(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0] == -ls[-1]:
            ls = ls[1:-1]
        return Word(ls)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"


@dataclass(frozen=True)
class RelatorTag:
    """Provenance of a relator: its family and, for spreads, height and loop index."""

    family: str  # "triangle" | "spread" | "alpha" | "beta" | "other"
    height: int | None = None
    index: int | None = None

    def to_json_dict(self) -> dict:
        return {"family": self.family, "height": self.height, "index": self.index}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "RelatorTag":
        return cls(data["family"], data.get("height"), data.get("index"))


TRIANGLE = RelatorTag("triangle")
OTHER = RelatorTag("other")


class Presentation:
    """Named generators with tagged, freely reduced relator words."""

    __slots__ = ("generators", "relators", "tags", "height_window", "extends_all_heights")

    def __init__(
        self,
        generators: Sequence[str],
        relators: Sequence[Word] = (),
        tags: Sequence[RelatorTag] | None = None,
        height_window: tuple[int, int] | None = None,
        extends_all_heights: bool = False,
    ):
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be unique")
        for g in gens:
            if not g or " " in g or g.endswith("'"):
                raise ValueError(f"bad generator name {g!r}")
        rels = tuple(relators)
        for w in rels:
            for x in w.letters:
                if abs(x) > len(gens):
                    raise ValueError(f"letter {x} out of range")
        self.generators = gens
        self.relators = rels
        self.tags = tuple(tags) if tags is not None else tuple(OTHER for _ in rels)
        if len(self.tags) != len(rels):
            raise ValueError("one tag per relator required")
        self.height_window = height_window
        self.extends_all_heights = bool(extends_all_heights)

    def exponent_matrix(self) -> list[list[int]]:
        out = []
        for w in self.relators:
            row = [0] * len(self.generators)
            for x in w.letters:
                row[abs(x) - 1] += 1 if x > 0 else -1
            out.append(row)
        return out

    def word_str(self, w: Word) -> str:
        parts = []
        for x in w.letters:
            name = self.generators[abs(x) - 1]
            parts.append(name if x > 0 else name + "'")
        return " ".join(parts)

    def parse_word(self, text: str) -> Word:
        letters = []
        for token in text.split():
            inv = token.endswith("'")
            name = token[:-1] if inv else token
            try:
                i = self.generators.index(name) + 1
            except ValueError:
                raise ValueError(f"unknown generator {name!r}") from None
            letters.append(-i if inv else i)
        return Word(letters)

    def to_text(self) -> str:
        lines = ["gen " + " ".join(self.generators)]
        for w in self.relators:
            lines.append("rel " + self.word_str(w))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        gens: list[str] = []
        rel_lines: list[str] = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(" ")
            if head == "gen":
                gens.extend(rest.split())
            elif head == "rel":
                rel_lines.append(rest)
            else:
                raise ValueError(f"unknown line {line!r}")
        pres = cls(gens)
        relators = [pres.parse_word(r) for r in rel_lines]
        return cls(gens, relators)

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [
                {"letters": list(w.letters), "tag": tag.to_json_dict()}
                for w, tag in zip(self.relators, self.tags)
            ],
            "height_window": list(self.height_window) if self.height_window else None,
            "extends_all_heights": self.extends_all_heights,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Presentation":
        relators = [Word(r["letters"]) for r in data.get("relators", [])]
        tags = [RelatorTag.from_json_dict(r.get("tag", {"family": "other"})) for r in data.get("relators", [])]
        window = data.get("height_window")
        return cls(
            data["generators"],
            relators,
            tags,
            tuple(window) if window else None,
            data.get("extends_all_heights", False),
        )

    def __repr__(self) -> str:
        return f"Presentation({len(self.generators)} generators, {len(self.relators)} relators)"


# ---------------------------------------------------------------------------
# Loops over the edge alphabet of a complex


def sorted_edges(L: SimplicialComplex) -> list[tuple[int, int]]:
    return L.simplices_of_dim(1)


def edge_generator_names(L: SimplicialComplex) -> list[str]:
    return [f"e{u}_{v}" for u, v in sorted_edges(L)]


class LoopWord:
    """A closed edge loop as a sequence of oriented edge letters.

    Letters are signed 1-based indices into a complex's sorted edge list;
    a negative letter traverses the edge against its sorted orientation.
    A loop may also carry the vertex path it came from.
    """

    __slots__ = ("letters", "vertices")

    def __init__(self, letters: Iterable[int], vertices: Sequence[int] | None = None):
        ls = tuple(int(x) for x in letters)
        if not ls:
            raise ValueError("a loop needs at least one edge")
        if any(x == 0 for x in ls):
            raise ValueError("letter 0 is not allowed")
        object.__setattr__(self, "letters", ls)
        object.__setattr__(self, "vertices", tuple(vertices) if vertices is not None else None)

    def __setattr__(self, *args):
        raise AttributeError("LoopWord is immutable")

    @property
    def length(self) -> int:
        return len(self.letters)

    @classmethod
    def from_vertices(cls, L: SimplicialComplex, path: Sequence[int]) -> "LoopWord":
        path = list(path)
        if len(path) < 2 or path[0] != path[-1]:
            raise ValueError("vertex path must be closed (first = last)")
        index = {e: i for i, e in enumerate(sorted_edges(L))}
        letters = []
        for u, w in zip(path, path[1:]):
            key = (min(u, w), max(u, w))
            if key not in index:
                raise ValueError(f"({u}, {w}) is not an edge of the complex")
            letters.append(index[key] + 1 if u < w else -(index[key] + 1))
        return cls(letters, path[:-1])

    def validate_in(self, L: SimplicialComplex) -> None:
        n = len(sorted_edges(L))
        for x in self.letters:
            if abs(x) > n:
                raise ValueError(f"edge letter {x} out of range for the complex")
        if self.vertices is not None:
            LoopWord.from_vertices(L, list(self.vertices) + [self.vertices[0]])

    def __eq__(self, other) -> bool:
        return isinstance(other, LoopWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"LoopWord({list(self.letters)})"


def power_spread(c: LoopWord, k: int) -> Word:
    """The word sending each oriented edge of the loop to its k-th power, in order."""
    if k < 0:
        raise ValueError("spread exponent must be nonnegative")
    letters: list[int] = []
    for x in c.letters:
        letters.extend([x] * k)
    return Word(letters)


def _signed_spread(c: LoopWord, n: int) -> Word:
    """Spread with height sign: negative heights invert each letter block in place."""
    if n >= 0:
        return power_spread(c, n)
    letters: list[int] = []
    for x in c.letters:
        letters.extend([-x] * (-n))
    return Word(letters)


# ---------------------------------------------------------------------------
# Presentation constructions


def raag_presentation(L: SimplicialComplex) -> Presentation:
    """One generator per vertex, one commutator per edge."""
    _require_valid(L)
    verts = sorted(L.vertices)
    pos = {v: i + 1 for i, v in enumerate(verts)}
    gens = [f"a{v}" for v in verts]
    relators = []
    for u, w in sorted_edges(L):
        a, b = pos[u], pos[w]
        relators.append(Word([a, b, -a, -b]))
    return Presentation(gens, relators, [RelatorTag("other")] * len(relators))


def _loop_in(L: SimplicialComplex, loop) -> LoopWord:
    if isinstance(loop, LoopWord):
        loop.validate_in(L)
        return loop
    return LoopWord.from_vertices(L, loop)


def deck_group_presentation(
    L: SimplicialComplex, spreads: Mapping[int, Sequence] | None = None
) -> Presentation:
    """Edge generators, two rotation relators per triangle, spread powers per height.

    For a triangle u < v < w the cyclic orientation gives the length-three
    relators e(u,v) e(v,w) e(u,w)' and e(u,w)' e(v,w) e(u,v).  Each loop at
    height n adds its n-th spread power; height 0 must be empty, since the
    construction keeps the base complex itself at height zero.
    """
    _require_valid(L)
    edges = sorted_edges(L)
    index = {e: i + 1 for i, e in enumerate(edges)}
    gens = edge_generator_names(L)
    relators: list[Word] = []
    tags: list[RelatorTag] = []
    for u, v, w in L.simplices_of_dim(2):
        e, f, g = index[(u, v)], index[(v, w)], -index[(u, w)]
        relators.append(Word([e, f, g]))
        tags.append(TRIANGLE)
        relators.append(Word([g, f, e]))
        tags.append(TRIANGLE)
    spreads = dict(spreads or {})
    if 0 in spreads and spreads[0]:
        raise ValueError("height 0 must carry no spread loops (the base sits there)")
    heights = sorted(h for h in spreads if spreads[h])
    for n in heights:
        for i, loop in enumerate(spreads[n]):
            lw = _loop_in(L, loop)
            relators.append(_signed_spread(lw, n))
            tags.append(RelatorTag("spread", n, i))
    window = (min(heights), max(heights)) if heights else None
    return Presentation(gens, relators, tags, window)


def tagged_family_presentation(
    L: SimplicialComplex,
    families: Mapping[str, Sequence],
    window: tuple[int, int],
) -> Presentation:
    """Triangle relators plus spread powers of named loop families over a height window.

    Every family member contributes its spread at every nonzero height in the
    window; tags record (family, height, loop index).  The result carries the
    window and the extends-to-all-heights flag.
    """
    _require_valid(L)
    lo, hi = window
    if lo > hi:
        raise ValueError("empty height window")
    base = deck_group_presentation(L, {})
    relators = list(base.relators)
    tags = list(base.tags)
    for family in sorted(families):
        loops = [_loop_in(L, lp) for lp in families[family]]
        for n in range(lo, hi + 1):
            if n == 0:
                continue
            for i, lw in enumerate(loops):
                relators.append(_signed_spread(lw, n))
                tags.append(RelatorTag(family, n, i))
    return Presentation(base.generators, relators, tags, window, extends_all_heights=True)


@dataclass(frozen=True)
class AbelianizationResult:
    free_rank: int
    factors: tuple[int, ...]  # invariant factors > 1, divisibility chain

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts.extend(f"Z/{d}" for d in self.factors)
        return " + ".join(parts) if parts else "0"


def abelianization(p: Presentation) -> AbelianizationResult:
    """Invariant factors and free rank of the relator exponent matrix."""
    matrix = p.exponent_matrix()
    if not matrix:
        return AbelianizationResult(len(p.generators), ())
    factors = invariant_factors(matrix)
    return AbelianizationResult(len(p.generators) - len(factors), tuple(d for d in factors if d > 1))


# ---------------------------------------------------------------------------
# Coset enumeration


class _BudgetExceeded(Exception):
    pass


class _CosetTable:
    def __init__(self, ngens: int, budget: int):
        self.width = 2 * ngens
        self.budget = budget
        self.table: list[list[int | None]] = [[None] * self.width]
        self.parent = [0]
        self.defined = 1
        self.dead = 0

    def rep(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def define(self, a: int, g: int) -> int:
        if self.defined >= self.budget:
            raise _BudgetExceeded
        b = len(self.table)
        self.table.append([None] * self.width)
        self.parent.append(b)
        self.defined += 1
        self.table[a][g] = b
        self.table[b][g ^ 1] = a
        return b

    def merge(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            x, y = self.rep(x), self.rep(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            self.dead += 1
            for g in range(self.width):
                yv = self.table[y][g]
                if yv is None:
                    continue
                xv = self.table[x][g]
                if xv is None:
                    self.table[x][g] = yv
                else:
                    queue.append((xv, yv))

    def lookup(self, a: int, g: int) -> int | None:
        v = self.table[self.rep(a)][g]
        return None if v is None else self.rep(v)

    def scan_and_fill(self, start: int, word: Sequence[int]) -> None:
        while True:
            f, i = self.rep(start), 0
            j = len(word)
            b = self.rep(start)
            while i < j:
                nxt = self.lookup(f, word[i])
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i == j:
                if f != b:
                    self.merge(f, b)
                return
            while j > i:
                prv = self.lookup(b, word[j - 1] ^ 1)
                if prv is None:
                    break
                b, j = prv, j - 1
            if j == i:
                self.merge(f, b)
                return
            if j == i + 1:
                x, y, g = self.rep(f), self.rep(b), word[i]
                self.table[x][g] = y
                if self.table[y][g ^ 1] is None:
                    self.table[y][g ^ 1] = x
                elif self.rep(self.table[y][g ^ 1]) != x:
                    self.merge(self.table[y][g ^ 1], x)
                return
            self.define(self.rep(f), word[i])


def _encode(word: Word) -> tuple[int, ...]:
    return tuple(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in word.letters)


def coset_enumerate(
    p: Presentation, subgroup_generators: Sequence[Word] = (), budget: int = 10_000
) -> int | None:
    """Index of the subgroup, or None when the row budget is exhausted.

    Relator-first filling with deterministic scan order; a completed table is
    a genuine coset table, so a returned index is always correct.
    """
    index, _ = coset_enumerate_detailed(p, subgroup_generators, budget)
    return index


def coset_enumerate_detailed(
    p: Presentation, subgroup_generators: Sequence[Word] = (), budget: int = 10_000
) -> tuple[int | None, int]:
    """Like coset_enumerate but also reports the number of rows ever defined."""
    table, defined = enumerate_table(p, subgroup_generators, budget)
    if table is None:
        return None, defined
    live = sum(1 for a in range(len(table.table)) if table.rep(a) == a)
    return live, defined


def enumerate_table(
    p: Presentation, subgroup_generators: Sequence[Word] = (), budget: int = 10_000
) -> tuple[_CosetTable | None, int]:
    """Run the enumeration and hand back the completed table, or None on budget.

    The completed table is the action on cosets; callers can trace words
    through it (see trace_word).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if not p.generators:
        T = _CosetTable(1, budget)
        T.table[0] = [0, 0]  # trivial group: the phantom generator acts trivially
        return T, 1
    relators = []
    seen = set()
    for w in p.relators:
        cw = w.cyclically_reduced()
        if cw.letters and cw.letters not in seen:
            seen.add(cw.letters)
            relators.append(_encode(cw))
    subs = [_encode(w) for w in subgroup_generators if w.letters]
    T = _CosetTable(len(p.generators), budget)
    try:
        for w in subs:
            T.scan_and_fill(0, w)
        idx = 0
        while idx < len(T.table):
            if T.rep(idx) != idx:
                idx += 1
                continue
            for w in relators:
                T.scan_and_fill(idx, w)
                if T.rep(idx) != idx:
                    break
            if T.rep(idx) != idx:
                idx += 1
                continue
            for g in range(T.width):
                if T.table[idx][g] is None:
                    T.define(idx, g)
            idx += 1
    except _BudgetExceeded:
        return None, T.defined
    return T, T.defined


def trace_word(table: _CosetTable, word: Word) -> int:
    """Image of the origin coset under a word, in a completed table."""
    cur = table.rep(0)
    for g in _encode(word):
        nxt = table.lookup(cur, g)
        if nxt is None:
            raise ValueError("incomplete table during trace")
        cur = nxt
    return cur


# ---------------------------------------------------------------------------
# Surjections and subpresentations


def quotient_relators(
    spreads: Mapping[int, Sequence], spreads_prime: Mapping[int, Sequence], L: SimplicialComplex
) -> list[tuple[Word, RelatorTag]]:
    """Spread relators present for the coarser assignment but not the finer one.

    Per height, the finer assignment's loop set must contain the coarser
    one's; the returned relators normally generate the kernel of the induced
    surjection between the presented groups.
    """
    out: list[tuple[Word, RelatorTag]] = []
    heights = sorted(set(spreads) | set(spreads_prime))
    for n in heights:
        small = [_loop_in(L, lp) for lp in spreads.get(n, [])]
        big = [_loop_in(L, lp) for lp in spreads_prime.get(n, [])]
        small_keys = {lw.letters for lw in small}
        big_keys = {lw.letters for lw in big}
        if not small_keys <= big_keys:
            raise ValueError(f"loop sets at height {n} are not nested")
        for i, lw in enumerate(big):
            if lw.letters not in small_keys:
                out.append((_signed_spread(lw, n), RelatorTag("spread", n, i)))
    return out


@dataclass(frozen=True)
class SubpresentationSelection:
    presentation: Presentation
    sigma: "object"  # SigmaSpec; typed loosely to keep module layering one-way
    retained_heights: frozenset[int]


def subpresentation_select(
    full: Presentation,
    T: Sequence[Word],
    registry: Mapping[str, "object"],
    base_id: str,
    cover_id: str,
) -> SubpresentationSelection:
    """Select the kernel-protecting subpresentation determined by a finite set T.

    Keeps T itself, every triangle relator, the complete first ("alpha") spread
    family, and the second ("beta") family exactly at the heights F where some
    member appears in T.  Also returns the height assignment this pins down:
    the designated cover everywhere off F, the base on F.
    """
    from .sigma import SigmaSpec, Tail  # local import: sigma sits above groups

    matched: set[int] = set()
    for t in T:
        hits = [i for i, w in enumerate(full.relators) if w == t]
        if not hits:
            raise ValueError(f"relator {t!r} is absent from the full presentation")
        matched.update(hits)
    heights_f = frozenset(
        full.tags[i].height for i in matched if full.tags[i].family == "beta" and full.tags[i].height is not None
    )
    keep = []
    for i, tag in enumerate(full.tags):
        if i in matched or tag.family in ("triangle", "alpha"):
            keep.append(i)
        elif tag.family == "beta" and tag.height in heights_f:
            keep.append(i)
    keep = sorted(set(keep))
    sub = Presentation(
        full.generators,
        [full.relators[i] for i in keep],
        [full.tags[i] for i in keep],
        full.height_window,
        full.extends_all_heights,
    )
    exceptions = {int(n): base_id for n in heights_f}
    if 0 not in heights_f:
        exceptions[0] = cover_id
    sigma = SigmaSpec(
        registry=registry,
        base_id=base_id,
        exceptions=exceptions,
        positive_tail=Tail.constant(cover_id),
        negative_tail=Tail.constant(cover_id),
    )
    return SubpresentationSelection(sub, sigma, heights_f)


# ---------------------------------------------------------------------------
# Edge-path words relative to a spanning tree


class SpanningTreeWords:
    """Fundamental-group bookkeeping for a connected complex.

    Non-tree edges of the canonical spanning tree are free generators; any
    closed edge path spells a word in them (tree edges contribute nothing),
    and triangle boundaries give the relators of the edge-path group.
    """

    def __init__(self, K: SimplicialComplex):
        _require_valid(K)
        self.complex = K
        self.tree = spanning_tree(K)
        self.nontree = [e for e in K.simplices_of_dim(1) if e not in self.tree]
        self._index = {e: i + 1 for i, e in enumerate(self.nontree)}
        self.generator_names = [f"t{u}_{v}" for u, v in self.nontree]

    def word_for_path(self, path: Sequence[int]) -> Word:
        letters = []
        for u, w in zip(path, path[1:]):
            key = (min(u, w), max(u, w))
            if not self.complex.has_simplex(key):
                raise ValueError(f"({u}, {w}) is not an edge")
            i = self._index.get(key)
            if i is not None:
                letters.append(i if u < w else -i)
        return Word(letters)

    def presentation(self) -> Presentation:
        relators = []
        seen = set()
        for u, v, w in self.complex.simplices_of_dim(2):
            word = self.word_for_path([u, v, w, u]).cyclically_reduced()
            if word.letters and word.letters not in seen:
                seen.add(word.letters)
                relators.append(word)
        return Presentation(self.generator_names, relators, [OTHER] * len(relators))


def presentation_to_json(p: Presentation) -> str:
    return json.dumps(p.to_json_dict(), sort_keys=True, indent=2) + "\n"


def presentation_from_json(path) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return Presentation.from_json_dict(json.load(fh))
