"""Finite abstract simplicial complexes.

Complexes are stored as downward-closed sets of sorted vertex tuples over
integer vertex ids.  Everything here is purely combinatorial: no geometric
realization is ever built.  Values are immutable after construction and safe
to share between threads.

The module provides the predicates and constructions the rest of the package
leans on: flagness, links, barycentric subdivision, flag complexes realizing
a given finite presentation, and a local-cut-point test for complexes of
dimension at most two.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class ComplexError(ValueError):
    """Raised when an operation receives an invalid complex or simplex."""


def _normalize_simplex(simplex: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(v) for v in simplex)))


class SimplicialComplex:
    """A finite abstract simplicial complex on integer vertex ids.

    ``simplices`` holds every nonempty face as a strictly sorted tuple and is
    closed under taking nonempty subsets.  ``vertices`` is exactly the set of
    ids appearing in 0-simplices.  Use :meth:`from_facets` for checked
    construction; the raw constructor stores its arguments verbatim so that
    :func:`validate` can report broken invariants.
    """

    __slots__ = ("vertices", "simplices", "_cache")

    def __init__(self, vertices: Iterable[int], simplices: Iterable[Sequence[int]]):
        self.vertices = frozenset(vertices)
        self.simplices = frozenset(tuple(s) for s in simplices)
        self._cache: dict = {}

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "SimplicialComplex":
        """Build a complex from maximal faces, closing downward.

        Extra isolated ``vertices`` may be supplied; every vertex is stored as
        a 0-simplex.
        """
        simplices: set[tuple[int, ...]] = set()
        verts = set(int(v) for v in vertices)
        for facet in facets:
            f = _normalize_simplex(facet)
            if not f:
                raise ComplexError("empty facet")
            verts.update(f)
            for k in range(1, len(f) + 1):
                simplices.update(combinations(f, k))
        simplices.update((v,) for v in verts)
        return cls(verts, simplices)

    @property
    def dimension(self) -> int:
        """Max simplex cardinality minus one; -1 for the empty complex."""
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def simplices_of_dim(self, k: int) -> list[tuple[int, ...]]:
        key = ("dim", k)
        if key not in self._cache:
            self._cache[key] = sorted(s for s in self.simplices if len(s) == k + 1)
        return self._cache[key]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices_of_dim(k)) for k in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def has_simplex(self, simplex: Iterable[int]) -> bool:
        return _normalize_simplex(simplex) in self.simplices

    def edges(self) -> list[tuple[int, int]]:
        return self.simplices_of_dim(1)

    def adjacency(self) -> dict[int, set[int]]:
        if "adj" not in self._cache:
            adj: dict[int, set[int]] = {v: set() for v in self.vertices}
            for u, w in self.simplices_of_dim(1):
                adj[u].add(w)
                adj[w].add(u)
            self._cache["adj"] = adj
        return self._cache["adj"]

    def components(self) -> list[frozenset[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        out = []
        for v in sorted(self.vertices):
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def facets(self) -> list[tuple[int, ...]]:
        """Maximal simplices, sorted."""
        verts = sorted(self.vertices)
        out = []
        for s in self.simplices:
            sset = set(s)
            if any(tuple(sorted(sset | {v})) in self.simplices for v in verts if v not in sset):
                continue
            out.append(s)
        return sorted(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash((self.vertices, self.simplices))

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, f={self.f_vector()})"

    def to_json_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "facets": [list(f) for f in self.facets()],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SimplicialComplex":
        return cls.from_facets(data.get("facets", []), data.get("vertices", []))


def validate(complex: SimplicialComplex) -> list[str]:
    """Report every violated invariant; an empty report means the complex is valid."""
    report: list[str] = []
    for s in sorted(complex.simplices):
        if len(s) == 0:
            report.append("empty simplex stored")
            continue
        if list(s) != sorted(set(s)):
            report.append(f"ordering: simplex {list(s)} is not strictly sorted")
            continue
        for v in s:
            if v not in complex.vertices:
                report.append(f"vertex {v} of simplex {list(s)} missing from vertex set")
        if len(s) > 1:
            for face in combinations(s, len(s) - 1):
                if face not in complex.simplices:
                    report.append(f"missing face {list(face)} of simplex {list(s)}")
    for v in sorted(complex.vertices):
        if (v,) not in complex.simplices:
            report.append(f"vertex {v} has no 0-simplex")
    return report


def _require_valid(complex: SimplicialComplex) -> None:
    report = validate(complex)
    if report:
        raise ComplexError("invalid complex: " + "; ".join(report[:3]))


def is_flag(complex: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton spans a stored simplex."""
    _require_valid(complex)
    verts = sorted(complex.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    adj = {v: 0 for v in verts}
    for u, w in complex.simplices_of_dim(1):
        adj[u] |= 1 << pos[w]
        adj[w] |= 1 << pos[u]
    masks = set()
    for s in complex.simplices:
        m = 0
        for v in s:
            m |= 1 << pos[v]
        masks.add(m)
    # Every clique spans iff every stored simplex extends across each vertex
    # adjacent to all of it (induction on clique size, base = edges).
    for s in complex.simplices:
        if len(s) < 2:
            continue
        m = 0
        for v in s:
            m |= 1 << pos[v]
        for v in verts:
            b = 1 << pos[v]
            if m & b:
                continue
            if adj[v] & m == m and (m | b) not in masks:
                return False
    return True


def link(complex: SimplicialComplex, simplex: Iterable[int]) -> SimplicialComplex:
    """The link of ``simplex``: all faces disjoint from it whose union with it is a face."""
    s = _normalize_simplex(simplex)
    if s not in complex.simplices:
        raise ComplexError(f"simplex {list(s)} not in complex")
    sset = set(s)
    faces = []
    for t in complex.simplices:
        if sset.issubset(t) and len(t) > len(s):
            faces.append(tuple(v for v in t if v not in sset))
    verts = {v for f in faces for v in f}
    return SimplicialComplex(verts, faces)


def closed_star(complex: SimplicialComplex, vertex: int) -> frozenset[tuple[int, ...]]:
    """Simplices of the closed star of ``vertex`` (faces of its cofaces)."""
    if (vertex,) not in complex.simplices:
        raise ComplexError(f"vertex {vertex} not in complex")
    out = set()
    for t in complex.simplices:
        if tuple(sorted(set(t) | {vertex})) in complex.simplices:
            out.add(t)
    return frozenset(out)


def barycentric_subdivision(complex: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset: one vertex per simplex, faces are chains.

    The output is always a flag complex.  New vertex ids are assigned by
    sorting the input simplices by (dimension, lexicographic order).
    """
    _require_valid(complex)
    simps = sorted(complex.simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(simps)}
    chains_by_top: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    all_chains: list[tuple[int, ...]] = []
    for s in simps:
        own: list[tuple[int, ...]] = [(index[s],)]
        if len(s) > 1:
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    for c in chains_by_top[face]:
                        own.append(c + (index[s],))
        chains_by_top[s] = own
        all_chains.extend(own)
    return SimplicialComplex(range(len(simps)), all_chains)


def spanning_tree(complex: SimplicialComplex) -> set[tuple[int, int]]:
    """Edges of the breadth-first spanning tree of the 1-skeleton.

    Deterministic: the root is the smallest vertex and neighbors are visited
    in sorted order.  Raises on disconnected complexes.
    """
    if not complex.vertices:
        return set()
    if not complex.is_connected():
        raise ComplexError("complex is disconnected")
    adj = complex.adjacency()
    root = min(complex.vertices)
    tree: set[tuple[int, int]] = set()
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    tree.add((min(v, w), max(v, w)))
                    nxt.append(w)
        frontier = nxt
    return tree


def has_no_local_cut_points(complex: SimplicialComplex) -> bool:
    """Local-cut-point test for connected complexes of dimension <= 2.

    A vertex passes when its link is nonempty and connected; an edge passes
    when it lies in at least one triangle.  Removing a vertex from its open
    star retracts to the link, and a free edge's midpoint separates its
    neighborhood, so these are the right dimension-<=2 surrogates.
    """
    _require_valid(complex)
    if complex.dimension > 2:
        raise ComplexError("unsupported dimension: local cut point test covers dimension <= 2")
    if not complex.is_connected():
        raise ComplexError("complex is disconnected")
    for v in sorted(complex.vertices):
        lk = link(complex, (v,))
        if not lk.vertices or not lk.is_connected():
            return False
    for e in complex.simplices_of_dim(1):
        if not any(len(t) == 3 and set(e) <= set(t) for t in complex.simplices):
            return False
    return True


class GroupPresentationInput:
    """A finite presentation given by a generator count and relator words.

    Relator words are sequences of signed 1-based generator indices and must
    be freely reduced.
    """

    __slots__ = ("generator_count", "relators")

    def __init__(self, generator_count: int, relators: Iterable[Sequence[int]]):
        if generator_count < 0:
            raise ComplexError("generator count must be nonnegative")
        self.generator_count = int(generator_count)
        rels = []
        for word in relators:
            w = tuple(int(x) for x in word)
            for a, b in zip(w, w[1:]):
                if a == -b:
                    raise ComplexError(f"relator {list(w)} is not freely reduced")
            for x in w:
                if x == 0 or abs(x) > self.generator_count:
                    raise ComplexError(f"letter {x} out of range in relator {list(w)}")
            rels.append(w)
        self.relators = tuple(rels)


def flagify_presentation_complex(input: GroupPresentationInput) -> SimplicialComplex:
    """A finite flag complex whose fundamental group is the presented group.

    Construction: a wedge of 3-cycles (one per generator, so every loop is
    already simplicial), then for each nonempty relator a coned polygon joined
    to the relator's boundary path by a zigzag collar.  The collar is a
    triangulated mapping cylinder of the attaching map, so homotopy type is
    preserved even when the path revisits edges.  Two barycentric subdivisions
    make the result flag.
    """
    base = 0
    triangles: list[tuple[int, int, int]] = []
    edges: list[tuple[int, int]] = []
    for i in range(input.generator_count):
        m1, m2 = 2 * i + 1, 2 * i + 2
        edges.extend([(base, m1), (m1, m2), (base, m2)])
    fresh = 2 * input.generator_count + 1

    for word in input.relators:
        if not word:
            continue  # empty relator: attach no disk
        path = [base]
        for letter in word:
            i = abs(letter) - 1
            m1, m2 = 2 * i + 1, 2 * i + 2
            if letter > 0:
                path.extend([m1, m2, base])
            else:
                path.extend([m2, m1, base])
        n = len(path) - 1  # boundary length, a multiple of 3
        ring = list(range(fresh, fresh + n))
        center = fresh + n
        fresh += n + 1
        for j in range(n):
            q0, q1 = ring[j], ring[(j + 1) % n]
            triangles.append((center, q0, q1))
            triangles.append((q0, q1, path[j + 1]))
            triangles.append((q0, path[j], path[j + 1]))

    complex = SimplicialComplex.from_facets(list(edges) + list(triangles), vertices=[base])
    return barycentric_subdivision(barycentric_subdivision(complex))


def load_complex(path) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return SimplicialComplex.from_json_dict(json.load(fh))


def dump_complex(complex: SimplicialComplex) -> str:
    return json.dumps(complex.to_json_dict(), sort_keys=True, indent=2) + "\n"
