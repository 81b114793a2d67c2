"""Finite covers of simplicial complexes from permutation voltages.

A voltage assignment labels each directed edge of a connected base complex
with a permutation of the sheets {0..d-1}, inverse on reversed edges and
identity on a spanning tree.  The triangle condition (the product around
each 2-simplex is the identity) makes simplex lifting consistent, so the
total space is again a simplicial complex and the projection is a covering
map of degree d.

Covers built this way are exactly the ones induced by homomorphisms from the
fundamental group of the base to a symmetric group; connectivity of the
total space is equivalent to transitivity of the voltage image and is not
assumed.  Pullback covers (of the spherical double) carry no voltage data of
their own; sheet tracing falls back to the covering property.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .complex_core import (
    SimplicialComplex,
    _require_valid,
    closed_star,
    spanning_tree,
)
from .spherical_double import spherical_double


class CoverError(ValueError):
    """Raised for inconsistent voltage data or broken covering structure."""


def perm_identity(d: int) -> tuple[int, ...]:
    return tuple(range(d))


def perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply p first, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _check_perm(p: Sequence[int], d: int) -> tuple[int, ...]:
    t = tuple(int(x) for x in p)
    if sorted(t) != list(range(d)):
        raise CoverError(f"{list(p)} is not a permutation of 0..{d - 1}")
    return t


class VoltageAssignment:
    """Permutation voltages on the directed edges of a connected base complex.

    ``voltages`` gives non-tree edges only (either direction); tree edges and
    unlisted edges carry the identity.  The spanning tree defaults to the
    canonical breadth-first tree of the base.
    """

    __slots__ = ("base", "degree", "spanning_tree", "voltage")

    def __init__(
        self,
        base: SimplicialComplex,
        degree: int,
        voltages: Mapping[tuple[int, int], Sequence[int]] | None = None,
        tree: Iterable[tuple[int, int]] | None = None,
    ):
        _require_valid(base)
        if not base.is_connected() or not base.vertices:
            raise CoverError("voltage base must be connected and nonempty")
        if degree < 1:
            raise CoverError("cover degree must be positive")
        self.base = base
        self.degree = int(degree)
        if tree is None:
            self.spanning_tree = frozenset(spanning_tree(base))
        else:
            tree_edges = frozenset((min(u, v), max(u, v)) for u, v in tree)
            if not tree_edges <= set(base.edges()):
                raise CoverError("spanning tree contains non-edges")
            if len(tree_edges) != len(base.vertices) - 1:
                raise CoverError("spanning tree has wrong edge count")
            probe = SimplicialComplex.from_facets(list(tree_edges), base.vertices)
            if not probe.is_connected():
                raise CoverError("spanning tree is not spanning")
            self.spanning_tree = tree_edges

        full: dict[tuple[int, int], tuple[int, ...]] = {}
        ident = perm_identity(self.degree)
        edge_set = set(base.edges())
        for u, v in edge_set:
            full[(u, v)] = ident
            full[(v, u)] = ident
        explicit: set[tuple[int, int]] = set()
        for (u, v), perm in (voltages or {}).items():
            key = (min(u, v), max(u, v))
            if key not in edge_set:
                raise CoverError(f"voltage on non-edge {key}")
            p = _check_perm(perm, self.degree)
            if key in self.spanning_tree and p != ident:
                raise CoverError(f"tree edge {key} must carry the identity")
            if key in explicit and full[(u, v)] != p:
                raise CoverError(f"conflicting voltages on edge {key}")
            explicit.add(key)
            full[(u, v)] = p
            full[(v, u)] = perm_inverse(p)
        self.voltage = full

        for tri in base.simplices_of_dim(2):
            u, v, w = tri
            around = perm_compose(perm_compose(full[(u, v)], full[(v, w)]), full[(w, u)])
            if around != ident:
                raise CoverError(f"triangle condition fails on {tri}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, VoltageAssignment):
            return NotImplemented
        return (
            self.base == other.base
            and self.degree == other.degree
            and self.voltage == other.voltage
        )

    def __hash__(self) -> int:
        return hash((self.base, self.degree, tuple(sorted(self.voltage.items()))))

    def nontree_voltages(self) -> dict[tuple[int, int], tuple[int, ...]]:
        ident = perm_identity(self.degree)
        out = {}
        for u, v in self.base.edges():
            if (u, v) not in self.spanning_tree and self.voltage[(u, v)] != ident:
                out[(u, v)] = self.voltage[(u, v)]
        return out

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.to_json_dict(),
            "degree": self.degree,
            "voltages": [
                {"edge": [u, v], "perm": [s + 1 for s in perm]}
                for (u, v), perm in sorted(self.nontree_voltages().items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "VoltageAssignment":
        base = SimplicialComplex.from_json_dict(data["base"])
        voltages = {}
        for item in data.get("voltages", []):
            u, v = item["edge"]
            voltages[(u, v)] = tuple(s - 1 for s in item["perm"])
        return cls(base, data["degree"], voltages)


class CoverComplex:
    """A realized cover: total space, projection, sheet labels, and provenance.

    Total-space vertices are integers; ``projection`` and ``sheet`` map them
    to the base vertex and sheet index they lie over.  ``assignment`` is the
    originating voltage data when the cover was built from voltages, and None
    for pullbacks or hand-made covers.
    """

    __slots__ = ("total", "base", "projection", "sheet", "assignment", "_cache")

    def __init__(
        self,
        total: SimplicialComplex,
        base: SimplicialComplex,
        projection: Mapping[int, int],
        sheet: Mapping[int, int],
        assignment: VoltageAssignment | None = None,
    ):
        self.total = total
        self.base = base
        self.projection = dict(projection)
        self.sheet = dict(sheet)
        self.assignment = assignment
        self._cache: dict = {}
        missing = [t for t in total.vertices if t not in self.projection]
        if missing:
            raise CoverError(f"projection undefined on vertices {sorted(missing)[:3]}")

    @property
    def degree(self) -> int:
        if self.assignment is not None:
            return self.assignment.degree
        fibers = self.fibers()
        sizes = {len(f) for f in fibers.values()}
        if len(sizes) != 1:
            raise CoverError("fibers have unequal sizes; no well-defined degree")
        return sizes.pop()

    def fibers(self) -> dict[int, dict[int, int]]:
        """Base vertex -> {sheet: total vertex}."""
        if "fibers" not in self._cache:
            fibers: dict[int, dict[int, int]] = {v: {} for v in self.base.vertices}
            for t in self.total.vertices:
                fibers[self.projection[t]][self.sheet[t]] = t
            self._cache["fibers"] = fibers
        return self._cache["fibers"]

    def __repr__(self) -> str:
        return f"CoverComplex(f={self.total.f_vector()} over f={self.base.f_vector()})"


def build_cover(v: VoltageAssignment) -> CoverComplex:
    """Realize the total space of a voltage assignment.

    A simplex lifts once per sheet: anchored at its least vertex, the other
    vertices ride the anchor's voltages.  The triangle condition makes the
    lift independent of the anchor.
    """
    base = v.base
    d = v.degree
    order = {b: i for i, b in enumerate(sorted(base.vertices))}

    def tid(b: int, s: int) -> int:
        return order[b] * d + s

    simplices = set()
    for simplex in base.simplices:
        anchor = simplex[0]
        for s in range(d):
            lifted = tuple(
                sorted(tid(b, v.voltage[(anchor, b)][s] if b != anchor else s) for b in simplex)
            )
            simplices.add(lifted)
    vertices = {tid(b, s) for b in base.vertices for s in range(d)}
    total = SimplicialComplex(vertices, simplices)
    projection = {}
    sheet = {}
    for b in base.vertices:
        for s in range(d):
            projection[tid(b, s)] = b
            sheet[tid(b, s)] = s
    return CoverComplex(total, base, projection, sheet, v)


def verify_covering(c: CoverComplex) -> bool:
    """Check the star condition: the projection restricts to an isomorphism
    from each closed star onto the closed star of the image vertex."""
    if not c.total.vertices:
        return False
    if set(c.projection.values()) != set(c.base.vertices):
        return False
    base_stars = {v: closed_star(c.base, v) for v in c.base.vertices}
    for t in c.total.vertices:
        st_t = closed_star(c.total, t)
        st_v = base_stars[c.projection[t]]
        if len(st_t) != len(st_v):
            return False
        image = set()
        for s in st_t:
            proj = tuple(sorted({c.projection[x] for x in s}))
            if len(proj) != len(s):
                return False
            image.add(proj)
        if image != st_v:
            return False
    return True


def double_of_cover(L: SimplicialComplex, c: CoverComplex) -> CoverComplex:
    """Pull a cover of L back along the retraction of the spherical double.

    The pullback of the double of L along the cover is the double of the
    cover's total space, projecting sign-compatibly; the degree is preserved.
    """
    if c.base != L:
        raise CoverError("cover does not lie over the given complex")
    doubled_base = spherical_double(L)
    doubled_total = spherical_double(c.total)
    projection = {}
    sheet = {}
    for t in doubled_total.complex.vertices:
        sign = t % 2
        upstairs = (t - sign) // 2
        projection[t] = 2 * c.projection[upstairs] + sign
        sheet[t] = c.sheet[upstairs]
    return CoverComplex(doubled_total.complex, doubled_base.complex, projection, sheet, None)


def _total_adjacency(c: CoverComplex) -> dict[int, dict[int, int]]:
    """total vertex -> {base neighbor: total neighbor} (valid under the star condition)."""
    if "step" not in c._cache:
        step: dict[int, dict[int, int]] = {t: {} for t in c.total.vertices}
        for u, w in c.total.edges():
            step[u][c.projection[w]] = w
            step[w][c.projection[u]] = u
        c._cache["step"] = step
    return c._cache["step"]


def lift_loop(c: CoverComplex, loop: Sequence[int], start_sheet: int) -> tuple[bool, int]:
    """Trace a based loop of the base through the cover from a start sheet.

    Returns (closed, end_sheet).  The end sheet equals the image of the start
    sheet under the product of edge voltages along the loop.
    """
    loop = list(loop)
    if len(loop) < 1 or loop[0] != loop[-1]:
        raise CoverError("loop must be a closed vertex path (first = last)")
    for u, w in zip(loop, loop[1:]):
        if not c.base.has_simplex((u, w)):
            raise CoverError(f"({u}, {w}) is not an edge of the base")
    fibers = c.fibers()
    if start_sheet not in fibers[loop[0]]:
        raise CoverError(f"sheet {start_sheet} out of range over vertex {loop[0]}")
    step = _total_adjacency(c)
    t = fibers[loop[0]][start_sheet]
    for w in loop[1:]:
        t = step[t].get(w)
        if t is None:
            raise CoverError("lift broke: not a covering complex")
    end = c.sheet[t]
    return end == start_sheet, end


def is_connected_cover(c: CoverComplex) -> bool:
    return c.total.is_connected()


def _voltage_group(v: VoltageAssignment) -> list[tuple[int, ...]]:
    """Closure of the non-tree voltages inside the symmetric group on sheets."""
    gens = sorted(set(v.nontree_voltages().values()))
    seen = {perm_identity(v.degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = perm_compose(g, h)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return sorted(seen)


def deck_group(c: CoverComplex) -> tuple[bool, list[tuple[int, ...]] | None]:
    """Whether the cover is regular, and its deck group when it is.

    For voltage-built covers the image group of the voltages acts on sheets;
    the cover is regular exactly when that action is regular, and the deck
    group is then isomorphic to the image group.  Covers without voltage data
    are analyzed by extending each fiber point over the basepoint to a
    projection-commuting automorphism (unique lifting).
    """
    if not is_connected_cover(c):
        raise CoverError("deck group requires a connected cover")
    if c.assignment is not None:
        group = _voltage_group(c.assignment)
        d = c.assignment.degree
        orbit = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for g in group:
                    if g[s] not in orbit:
                        orbit.add(g[s])
                        nxt.append(g[s])
            frontier = nxt
        if len(orbit) != d:
            raise CoverError("voltage group is not transitive despite connectivity")
        regular = len(group) == d
        return (True, group) if regular else (False, None)

    transforms = _deck_transformations(c)
    regular = len(transforms) == c.degree
    if not regular:
        return False, None
    base_vertex = min(c.base.vertices)
    fiber = c.fibers()[base_vertex]
    perms = []
    for f in transforms:
        perms.append(tuple(c.sheet[f[fiber[s]]] for s in range(len(fiber))))
    return True, sorted(perms)


def _deck_transformations(c: CoverComplex) -> list[dict[int, int]]:
    step = _total_adjacency(c)
    t0 = min(c.total.vertices)
    fiber = sorted(t for t in c.total.vertices if c.projection[t] == c.projection[t0])
    found = []
    for target in fiber:
        f = {t0: target}
        stack = [t0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for w, y in step[x].items():
                img = step[f[x]].get(w)
                if img is None:
                    ok = False
                    break
                if y in f:
                    if f[y] != img:
                        ok = False
                        break
                else:
                    f[y] = img
                    stack.append(y)
        if not ok or len(f) != len(c.total.vertices):
            continue
        if len(set(f.values())) != len(f):
            continue
        if all(tuple(sorted(f[x] for x in s)) in c.total.simplices for s in c.total.simplices):
            found.append(f)
    return found


def normal_generators(c: CoverComplex) -> list[list[int]]:
    """Base loops whose lifts generate the fundamental group of the total space.

    One loop per non-tree edge of a spanning tree of the total space: up the
    tree, across the edge, back down, then projected to the base.  The result
    normally generates the image subgroup of the projection.
    """
    if not is_connected_cover(c):
        raise CoverError("normal generators require a connected cover")
    tree = spanning_tree(c.total)
    adj = c.total.adjacency()
    root = min(c.total.vertices)
    parent: dict[int, int | None] = {root: None}
    order = [root]
    frontier = [root]
    tree_set = tree
    while frontier:
        nxt = []
        for x in frontier:
            for y in sorted(adj[x]):
                e = (min(x, y), max(x, y))
                if e in tree_set and y not in parent:
                    parent[y] = x
                    order.append(y)
                    nxt.append(y)
        frontier = nxt

    def path_to_root(x: int) -> list[int]:
        path = [x]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    loops = []
    for u, w in c.total.edges():
        if (u, w) in tree_set:
            continue
        up = path_to_root(u)[::-1]  # root .. u
        down = path_to_root(w)  # w .. root
        total_loop = up + down
        loops.append([c.projection[x] for x in total_loop])
    loops.sort(key=lambda p: (len(p), p))
    return loops


def double_cover_voltages(base: SimplicialComplex) -> list[VoltageAssignment]:
    """All connected double covers of the base, as voltage assignments.

    Solves, over GF(2), for assignments of sheet swaps to non-tree edges whose
    product around every triangle is trivial; each nonzero solution gives a
    connected degree-2 cover.  For a closed non-orientable surface with
    2-torsion first homology of rank one, the unique solution is the
    orientation double cover.
    """
    _require_valid(base)
    tree = spanning_tree(base)
    nontree = [e for e in base.edges() if e not in tree]
    index = {e: i for i, e in enumerate(nontree)}
    rows = []
    for tri in base.simplices_of_dim(2):
        u, v, w = tri
        mask = 0
        for e in ((u, v), (v, w), (u, w)):
            if e in index:
                mask ^= 1 << index[e]
        rows.append(mask)
    # GF(2) row reduction to a basis of the solution space.
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                break
    free_bits = [i for i in range(len(nontree)) if i not in pivots]
    solutions = []
    for combo in range(1, 1 << len(free_bits)):
        x = 0
        for j, bit in enumerate(free_bits):
            if combo >> j & 1:
                x |= 1 << bit
        for lead in sorted(pivots):
            row = pivots[lead]
            # back-substitute: parity of the non-lead support decides the lead bit
            if bin(row & x & ~(1 << lead)).count("1") % 2:
                x |= 1 << lead
        solutions.append(x)
    swap = (1, 0)
    out = []
    for x in sorted(set(solutions)):
        if x == 0:
            continue
        voltages = {e: swap for e, i in index.items() if x >> i & 1}
        out.append(VoltageAssignment(base, 2, voltages))
    return out


def dump_voltage(v: VoltageAssignment) -> str:
    return json.dumps(v.to_json_dict(), sort_keys=True, indent=2) + "\n"


def load_voltage(path) -> VoltageAssignment:
    with open(path, "r", encoding="utf-8") as fh:
        return VoltageAssignment.from_json_dict(json.load(fh))
