"""Spherical doubles of simplicial complexes.

The double of a complex replaces each m-simplex by the (m+1)-fold join of
0-spheres over its vertices: every vertex i splits into a plus copy and a
minus copy, and a simplex contributes all of its sign-decorated variants.
Collapsing signs gives a simplicial retraction back onto the base.

Sign encoding: the plus copy of vertex i has id 2*i, the minus copy 2*i+1.
This keeps doubled complexes inside the ordinary integer-vertex JSON format;
the retraction is implicit in the encoding.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .complex_core import ComplexError, SimplicialComplex, _require_valid


def plus_vertex(base_vertex: int) -> int:
    return 2 * base_vertex


def minus_vertex(base_vertex: int) -> int:
    return 2 * base_vertex + 1


def base_vertex(doubled_vertex: int) -> int:
    return (doubled_vertex - (doubled_vertex % 2)) // 2


class DoubledComplex:
    """A spherical double together with its base and the sign-collapsing retraction."""

    __slots__ = ("complex", "base")

    def __init__(self, complex: SimplicialComplex, base: SimplicialComplex):
        self.complex = complex
        self.base = base

    def retraction(self, vertex: int) -> int:
        if (vertex,) not in self.complex.simplices:
            raise ComplexError(f"vertex {vertex} not in doubled complex")
        return base_vertex(vertex)

    def __repr__(self) -> str:
        return f"DoubledComplex(f={self.complex.f_vector()} over f={self.base.f_vector()})"


def spherical_double(L: SimplicialComplex) -> DoubledComplex:
    """Double every simplex of L into a join of 0-spheres.

    Each m-simplex contributes 2^(m+1) sign-decorated m-simplices; the two
    copies of a vertex are never adjacent.
    """
    _require_valid(L)
    simplices: set[tuple[int, ...]] = set()
    for s in L.simplices:
        for signs in product((0, 1), repeat=len(s)):
            simplices.add(tuple(sorted(2 * v + sg for v, sg in zip(s, signs))))
    vertices = set()
    for v in L.vertices:
        vertices.add(plus_vertex(v))
        vertices.add(minus_vertex(v))
    return DoubledComplex(SimplicialComplex(vertices, simplices), L)


def retract_word(d: DoubledComplex, path: Sequence[int]) -> list[int]:
    """Image of an edge path of the double under the retraction.

    Degenerate edges cannot occur: the plus and minus copies of a vertex are
    never joined by an edge of the double.
    """
    path = list(path)
    for v in path:
        if (v,) not in d.complex.simplices:
            raise ComplexError(f"vertex {v} not in doubled complex")
    for u, w in zip(path, path[1:]):
        if not d.complex.has_simplex((u, w)):
            raise ComplexError(f"({u}, {w}) is not an edge of the doubled complex")
    return [base_vertex(v) for v in path]
