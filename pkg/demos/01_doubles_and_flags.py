"""Flag complexes and spherical doubles.

Builds a few small complexes, checks flagness, doubles them, and shows how
barycentric subdivision repairs non-flag complexes.  Run directly:

    python3 demos/01_doubles_and_flags.py
"""

from fpforge import (
    SimplicialComplex,
    barycentric_subdivision,
    is_flag,
    link,
    spherical_double,
)

print("=== A hollow triangle is the smallest non-flag complex ===")
hollow = SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2]])
print("f-vector:", hollow.f_vector(), " flag?", is_flag(hollow))

full = SimplicialComplex.from_facets([[0, 1, 2]])
print("filled triangle f-vector:", full.f_vector(), " flag?", is_flag(full))

print()
print("=== Doubling replaces each simplex by a sphere ===")
print("double of a point:", spherical_double(SimplicialComplex.from_facets([[0]])).complex.f_vector())
print("double of an edge:", spherical_double(SimplicialComplex.from_facets([[0, 1]])).complex.f_vector(), "(a 4-cycle)")
octa = spherical_double(full).complex
print("double of the filled triangle:", octa.f_vector(), "(the octahedron)")

print()
print("=== The double is flag exactly when the base is ===")
for name, K in [("hollow triangle", hollow), ("filled triangle", full)]:
    doubled = spherical_double(K).complex
    print(f"{name}: base flag={is_flag(K)}, double flag={is_flag(doubled)}")

print()
print("=== Links in the octahedron ===")
v = min(octa.vertices)
lk = link(octa, (v,))
print(f"link of vertex {v}:", lk.f_vector(), "(a 4-cycle)")

print()
print("=== Barycentric subdivision always produces a flag complex ===")
sd = barycentric_subdivision(hollow)
print("subdivided hollow triangle:", sd.f_vector(), " flag?", is_flag(sd))
print("Euler characteristic preserved:", sd.euler_characteristic() == hollow.euler_characteristic())
