"""Presentations from complexes: edge generators, triangle relators, spreads.

Emits the edge presentation of the filled triangle, appends spread-power
relators at chosen heights, abelianizes, enumerates cosets, and runs the
kernel-protecting subpresentation recipe.  Run directly:

    python3 demos/03_presentations_and_spreads.py
"""

from fpforge import (
    LoopWord,
    SimplicialComplex,
    abelianization,
    coset_enumerate,
    deck_group_presentation,
    power_spread,
    quotient_relators,
    raag_presentation,
    subpresentation_select,
)
from fpforge.groups import tagged_family_presentation
from fpforge.sigma import example_registry

triangle = SimplicialComplex.from_facets([[0, 1, 2]])

print("=== Right-angled Artin presentation ===")
raag = raag_presentation(triangle)
print(raag.to_text())
print("abelianization:", abelianization(raag))

print("=== Edge presentation with triangle relators ===")
pres = deck_group_presentation(triangle, {})
print(pres.to_text())
print("abelianization:", abelianization(pres), "(the plane in disguise)")
print("coset enumeration with budget 10000:", coset_enumerate(pres, (), 10_000), "(exhausted: the group is infinite)")

print()
print("=== Spread powers ===")
loop = LoopWord.from_vertices(triangle, [0, 1, 2, 0])
for k in (1, 2, 3):
    print(f"loop to the power {k}:", power_spread(loop, k).letters)
spread_pres = deck_group_presentation(triangle, {2: [loop]})
print("with the loop spread at height 2:")
print(spread_pres.to_text())

print("=== Relators witnessing a quotient map ===")
extra = quotient_relators({}, {3: [loop]}, triangle)
for word, tag in extra:
    print("new relator at height", tag.height, ":", word.letters)

print()
print("=== Subpresentation selection ===")
K = SimplicialComplex.from_facets([[0, 1, 2], [1, 2, 3], [0, 2, 3], [0, 1, 3]])
alphas = [LoopWord.from_vertices(K, [0, 1, 2, 0])]
betas = [LoopWord.from_vertices(K, [0, 1, 3, 0]), LoopWord.from_vertices(K, [1, 2, 3, 1])]
full = tagged_family_presentation(K, {"alpha": alphas, "beta": betas}, (-3, 3))
print("full presentation:", len(full.relators), "relators over window", full.height_window)

registry = example_registry()
beta_at_2 = next(
    full.relators[i] for i, t in enumerate(full.tags) if t.family == "beta" and t.height == 2
)
selection = subpresentation_select(full, [beta_at_2], registry, "L", "Lsl")
print("retaining one second-family relator at height 2 keeps", len(selection.presentation.relators), "relators")
print("pinned heights:", sorted(selection.retained_heights))
print("induced assignment near zero:", {n: selection.sigma.value(n) for n in range(-2, 4)})
