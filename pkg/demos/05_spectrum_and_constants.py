"""Taut loop length spectra and the quantities behind the separation argument.

Computes certified spectra for small graphs, compares them up to a scaling
factor, selects the growth constants exactly, and evaluates the kernel-length
bound.  Run directly:

    python3 demos/05_spectrum_and_constants.py
"""

import math

from fpforge import (
    SimplicialComplex,
    choose_constants,
    k_related,
    min_kernel_length_bound,
    separation_ratio_check,
    taut_spectrum,
)
from fpforge.sigma import (
    choose_constants as pick,
    example_registry,
    min_disagreement_height,
    sigma_power_tower,
)

print("=== Spectrum of a 5-cycle ===")
c5 = SimplicialComplex.from_facets([[i, (i + 1) % 5] for i in range(5)])
report = taut_spectrum(c5, 10, 100_000)
for l in sorted(report.statuses):
    status = report.statuses[l]
    print(f"  length {l:2d}: {status.status:7s}  certificate: {dict(status.certificate)}")
print("spectrum:", report.spectrum)

print()
print("=== Spectrum of two cycles sharing a vertex ===")
wedge = SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [4, 5], [0, 5]])
report = taut_spectrum(wedge, 10, 100_000)
print("spectrum:", report.spectrum)
print("a taut certificate:", dict(report.statuses[4].certificate))

print()
print("=== Comparing spectra up to a factor ===")
print("{10} vs {15} at factor 2:", k_related([10], [15], 2, ceiling=60))
print("{100} vs {} at factor 2:", k_related([100], [], 2, ceiling=200))

print()
print("=== Exact constant selection ===")
alpha = math.sqrt(2 / 3)
constants = choose_constants(2, [0, 8, 8, 8], 3)
print("constants for dimension 2 with loop bounds 8:", constants)
print("check: C*alpha over threshold?", [round(c * alpha, 3) for c in constants])
result = separation_ratio_check(constants, [0, 8, 8, 8], 2)
print("ratio check passes:", result.ok, " minimal separation bound:", result.min_ratio_bound)

print()
print("=== Kernel-length lower bound ===")
for M, d in ((7, 2), (16, 2), (5, 1)):
    print(f"  heights first differ at {M}, dimension {d}: bound {min_kernel_length_bound(M, d):.6f}")

print()
print("=== Sparse tower specifications and where they first differ ===")
registry = example_registry()
members = {p: f"Lp{p}" for p in (3, 5, 7)}
constants = pick(2, None, 4)
a = sigma_power_tower([1, 2], constants, registry, [3], member_ids=members)
b = sigma_power_tower([1], constants, registry, [3], member_ids=members)
print("tower heights:", sorted(a.power_rule.heights().values()))
print("first disagreement:", min_disagreement_height(a, b))
print("(equal specifications report inf:", min_disagreement_height(a, a), ")")
