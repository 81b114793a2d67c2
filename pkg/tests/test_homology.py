import json
import random

import pytest

from fpforge.complex_core import SimplicialComplex, barycentric_subdivision
from fpforge.homology import (
    HomologySummary,
    RingSpec,
    chain_complex,
    dump_summary,
    field_summary_from_integral,
    invariant_factors,
    reduced_homology,
    smith_normal_form,
    snf_diagonal,
)

from helpers import RP2_FACETS, determinant, field_betti_numbers, matmul, minor_gcd_invariants


def cycle_complex(n):
    return SimplicialComplex.from_facets([[i, (i + 1) % n] for i in range(n)])


def random_complex(rng, max_vertices=8):
    n = rng.randint(1, max_vertices)
    facets = [rng.sample(range(n), rng.randint(1, min(4, n))) for _ in range(rng.randint(1, 7))]
    return SimplicialComplex.from_facets(facets)


class TestRingSpec:
    def test_parse_and_keys(self):
        assert RingSpec.parse("Z").key == "Z"
        assert RingSpec.parse("Q").key == "Q"
        assert RingSpec.parse("F5") == RingSpec.Fp(5)

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            RingSpec.Fp(6)
        with pytest.raises(ValueError):
            RingSpec.parse("F9")


class TestChainComplex:
    def test_triangle_boundary_signs(self):
        cx = chain_complex(SimplicialComplex.from_facets([[0, 1, 2]]))
        dense = cx.boundary_dense(2)
        # edges sorted (0,1), (0,2), (1,2); faces of (0,1,2) get signs +,-,+
        assert [row[0] for row in dense] == [1, -1, 1]

    def test_composition_vanishes(self):
        rng = random.Random(5)
        for _ in range(20):
            chain_complex(random_complex(rng))  # raises if boundary squares nonzero

    def test_4_cycle_boundary_rank(self):
        cx = chain_complex(cycle_complex(4))
        dense = cx.boundary_dense(1)
        assert len(invariant_factors(dense)) == 3


class TestSmithNormalForm:
    def test_diag_2_3_becomes_1_6(self):
        D, U, V = smith_normal_form([[2, 0], [0, 3]])
        assert snf_diagonal(D) == [1, 6]

    def test_zero_matrix(self):
        D, U, V = smith_normal_form([[0, 0], [0, 0]])
        assert snf_diagonal(D) == [0, 0]
        assert U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]

    def test_single_entry(self):
        D, _, _ = smith_normal_form([[2]])
        assert snf_diagonal(D) == [2]

    def test_fuzz_reconstruction_divisibility_unimodularity(self):
        rng = random.Random(42)
        for trial in range(100):
            m = rng.randint(1, 6)
            n = rng.randint(1, 6)
            A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            D, U, V = smith_normal_form(A)
            assert matmul(matmul(U, A), V) == D
            diag = snf_diagonal(D)
            assert all(d >= 0 for d in diag)
            for a, b in zip(diag, diag[1:]):
                assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
            assert abs(determinant(U)) == 1
            assert abs(determinant(V)) == 1
            assert [d for d in diag if d] == minor_gcd_invariants(A)


class TestReducedHomology:
    def test_subdivided_projective_plane(self):
        K = barycentric_subdivision(SimplicialComplex.from_facets(RP2_FACETS))
        z = reduced_homology(K, RingSpec.Z())
        assert z.rank(1) == 0 and z.torsion_in(1) == (2,)
        assert z.rank(2) == 0 and z.torsion_in(2) == ()
        q = reduced_homology(K, RingSpec.Q())
        assert q.ranks == (0, 0, 0)
        f2 = reduced_homology(K, RingSpec.Fp(2))
        assert f2.rank(1) == 1 and f2.rank(2) == 1

    def test_4_cycle(self):
        summary = reduced_homology(cycle_complex(4), RingSpec.Z())
        assert summary.rank(0) == 0 and summary.rank(1) == 1 and summary.torsion_in(1) == ()

    def test_cone_is_acyclic_over_every_ring(self):
        cone = SimplicialComplex.from_facets([[0, 1, 2], [0, 2, 3], [0, 1, 3]])
        for ring in (RingSpec.Z(), RingSpec.Q(), RingSpec.Fp(2), RingSpec.Fp(7)):
            summary = reduced_homology(cone, ring)
            assert all(summary.is_trivial_in(i) for i in range(summary.max_degree + 1))

    def test_disconnected_counts_components(self):
        K = SimplicialComplex.from_facets([[0, 1], [2, 3], [4]])
        assert reduced_homology(K, RingSpec.Z()).rank(0) == 2

    def test_field_ranks_match_row_reduction_oracle(self):
        rng = random.Random(17)
        for _ in range(25):
            K = random_complex(rng)
            for p in (None, 2, 3, 5):
                ring = RingSpec.Q() if p is None else RingSpec.Fp(p)
                assert list(reduced_homology(K, ring).ranks) == field_betti_numbers(K, p)

    def test_universal_coefficients_against_direct_computation(self):
        rng = random.Random(23)
        for _ in range(15):
            K = random_complex(rng)
            z = reduced_homology(K, RingSpec.Z())
            for p in (2, 3, 5):
                derived = field_summary_from_integral(z, RingSpec.Fp(p))
                direct = reduced_homology(K, RingSpec.Fp(p))
                assert derived == direct
            assert field_summary_from_integral(z, RingSpec.Q()) == reduced_homology(K, RingSpec.Q())


class TestSummaryJson:
    def test_round_trip(self):
        K = barycentric_subdivision(SimplicialComplex.from_facets(RP2_FACETS))
        summary = reduced_homology(K, RingSpec.Z())
        text = dump_summary(summary)
        again = HomologySummary.from_json_dict(json.loads(text))
        assert again == summary
        assert dump_summary(again) == text

    def test_field_summary_carries_no_torsion(self):
        with pytest.raises(ValueError):
            HomologySummary(RingSpec.Q(), (0, 1), ((), (2,)))
