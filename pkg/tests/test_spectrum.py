import json
import random

import pytest

from fpforge.complex_core import ComplexError, SimplicialComplex
from fpforge.spectrum import (
    CeilingError,
    TautSpectrumReport,
    dump_graph,
    enumerate_cycles,
    k_related,
    load_graph,
    separation_ratio_check,
    taut_spectrum,
)
from fpforge.sigma import choose_constants


def cycle_graph(n):
    return SimplicialComplex.from_facets([[i, (i + 1) % n] for i in range(n)])


def wedge_graph():
    # 3-cycle 0-1-2 and 4-cycle 0-3-4-5 sharing vertex 0
    return SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [4, 5], [0, 5]])


class TestEnumerateCycles:
    def test_c5_has_one_cycle_class_per_multiple_of_5(self):
        cycles = enumerate_cycles(cycle_graph(5), 10)
        assert set(cycles) == {5, 10}
        assert len(cycles[5]) == 1
        # the once-around loop traversed twice, still cyclically reduced
        assert len(cycles[10]) == 1

    def test_tree_has_no_cycles(self):
        tree = SimplicialComplex.from_facets([[0, 1], [1, 2], [2, 3]])
        assert enumerate_cycles(tree, 8) == {}

    def test_wedge_lengths(self):
        cycles = enumerate_cycles(wedge_graph(), 8)
        assert 3 in cycles and 4 in cycles
        assert 5 not in cycles  # 3x + 4y = 5 has no solution
        assert 6 in cycles  # the triangle twice
        assert 7 in cycles  # triangle then square


class TestTautSpectrum:
    def test_c5_spectrum(self):
        report = taut_spectrum(cycle_graph(5), 10, 100_000)
        assert report.spectrum == [5]
        assert report.statuses[5].status == "taut"
        for l in range(1, 11):
            if l != 5:
                assert report.statuses[l].status == "filled"

    def test_cycle_graphs_have_singleton_spectra(self):
        for n in (3, 4, 6, 7):
            report = taut_spectrum(cycle_graph(n), n + 2, 50_000)
            assert report.spectrum == [n]

    def test_tree_spectrum_empty(self):
        tree = SimplicialComplex.from_facets([[0, 1], [1, 2]])
        report = taut_spectrum(tree, 8, 1000)
        assert report.spectrum == []
        assert all(st.status == "filled" for st in report.statuses.values())

    def test_wedge_spectrum_3_4(self):
        report = taut_spectrum(wedge_graph(), 10, 100_000)
        assert report.spectrum == [3, 4]
        assert report.statuses[3].status == "taut"
        assert report.statuses[4].status == "taut"
        for l in (5, 6, 7, 8, 9, 10):
            assert report.statuses[l].status == "filled"

    def test_certified_statuses_stable_under_budget_increase(self):
        small = taut_spectrum(wedge_graph(), 8, 400)
        big = taut_spectrum(wedge_graph(), 8, 200_000)
        for l, status in small.statuses.items():
            if status.status != "unknown":
                assert big.statuses[l].status == status.status

    def test_taut_certificates_verify_independently(self):
        """Re-check each taut certificate by hand: cyclic quotients must kill
        every relator and keep the candidate's residue nonzero."""
        report = taut_spectrum(wedge_graph(), 10, 100_000)
        from fpforge.groups import SpanningTreeWords, Word

        graph = wedge_graph()
        words = SpanningTreeWords(graph)
        cycles = enumerate_cycles(graph, 10)
        for l, status in report.statuses.items():
            if status.status != "taut":
                continue
            cert = dict(status.certificate)
            if cert["method"] != "cyclic-quotient":
                continue
            loop = status.loop
            candidate = words.word_for_path(list(loop) + [loop[0]])
            relators = [
                words.word_for_path(list(w) + [w[0]])
                for ln in cycles
                if ln < l
                for w in cycles[ln]
            ]
            ngens = len(words.generator_names)
            from fpforge.homology import smith_normal_form

            rows = []
            for w in relators:
                row = [0] * ngens
                for x in w.letters:
                    row[abs(x) - 1] += 1 if x > 0 else -1
                rows.append(row)
            vec = [0] * ngens
            for x in candidate.letters:
                vec[abs(x) - 1] += 1 if x > 0 else -1
            if rows:
                _, _, V = smith_normal_form(rows)
            else:
                V = [[1 if i == j else 0 for j in range(ngens)] for i in range(ngens)]
            j, modulus = cert["coordinate"], cert["modulus"]
            image = sum(vec[i] * V[i][j] for i in range(ngens)) % modulus
            assert image == cert["residue"] != 0
            for row in rows:
                assert sum(row[i] * V[i][j] for i in range(ngens)) % modulus == 0

    def test_budget_exhaustion_reports_unknown(self):
        # two generators, no relators below l: quotient infinite, derivation
        # search cannot fill an essential loop, tiny budget blocks everything
        report = taut_spectrum(wedge_graph(), 7, 12)
        assert all(st.status in ("taut", "filled", "unknown") for st in report.statuses.values())

    def test_disconnected_rejected(self):
        graph = SimplicialComplex.from_facets([[0, 1], [2, 3]])
        with pytest.raises(ComplexError):
            taut_spectrum(graph, 5, 100)

    def test_two_dimensional_input_rejected(self):
        with pytest.raises(ComplexError):
            taut_spectrum(SimplicialComplex.from_facets([[0, 1, 2]]), 5, 100)

    def test_report_json(self):
        report = taut_spectrum(cycle_graph(5), 6, 10_000)
        data = report.to_json_dict()
        text = json.dumps(data, sort_keys=True)
        assert json.loads(text)["spectrum"] == [5]


class TestKRelated:
    def test_equal_sets_always_related(self):
        rng = random.Random(1)
        for _ in range(20):
            H = sorted(rng.sample(range(10, 120), rng.randint(0, 8)))
            for k in (1, 2, 3):
                assert k_related(H, H, k, 400)

    def test_witness_interval(self):
        assert k_related([10], [15], 2, 40) is True

    def test_missing_witness(self):
        assert k_related([100], [], 2, 200) is False

    def test_symmetry_on_random_pairs(self):
        rng = random.Random(12)
        for _ in range(50):
            H = sorted(rng.sample(range(10, 60), rng.randint(0, 6)))
            Hp = sorted(rng.sample(range(10, 60), rng.randint(0, 6)))
            k = rng.randint(1, 3)
            ceiling = 200
            assert k_related(H, Hp, k, ceiling) == k_related(Hp, H, k, ceiling)

    def test_weaker_relation_for_larger_k(self):
        rng = random.Random(30)
        for _ in range(30):
            H = sorted(rng.sample(range(16, 50), rng.randint(0, 5)))
            Hp = sorted(rng.sample(range(16, 50), rng.randint(0, 5)))
            if k_related(H, Hp, 3, 600) and max(H + Hp + [0]) * 4 <= 600:
                assert k_related(H, Hp, 4, 600)

    def test_ceiling_too_small(self):
        with pytest.raises(CeilingError):
            k_related([5], [5], 2, 5)

    def test_undecidable_window_raises(self):
        with pytest.raises(CeilingError):
            k_related([100], [], 2, 150)  # window reaches 200 but ceiling is 150


class TestSeparationRatioCheck:
    def test_chosen_constants_pass(self):
        constants = choose_constants(2, [0, 4, 4, 4], 3)
        result = separation_ratio_check(constants, [0, 4, 4, 4], 2)
        assert result.ok
        assert result.min_ratio_bound == constants[0] ** 0

    def test_bare_single_constant(self):
        result = separation_ratio_check((4,), [0, 0], 2)
        assert result.ok and result.min_ratio_bound == 1

    def test_non_increasing_constants_fail(self):
        result = separation_ratio_check((2, 2), [0, 0, 0], 2)
        assert not result.ok
        assert any("C_2 > C_1" in f for f in result.failures)

    def test_reported_bound_is_min_over_positions(self):
        constants = choose_constants(2, None, 3)
        result = separation_ratio_check(constants, [0, 0, 0, 0], 2)
        assert result.min_ratio_bound == min(
            constants[m - 1] ** (2**m - 2) for m in (1, 2, 3)
        )


class TestGraphIO:
    def test_round_trip(self, tmp_path):
        graph = wedge_graph()
        path = tmp_path / "g.json"
        path.write_text(dump_graph(graph), encoding="utf-8")
        again = load_graph(path)
        assert again == graph
        assert dump_graph(again) == dump_graph(graph)
