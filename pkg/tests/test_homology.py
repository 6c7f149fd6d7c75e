import random

import pytest
from hypothesis import given, settings, strategies as st

from collatz_complexes.complexes import (
    BudgetExhausted, ChainComplex, build_B, build_Gamma, build_H, build_P, build_Q, orbit_closure,
    truncate,
)
from collatz_complexes.gcf import TableOverride, collatz, constant, cycle_override, successor
from collatz_complexes.homology import (
    CompositionNonzero, DependenceCertificate, Exceeded, FiniteComponent, HomologyGroups,
    NoDependence, boundary_columns, boundary_of, component_is_closed, finite_component, homology,
    rank, smith_normal_form, toph_stream,
)
from collatz_complexes.orbit import OrbitBudget

from helpers import determinant_divisors_factors, matrix_rank_fraction, random_gcf, random_table_function

C = collatz()
POINT = HomologyGroups((1, 0, 0), ((), (), ()))


def random_closed_set(rng, f, cap=200, budget=OrbitBudget(2000, 64)):
    """Orbit closure of a few random seeds, or None if too big or unclosed."""
    seeds = {rng.randint(1, 300) for _ in range(rng.randint(1, 4))}
    try:
        S = orbit_closure(f, seeds, budget)
    except BudgetExhausted:
        return None
    return S if len(S) <= cap else None


class TestSNF:
    def test_identity(self):
        assert smith_normal_form([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]) == [1, 1, 1]

    def test_diag(self):
        assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]

    def test_zero(self):
        assert smith_normal_form([[0, 0], [0, 0]]) == []
        assert smith_normal_form([]) == []

    def test_sparse_dict_input(self):
        assert smith_normal_form({0: {0: 4}, 1: {1: 6}}) == [2, 12]

    def test_big_entries(self):
        big = 3**80
        assert smith_normal_form([[big, 0], [0, big * 2]]) == [big, 2 * big]

    def test_determinant_divisor_oracle(self):
        rng = random.Random(0)
        for _ in range(60):
            M = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
            assert smith_normal_form(M) == determinant_divisors_factors(M)

    def test_oracle_rectangular_sparse(self):
        rng = random.Random(1)
        for _ in range(60):
            r, c = rng.randint(1, 5), rng.randint(1, 5)
            M = [[rng.choice([0, 0, 0, rng.randint(-9, 9)]) for _ in range(c)] for _ in range(r)]
            assert smith_normal_form(M) == determinant_divisors_factors(M)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_snf_divisibility_and_rank(M):
    d = smith_normal_form(M)
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    cols = [{i: M[i][j] for i in range(4) if M[i][j]} for j in range(4)]
    assert len(d) == rank(M) == matrix_rank_fraction(cols, range(4))


class TestHomology:
    def test_P_collatz(self):
        assert homology(truncate(build_P(C), {1, 2, 4})) == POINT

    def test_text(self):
        assert POINT.to_text() == "H0 Z^1\nH1 0\nH2 0\n"
        assert HomologyGroups((1, 0, 1), ((), (2, 4), ())).group(1) == "Z/2 + Z/4"

    @pytest.mark.parametrize("n", range(1, 51))
    def test_B_and_H(self, n):
        hb = homology(truncate(build_B(n)))
        assert hb.betti == (1, 1, 0) and hb.torsion == ((), (), ())
        assert homology(truncate(build_H(n))) == POINT

    def test_torsion(self):
        # <a | a^2>: H1 = Z/2
        K = ChainComplex((["pt"], [1], [1]), [{}], [{0: 2}])
        h = homology(K)
        assert h.betti == (1, 0, 0) and h.torsion[1] == (2,)
        assert h.group(1) == "Z/2"

    def test_composition_check(self):
        K = ChainComplex(([1, 2], [1], [1]), [{0: 1, 1: -1}], [{0: 1}])
        with pytest.raises(CompositionNonzero):
            homology(K)

    def test_euler_characteristic_matches_betti(self):
        rng = random.Random(5)
        for _ in range(30):
            f = random_table_function(rng, 25)
            K = truncate(build_Gamma(f), set(range(1, 26)))
            h = homology(K)
            assert K.euler_characteristic() == h.betti[0] - h.betti[1] + h.betti[2]

    def test_graph_homology_counts_cycles(self):
        # Gamma of a map on 1..n: one component per cycle; a loop adds H1
        f = TableOverride({5: 5, 6: 7, 7: 6}, constant(1))
        K = truncate(build_Gamma(f), set(range(1, 8)))
        h = homology(K)
        # components {1,2,3,4}, {5}, {6,7}; the loop e_4 and the double edge 6-7 give H1
        assert h.betti == (3, 2, 0)

    def test_acyclicity_sweep_small(self):
        rng = random.Random(11)
        done = 0
        while done < 40:
            f = random_gcf(rng)
            S = random_closed_set(rng, f)
            if S is None:
                continue
            assert homology(truncate(build_P(f), S)) == POINT
            done += 1

    def test_Q_truncations_acyclic_when_orbits_reach_one(self):
        for seeds in ({3}, {7, 9}, {27}):
            S = orbit_closure(C, seeds)
            assert homology(truncate(build_Q(C), S)) == POINT


class TestToph:
    def test_cycle_567(self):
        G = build_Gamma(cycle_override((5, 6, 7)))
        cert = toph_stream(boundary_columns(G), 100)
        assert isinstance(cert, DependenceCertificate)
        assert cert.coefficients == {4: 1, 5: 1, 6: 1}
        assert cert.last_cell == 6
        assert cert.to_text() == "cycle: 4:1 5:1 6:1"
        assert cert.verify(boundary_of(G))

    def test_loop_immediate(self):
        G = build_Gamma(TableOverride({5: 5}, C))
        cert = toph_stream(boundary_columns(G), 100)
        # e_1..e_3 form a tree on v1..v4 (C restricted), then the loop e_4
        assert cert.coefficients == {4: 1}

    def test_P_collatz_independent(self):
        res = toph_stream(boundary_columns(build_P(C)), 1000)
        assert res == NoDependence(1000)

    def test_finite_complex_runs_out(self):
        assert toph_stream(boundary_columns(build_H(3)), 10) == NoDependence(3)

    def test_certificate_rejects_wrong(self):
        G = build_Gamma(cycle_override((5, 6, 7)))
        assert not DependenceCertificate({4: 1, 5: 1}).verify(boundary_of(G))
        assert not DependenceCertificate({4: 2, 5: 2, 6: 2}).verify(boundary_of(G))

    def test_matches_batch_oracle(self):
        rng = random.Random(21)
        for _ in range(60):
            n = rng.randint(2, 30)
            f = random_table_function(rng, n)
            G = build_Gamma(f)
            cols = [boundary_of(G)(i) for i in range(1, n + 1)]
            verts = set(range(1, n + 2))
            expect = next((m for m in range(1, n + 1)
                           if matrix_rank_fraction(cols[:m], verts) < m), None)
            got = toph_stream(boundary_columns(G), n)
            if expect is None:
                assert got == NoDependence(n)
            else:
                assert isinstance(got, DependenceCertificate)
                assert got.last_cell == expect
                assert got.verify(boundary_of(G))

    def test_rational_elimination_gives_integer_certificate(self):
        cols = [("a", {0: 2, 1: 4}), ("b", {0: 3, 1: 1}), ("c", {0: 1, 1: 7})]
        cert = toph_stream(iter(cols), 10)
        assert cert.verify(dict(cols))
        assert cert.coefficients["c"] > 0


class TestComponents:
    def test_fixed_point(self):
        f = TableOverride({5: 5}, constant(1))
        assert finite_component(f, 5, 100) == FiniteComponent(frozenset({5}))

    def test_collatz_exceeds(self):
        assert isinstance(finite_component(C, 1, 10**4), Exceeded)

    def test_successor_isolated_one(self):
        assert finite_component(successor(), 1, 100) == FiniteComponent(frozenset({1}))

    def test_successor_rest_is_infinite(self):
        assert isinstance(finite_component(successor(), 2, 500), Exceeded)

    def test_components_are_closed(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(2, 20)
            f = TableOverride({i: rng.randint(2, n) for i in range(2, n + 1)}, successor())
            # 2..n is closed; vertex 1 hangs off edges from n+1, n+2, ... only via successor
            comp = finite_component(f, 2, 100)
            assert isinstance(comp, FiniteComponent)
            assert comp.vertices <= set(range(2, n + 1))
            assert component_is_closed(f, comp.vertices)
