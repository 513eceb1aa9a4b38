import itertools
import json
import random

import pytest

from cubelin import (
    DruzkowskiMap,
    PolyMap,
    Polynomial,
    ScalarMatrix,
    cubic_part,
    delta,
    expand_map,
    gram_and_condition,
    jacobian,
    linear_forms,
    parse_gaussian,
    rank_bound_certificate,
    trace_condition_holds,
    trace_poly,
)
from cubelin.druzkowski import gram_matrix, mixed_cubic_map, zero_diagonal_count
from helpers import random_scalar_matrix, shear_matrix, sympy_trace_is_zero


def g(text):
    return parse_gaussian(text)


def mat(rows):
    return ScalarMatrix([[g(v) for v in row] for row in rows])


ALPHABET = [g(s) for s in ("0", "1", "-1", "i", "-i")]


def all_two_by_two(entries):
    for picks in itertools.product(entries, repeat=4):
        yield ScalarMatrix([picks[:2], picks[2:]])


class TestExpandMap:
    def test_shear(self):
        F = expand_map(shear_matrix())
        x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        assert F == PolyMap([x1 + x2 ** 3, x2])

    def test_zero_matrix_gives_identity(self):
        assert expand_map(ScalarMatrix.zeros(3, 3)).is_identity()

    def test_paper_example_components(self, paper):
        F = expand_map(paper)
        t = Polynomial.linear_form([g("1"), g("i"), g("1"), g("1")])
        s = Polynomial.linear_form([g("1"), g("i"), g("-1"), g("1")])
        cube_t = t * t * t
        cube_s = s * s * s
        x = [Polynomial.variable(4, j) for j in range(4)]
        assert F.components[0] == x[0] + cube_t
        assert F.components[1] == x[1] + cube_t.scale(g("i"))
        assert F.components[2] == x[2] - cube_s
        assert F.components[3] == x[3] - cube_s

    def test_cubic_part_is_map_minus_identity(self, paper):
        F = expand_map(paper)
        H = cubic_part(paper)
        for i in range(4):
            assert F.components[i] - Polynomial.variable(4, i) == H.components[i]

    def test_linear_forms_row_wise(self):
        forms = linear_forms(mat([["1", "2"], ["0", "-i"]]))
        assert forms[0] == Polynomial.linear_form([g("1"), g("2")])
        assert forms[1] == Polynomial.linear_form([g("0"), g("-i")])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            expand_map(ScalarMatrix.zeros(2, 3))

    def test_accepts_nested_lists(self):
        F = expand_map([[g("0"), g("1")], [g("0"), g("0")]])
        assert F == expand_map(shear_matrix())


class TestTracePoly:
    def test_zero_matrix(self):
        assert trace_poly(ScalarMatrix.zeros(2, 2)).is_zero()

    def test_identity_two(self):
        p = trace_poly(ScalarMatrix.identity(2))
        assert p.to_text() == "3x1^2+3x2^2"

    def test_paper_example_vanishes(self, paper):
        assert trace_poly(paper).is_zero()
        assert trace_condition_holds(paper)

    def test_equals_jacobian_trace(self):
        rng = random.Random(23)
        for _ in range(15):
            A = random_scalar_matrix(rng, rng.randint(1, 3), den=2)
            J = jacobian(expand_map(A))
            n = A.rows
            diag_sum = Polynomial.zero(n)
            for i in range(n):
                diag_sum = diag_sum + J.entries[i][i]
            assert diag_sum - Polynomial.constant(n, n) == trace_poly(A)

    def test_matches_sympy_oracle(self):
        rng = random.Random(24)
        for _ in range(20):
            A = random_scalar_matrix(rng, rng.randint(1, 3), den=2)
            assert trace_poly(A).is_zero() == sympy_trace_is_zero(A)


class TestGram:
    def test_paper_example_gram_vanishes(self, paper):
        G, holds = gram_and_condition(paper)
        assert holds and G.is_zero()

    def test_antidiagonal_matrix(self):
        A = mat([["0", "1"], ["1", "0"]])
        G, holds = gram_and_condition(A)
        assert holds and G.is_zero()

    def test_identity_fails(self):
        G, holds = gram_and_condition(ScalarMatrix.identity(2))
        assert not holds
        assert G == ScalarMatrix.identity(2)

    def test_gram_formula(self):
        rng = random.Random(25)
        for _ in range(25):
            A = random_scalar_matrix(rng, rng.randint(1, 4), den=2)
            assert gram_matrix(A) == A.transpose() * A.diag_of() * A

    def test_trace_iff_gram_exhaustive(self):
        for A in all_two_by_two(ALPHABET):
            assert trace_poly(A).is_zero() == gram_and_condition(A)[1]


class TestDelta:
    def test_counts(self, paper):
        assert delta(paper) == 0
        assert delta(ScalarMatrix.zeros(3, 3)) == 3
        assert delta(mat([["1", "5"], ["7", "0"]])) == 1
        assert zero_diagonal_count is delta


class TestCertificate:
    def test_paper_example(self, paper):
        cert = rank_bound_certificate(paper)
        assert cert.n == 4
        assert cert.trace_condition_holds
        assert cert.delta == 0
        assert cert.rank == 2
        assert cert.bound_times_two == 4
        assert cert.theorem_satisfied

    def test_dict_field_order(self, paper):
        payload = rank_bound_certificate(paper).to_dict()
        assert list(payload) == [
            "trace_condition_holds",
            "delta",
            "rank",
            "bound_times_two",
            "theorem_satisfied",
        ]

    def test_json_golden(self, paper):
        text = rank_bound_certificate(paper).to_json()
        assert json.loads(text) == {
            "trace_condition_holds": True,
            "delta": 0,
            "rank": 2,
            "bound_times_two": 4,
            "theorem_satisfied": True,
        }

    def test_antidiagonal(self):
        cert = rank_bound_certificate(mat([["0", "1"], ["1", "0"]]))
        assert cert.trace_condition_holds
        assert (cert.delta, cert.rank, cert.bound_times_two) == (2, 2, 4)
        assert cert.theorem_satisfied

    def test_vacuous_when_trace_fails(self):
        cert = rank_bound_certificate(ScalarMatrix.identity(2))
        assert not cert.trace_condition_holds
        assert cert.rank == 2
        assert cert.theorem_satisfied  # no claim without the hypothesis

    def test_exhaustive_two_by_two(self):
        for A in all_two_by_two(ALPHABET):
            assert rank_bound_certificate(A).theorem_satisfied


class TestDruzkowskiMap:
    def test_wrapper(self, paper):
        dm = DruzkowskiMap(paper)
        assert dm.n == 4
        assert dm.polynomial_map() == expand_map(paper)
        assert dm.certificate() == rank_bound_certificate(paper)


class TestMixedCubicMap:
    def test_square_case_matches_expand(self, paper):
        assert mixed_cubic_map(paper, None) == expand_map(paper)

    def test_rectangular_pair(self):
        # mix 1x2, comb 2x1: components are y_i + c_i * (m . y)^3
        mix = mat([["1", "-1"]])
        comb = mat([["2"], ["0"]])
        F = mixed_cubic_map(mix, comb)
        d = Polynomial.linear_form([g("1"), g("-1")])
        cubes = d * d * d
        y1, y2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        assert F.components[0] == y1 + cubes.scale(g("2"))
        assert F.components[1] == y2
