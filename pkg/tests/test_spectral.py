import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import constraint_formula, numpy_spectral_radius, quadratic_capacity, sympy_charpoly
from readchannel.core import ChannelParams, NumericError, ParameterError
from readchannel.enumerate import count_read_vectors
from readchannel.spectral import (
    CapacityBounds,
    CapacityValue,
    Polynomial,
    build_constraint_graph,
    capacity_closed_form,
    capacity_table,
    char_poly,
    constraint_capacity,
    determinized_capacity,
    perron_eigenvalue,
    qary_capacity,
    table_to_csv,
    table_to_json,
)
from readchannel.stategraph import adjacency_closed_form, adjacency_from_graph, build_H, node_count, prune_H

A_H_53 = [[2, 1, 1, 1, 1], [1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [0, 1, 1, 1, 1], [0, 1, 1, 1, 1]]


def P(ell, delta):
    return ChannelParams(ell, delta)


def interval_pairs(max_ell):
    return [(ell, delta) for ell in range(2, max_ell + 1) for delta in range(1, ell) if delta < ell < 2 * delta]


def test_char_poly_examples():
    p = char_poly(A_H_53)
    assert p.coeffs == (0, 0, 0, 6, -6, 1)
    assert p == Polynomial((6, -6, 1)) * Polynomial((0, 0, 0, 1))
    assert str(p) == "x^5 - 6x^4 + 6x^3"
    assert char_poly(np.eye(3, dtype=int)).coeffs == (-1, 3, -3, 1)
    assert char_poly([[0, 1], [1, 0]]).coeffs == (-1, 0, 1)
    assert char_poly(np.zeros((0, 0), dtype=int)).coeffs == (1,)


@given(st.integers(1, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_char_poly_matches_sympy(n, data):
    A = np.array(data.draw(st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n))).reshape(n, n)
    assert list(char_poly(A).coeffs) == sympy_charpoly(A)


@pytest.mark.parametrize("ell,delta", interval_pairs(12))
def test_char_poly_identity(ell, delta):
    p = P(ell, delta)
    m = node_count(p)
    s = ell - delta
    expected = Polynomial((s * (s + 1), -(ell + 1), 1)) * Polynomial((0,) * (m - 2) + (1,))
    assert char_poly(adjacency_closed_form(p)) == expected
    root = (ell + 1 + math.sqrt((ell + 1) ** 2 - 4 * s * (s + 1))) / 2
    assert abs(perron_eigenvalue(adjacency_closed_form(p)) - root) < 1e-9


def test_perron_examples():
    assert abs(perron_eigenvalue(A_H_53) - (3 + math.sqrt(3))) < 1e-9
    assert perron_eigenvalue(np.ones((4, 4), dtype=int)) == pytest.approx(4, abs=1e-12)
    _, M = build_constraint_graph(1, 2)
    assert abs(perron_eigenvalue(M) - (3 + math.sqrt(21)) / 2) < 1e-9


def test_perron_degenerate_inputs():
    assert perron_eigenvalue(np.zeros((3, 3), dtype=int)) == 0.0
    assert perron_eigenvalue(np.triu(np.ones((4, 4), dtype=int), 1)) == 0.0
    assert perron_eigenvalue(np.zeros((0, 0))) == 0.0
    assert perron_eigenvalue([[0, 1], [1, 0]]) == pytest.approx(1.0, abs=1e-12)  # periodic
    with pytest.raises(ParameterError):
        perron_eigenvalue([[1, -1], [0, 1]])
    with pytest.raises(ParameterError):
        perron_eigenvalue([[1]], tol=0)


def test_perron_iteration_cap():
    with pytest.raises(NumericError):
        perron_eigenvalue([[1, 1, 0], [1, 0, 1], [0, 1, 2]], max_iter=2)


@given(st.integers(1, 7), st.data())
@settings(max_examples=60, deadline=None)
def test_perron_matches_numpy(n, data):
    A = np.array(data.draw(st.lists(st.integers(0, 3), min_size=n * n, max_size=n * n))).reshape(n, n)
    assert perron_eigenvalue(A) == pytest.approx(numpy_spectral_radius(A), rel=1e-9, abs=1e-9)


def test_capacity_examples():
    c = capacity_closed_form(P(3, 2))
    assert c.kind == "exact" and abs(c.value - 0.885777) < 1e-6
    c = capacity_closed_form(P(5, 3))
    assert c.kind == "exact" and abs(c.value - quadratic_capacity(5, 3)) < 1e-12
    assert abs(math.log2(perron_eigenvalue(A_H_53)) / 3 - c.value) < 1e-12
    assert abs(capacity_closed_form(P(6, 2)).value - math.log2(3) / 2) < 1e-12
    b = capacity_closed_form(P(7, 2))
    assert isinstance(b, CapacityBounds)
    assert abs(b.lower.value - 0.7925) < 5e-4 and abs(b.upper.value - 0.9613) < 5e-5
    assert b.contains(0.9361)


def test_capacity_regimes():
    assert capacity_closed_form(P(9, 1)).value == 1.0
    assert capacity_closed_form(P(2, 5)).value == pytest.approx(math.log2(3) / 5)
    assert capacity_closed_form(P(9, 3)).value == pytest.approx(2 / 3)


def test_constraint_capacity_examples():
    c = constraint_capacity(1, 2)
    assert c.kind == "upper_bound"
    assert round(c.value, 4) == 0.9613
    assert c.value == pytest.approx(constraint_formula(1, 2), abs=1e-12)
    assert constraint_capacity(2, 3).value == pytest.approx(math.log2((5 + math.sqrt(45)) / 2) / 3, abs=1e-12)
    assert constraint_capacity(1, 3).value == constraint_capacity(2, 3).value
    with pytest.raises(ParameterError):
        constraint_capacity(0, 3)


def test_constraint_graph_shape():
    G, A = build_constraint_graph(1, 2)
    assert len(G.nodes) == 4
    expected = np.ones((4, 4), dtype=int)
    expected[G.nodes.index((1, 0)), G.nodes.index((1, 0))] = 0
    assert np.array_equal(A, expected)
    G, A = build_constraint_graph(2, 3)
    assert len(G.nodes) == 6 and len(G.edges) == 35


@pytest.mark.parametrize("delta", range(2, 9))
def test_constraint_closed_form_vs_graph(delta):
    for b in range(1, delta):
        _, A = build_constraint_graph(b, delta)
        assert abs(math.log2(perron_eigenvalue(A)) / delta - constraint_capacity(b, delta).value) < 1e-9


def test_bound_ordering():
    for delta in range(2, 7):
        for ell in range(2 * delta + 1, 21):
            c = capacity_closed_form(P(ell, delta))
            if ell % delta:
                assert isinstance(c, CapacityBounds)
                assert c.lower.value <= c.upper.value
    for ell, value in [(5, 0.9258), (7, 0.9361)]:
        assert capacity_closed_form(P(ell, 2)).contains(value)


def test_qary_capacity():
    for p in [P(3, 2), P(7, 2), P(5, 3)]:
        assert qary_capacity(p, 2) == capacity_closed_form(p)
    assert qary_capacity(P(1, 1), 3).qary_units == pytest.approx(1.0)
    c = qary_capacity(P(3, 2), 3)
    assert abs(c.qary_units - 0.815465) < 1e-6
    assert abs(capacity_closed_form(P(6, 4)).value - 0.646240) < 1e-6
    assert abs(determinized_capacity(P(6, 4)) - capacity_closed_form(P(6, 4)).value) < 1e-9
    b = qary_capacity(P(5, 2), 3)
    assert isinstance(b, CapacityBounds) and b.q == 3
    with pytest.raises(ParameterError):
        qary_capacity(P(3, 2), 1)


def test_qary_finite_equality():
    for ell, delta in [(2, 2), (3, 2)]:
        p = P(ell, delta)
        for n in p.valid_lengths(7):
            assert count_read_vectors(n, p, 3).count == count_read_vectors(2 * n, p.scaled(2)).count


def test_capacity_value_invariants():
    with pytest.raises(ParameterError):
        CapacityValue("approx", 0.5, "x")
    for ell in range(1, 12):
        for delta in range(1, 6):
            c = capacity_closed_form(P(ell, delta))
            for v in ([c.lower, c.upper] if isinstance(c, CapacityBounds) else [c]):
                assert 0 <= v.value <= 1


@pytest.mark.parametrize("ell,delta", [(3, 2), (5, 3), (7, 4), (6, 3), (5, 2)])
def test_determinized_matches_closed_form_or_bounds(ell, delta):
    value = determinized_capacity(P(ell, delta))
    c = capacity_closed_form(P(ell, delta))
    if isinstance(c, CapacityBounds):
        assert c.contains(value)
    else:
        assert value == pytest.approx(c.value, abs=1e-9)


def test_capacity_table_delta_2():
    rows = capacity_table(2, range(3, 9))
    exact = {r.ell: r.value for r in rows if r.value is not None}
    assert round(exact[3], 4) == 0.8858 and round(exact[6], 4) == 0.7925 and round(exact[8], 4) == 0.7925
    assert {r.ell for r in rows if r.value is None} == {5, 7}
    text = table_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0]) == ["ell", "delta", "regime", "value_or_lower", "upper", "provenance"]
    assert parsed[2]["upper"] == "0.961344"
    assert len(json.loads(table_to_json(rows))) == 6


def test_capacity_table_delta_4_and_3():
    values = [r.value for r in capacity_table(4, range(5, 8))]
    lo, hi = math.log2(5) / 4, math.log2(8) / 4
    assert all(lo < v < hi for v in values)
    assert capacity_table(3, [3])[0].value == pytest.approx(2 / 3)


def test_capacity_table_with_automaton():
    rows = capacity_table(2, [5, 6], with_automaton=True)
    assert abs(rows[0].automaton - 0.9258) < 5e-4
    assert rows[1].automaton == pytest.approx(rows[1].value, abs=1e-9)
