import json
from fractions import Fraction as F

import pytest

from conftest import HALF
from tropical_hassett import graphs as gr
from tropical_hassett.errors import DomainError, InputError
from tropical_hassett.verify import (
    CheckReport,
    disjoint_vertex_count,
    expansion_formula,
    run_check,
    run_checks,
    verify_disjoint_vertices,
    verify_excluded_case,
    verify_expansion_formula,
    verify_filtration_and_locals,
    verify_heavy_light,
    verify_main_theorem,
    verify_realize_product,
    verify_reconstruction,
    verify_structure,
    verify_wreath_example,
)
from tropical_hassett.weights import heavy_light_vector


@pytest.mark.parametrize("g, w, order", [(1, (1, 1, 1), 6), (1, (HALF,) * 3, 6), (2, (HALF, HALF), 2)])
def test_main_theorem(g, w, order):
    r = verify_main_theorem(g, w)
    assert r.passed
    assert r.witnesses["aut_kw_order"] == order
    assert r.witnesses["aut_complex_order"] == str(order)


def test_main_theorem_hypotheses():
    with pytest.raises(DomainError):
        verify_main_theorem(0, (1,) * 5)
    with pytest.raises(DomainError):
        verify_main_theorem(1, (HALF, HALF))


@pytest.mark.parametrize("g, w", [(1, (1,)), (1, (F(2, 5), F(2, 5))), (1, (F(1, 3), F(1, 4)))])
def test_excluded_cases_are_trivial(g, w):
    assert verify_excluded_case(g, w).passed


@pytest.mark.parametrize("m, n, eps, order", [(2, 3, HALF, 12), (3, 2, F(1, 3), 12), (2, 4, HALF, 48)])
def test_heavy_light(m, n, eps, order):
    r = verify_heavy_light(m, n, eps)
    assert r.passed and r.witnesses["expected_order"] == order and r.witnesses["flag"]


def test_heavy_light_hypotheses():
    with pytest.raises(DomainError):
        verify_heavy_light(2, 2, HALF)
    with pytest.raises(DomainError):
        verify_heavy_light(3, 2, HALF)


@pytest.mark.parametrize("k, vertices, order", [(1, 3, "6"), (2, 10, "10!"), (3, 35, "35!")])
def test_disjoint_vertices(k, vertices, order):
    r = verify_disjoint_vertices(k)
    assert r.passed
    assert r.witnesses["sizes"] == [vertices] == [disjoint_vertex_count(k)]
    assert r.witnesses["aut_complex_order"] == order


def test_wreath():
    r = verify_wreath_example()
    assert r.passed
    assert r.witnesses["components"] == 3
    assert r.witnesses["aut_complex_order"] == 1296
    assert r.witnesses["aut_kw_order"] == 36


@pytest.mark.parametrize("g, w", [(1, (1, 1, 1)), (2, (1,)), (0, (1,) * 5)])
def test_reconstruction(g, w):
    r = verify_reconstruction(g, w)
    assert r.passed and r.witnesses["classes_scanned"] > 0


def test_reconstruction_reports_collisions_below_three_vertices():
    # two-vertex graphs are outside the claim; the scan must not count them
    r = verify_reconstruction(0, (1, 1, 1, 1))
    assert r.witnesses["classes_scanned"] == 0


def test_expansion_formula_examples():
    w = heavy_light_vector(2, 3, HALF)
    special = gr.make_B(0, 0, 0, {1, 3}, w).graph
    assert len(gr.one_edge_expansions(special, w, 0)) == 3 == expansion_formula(2, 3, 2, 1)
    other = gr.make_B(0, 0, 0, {3, 4}, w).graph
    assert len(gr.one_edge_expansions(other, w, 0)) == 2 == expansion_formula(2, 3, 2, 0)
    r = verify_expansion_formula(3, 3, F(1, 3))
    assert r.passed and r.witnesses["maximisers"] == 9


@pytest.mark.parametrize("blocks, order", [([3], 6), ([2, 2], 4), ([2, 3], 12)])
def test_realize_product(blocks, order):
    r = verify_realize_product(blocks)
    assert r.passed and r.witnesses["aut_kw_order"] == order


@pytest.mark.parametrize("g, w", [(1, (1, 1, 1)), (2, (HALF, HALF)), (1, (F(1, 3), F(1, 2)))])
def test_filtration_and_locals(g, w):
    r = verify_filtration_and_locals(g, w)
    assert r.passed and r.witnesses["restriction_to_V2_injective"]


def test_structure():
    assert verify_structure(2, (1,)).passed


def test_report_json_schema():
    r = verify_wreath_example()
    d = json.loads(r.dumps())
    assert set(d) == {"check", "params", "verdict", "witnesses", "duration_ms"}
    assert d["verdict"] == "pass"
    assert d["params"]["w"][0] == "1/3"
    assert isinstance(r, CheckReport)


def test_failing_report_serialises_verdict():
    r = CheckReport("wreath", {"w": [F(1, 3)]}, False, {"order": 7})
    d = r.to_json()
    assert d["verdict"] == "fail" and d["witnesses"] == {"order": 7}
    assert d["params"] == {"w": ["1/3"]}
    assert "FAIL" in r.summary()


def test_registry_and_parallel_runner():
    with pytest.raises(InputError):
        run_check("no-such-check")
    reqs = [("realize-product", {"block_sizes": [2, 2]}), ("disjoint-vertices", {"k": 1})]
    serial = run_checks(reqs)
    parallel = run_checks(reqs, workers=2)
    assert [r.to_json()["witnesses"] for r in serial] == [r.to_json()["witnesses"] for r in parallel]
    assert all(r.passed for r in serial)
