import random
import time

import pytest

from hyperlat.core.exceptions import BudgetExceededError, ValidationError
from hyperlat.services.enumerate import shell
from hyperlat.services.lattice import integer_lattice, odd_lorentzian, root_lattice
from hyperlat.services.neighbor import (
    NeighborGraph,
    NeighborNode,
    admissible_classes,
    classify_dimension,
    coset_parities,
    even_neighbor_bases,
    even_neighbors,
    graph_checks,
    odd_neighbor,
    odd_neighbors,
    reduce_mod_2,
)


@pytest.fixture
def norm4(e8):
    return shell(e8, 4)[0]


def test_even_neighbors_of_i8_are_e8():
    for lattice in even_neighbors(integer_lattice(8)):
        assert lattice.is_even and lattice.is_unimodular
        assert len(shell(lattice, 2)) == 240


def test_even_neighbors_of_indefinite_lattice():
    for lattice, basis in even_neighbor_bases(odd_lorentzian(9)):
        assert lattice.is_even and lattice.is_unimodular
        assert lattice.signature == (9, 1, 0)
        assert len(basis) == 10


@pytest.mark.parametrize("lattice", [integer_lattice(3), root_lattice("e8"), root_lattice("a2")])
def test_even_neighbors_rejects(lattice):
    with pytest.raises(ValidationError):
        even_neighbors(lattice)


def test_odd_neighbor_of_e8_is_i8(e8, norm4):
    lattice = odd_neighbor(e8, norm4)
    assert lattice.is_odd and lattice.is_unimodular
    assert len(shell(lattice, 1)) == 16


def test_odd_neighbor_for_norm_8_class(e8):
    b = next(v for v in shell(e8, 8) if any(x % 2 for x in v))
    lattice = odd_neighbor(e8, b)
    assert lattice.is_odd and lattice.is_unimodular
    assert len(shell(lattice, 1)) == 16


def test_coset_parities(e8, norm4):
    assert coset_parities(e8, norm4) == [0, 0, 1]


@pytest.mark.parametrize("b", [[1, 0, 0, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0, 0, 0]])
def test_inadmissible_classes(e8, b):
    with pytest.raises(ValidationError):
        odd_neighbor(e8, b)


def test_odd_neighbor_needs_even_lattice():
    with pytest.raises(ValidationError):
        odd_neighbor(integer_lattice(8), [1, 1, 1, 1, 0, 0, 0, 0])


def test_reduce_mod_2(e8):
    b = [1, 1, 0, 1, 0, 0, 1, 0]
    rep, norm = reduce_mod_2(e8, b)
    assert all((x - y) % 2 == 0 for x, y in zip(rep, b))
    assert e8.norm(rep) == norm
    assert norm in (2, 4)


@pytest.mark.slow
def test_admissible_classes_of_e8(e8):
    classes = admissible_classes(e8, samples=8, rng=random.Random(0))
    assert len(classes) == 1
    assert e8.norm(classes[0]) == 4
    assert len(odd_neighbors(e8, samples=0)) == 1


@pytest.mark.slow
def test_classify_dimension_8(e8):
    graph = classify_dimension(8, e8, samples=4)
    assert graph.complete
    assert len(graph.even_nodes) == 1
    assert len(graph.odd_nodes) == 1
    assert graph.odd_nodes[0].norm1 == 8
    assert graph.edges == []
    assert all(graph_checks(graph).values())


def test_classify_dimension_rejects_bad_start(e8):
    with pytest.raises(ValidationError):
        classify_dimension(16, e8)
    with pytest.raises(ValidationError):
        classify_dimension(8, root_lattice("a8"))


def test_graph_checks_in_dimension_24(e8):
    graph = NeighborGraph(24)
    graph.nodes = [
        NeighborNode(0, e8, True, "e8^3", 0),
        NeighborNode(1, e8, True, "d16 e8", 0),
        NeighborNode(2, e8, False, "d8^2 e8", 0),
    ]
    graph.edges = [(2, 0, 1)]
    checks = graph_checks(graph)
    assert checks["rho^2 = h1 h2"] and checks["roots = 8(h1 + h2 - 2)"] and checks["h2 <= 2 h1 + 2"]
    assert all(checks.values())
    doc = graph.to_dict()
    assert doc["edges"] == [{"odd": 2, "even": [0, 1]}]
    assert doc["nodes"][2]["name"] == "odd d8^2 e8"
    assert 'n0 -- n1 [label="d8^2 e8"]' in graph.to_dot()


def test_odd_neighbors_past_deadline(e8):
    with pytest.raises(BudgetExceededError):
        odd_neighbors(e8, samples=0, deadline=time.monotonic() - 1)


def test_classify_dimension_out_of_time(e8):
    graph = classify_dimension(8, e8, samples=0, time_budget=1e-9)
    assert not graph.complete


def test_reduce_mod_2_finds_the_class_minimum(e8):
    b = [1, 0, 1, 0, 1, 0, 1, 0]
    _, norm = reduce_mod_2(e8, b)
    in_class = [v for v in shell(e8, norm) if all((x - y) % 2 == 0 for x, y in zip(v, b))]
    assert in_class
    assert not any(
        all((x - y) % 2 == 0 for x, y in zip(v, b))
        for n in range(2, int(norm), 2)
        for v in shell(e8, n)
    )


@pytest.mark.slow
def test_classify_dimension_16():
    graph = classify_dimension(16, integer_lattice(16), time_budget=900)
    assert graph.complete
    assert len(graph.nodes) == 8
    assert sorted(n.datum for n in graph.even_nodes) == ["d16", "e8^2"]
    assert sum(1 for n in graph.odd_nodes if n.norm1 == 0) == 1
    assert len(graph.edges) == 1
    assert all(graph_checks(graph).values())
