import pytest

from coxsep.graph import SimplicialGraph, cycle_graph, double, path_graph
from coxsep.words import RACG


def pentagon():
    return RACG(cycle_graph(5))


def square_path():
    return RACG(path_graph(4))


def free_double():
    return RACG(double(SimplicialGraph.build(["1", "2"], [])))


@pytest.fixture
def c5():
    return pentagon()


@pytest.fixture
def p4():
    return square_path()
