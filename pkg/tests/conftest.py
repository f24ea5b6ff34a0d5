import pytest

from gaskit import Direction, Domain, Graph
from gaskit.preprocess import EdgeList, layout_convert

from graphgen import eu_core_like_edges, write_edge_list

# the running example: 0->1 w1, 0->2 w5, 1->2 w2
HAND_EDGES = [(0, 1, 1), (0, 2, 5), (1, 2, 2)]


@pytest.fixture
def hand_edges():
    return list(HAND_EDGES)


@pytest.fixture
def hand_csr_graph():
    return layout_convert(EdgeList(list(HAND_EDGES), True, Domain.INT), Direction.CSR)


@pytest.fixture
def hand_csc_graph():
    return layout_convert(EdgeList(list(HAND_EDGES), True, Domain.INT), Direction.CSC)


@pytest.fixture
def path3():
    # 0 -> 1 -> 2, unit weights
    return Graph(3, [0, 1, 2, 2], [1, 2], [1, 1], Domain.INT, Direction.CSR)


@pytest.fixture(scope="session")
def eu_core():
    """(n, edges) of the synthetic email-Eu-core stand-in."""
    return eu_core_like_edges()


@pytest.fixture(scope="session")
def eu_core_file(tmp_path_factory, eu_core):
    _, edges = eu_core
    path = tmp_path_factory.mktemp("data") / "eu_core_like.txt"
    write_edge_list(path, edges, weighted=False)
    return path


@pytest.fixture(scope="session")
def eu_core_csr(eu_core):
    _, edges = eu_core
    el = EdgeList([(s, d, 1) for s, d, _ in edges], False, Domain.INT)
    return layout_convert(el, Direction.CSR)


@pytest.fixture(scope="session")
def eu_core_csc_float(eu_core):
    _, edges = eu_core
    el = EdgeList([(s, d, 1.0) for s, d, _ in edges], False, Domain.FLOAT)
    return layout_convert(el, Direction.CSC)
