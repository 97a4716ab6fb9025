import pytest

from csf_forge.trees import parse_tree, path_graph, star_graph


@pytest.fixture
def star4():
    return star_graph(4)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def path4():
    return path_graph(4)


@pytest.fixture
def edge():
    return parse_tree("n=2:1-2")
