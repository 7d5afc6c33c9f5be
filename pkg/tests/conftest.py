import json
from pathlib import Path

import pytest

from copgame.graph6 import parse_graph6
from copgame.graphs import Graph, from_edge_list

DATA_DIR = Path(__file__).parent / "data"


def load_corpus(name: str) -> list[Graph]:
    path = DATA_DIR / f"{name}.g6"
    return [parse_graph6(line) for line in path.read_text().split()]


def corpus_lines(name: str) -> list[str]:
    return (DATA_DIR / f"{name}.g6").read_text().split()


def manifest() -> dict:
    return json.loads((DATA_DIR / "MANIFEST.json").read_text())


# -- standard small graphs -------------------------------------------------

def c5() -> Graph:
    return from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def wheel_with_pendant() -> Graph:
    """Pendant 0 - hub 1 - 5-cycle on 2..6; deleting N[0] leaves the cycle."""
    hub_spokes = [(1, a) for a in range(2, 7)]
    ring = [(2, 3), (3, 4), (4, 5), (5, 6), (2, 6)]
    return from_edge_list(7, [(0, 1)] + hub_spokes + ring)


def two_k2() -> Graph:
    return from_edge_list(4, [(0, 1), (2, 3)])


@pytest.fixture(scope="session")
def corpus_2k2free_n8() -> list[Graph]:
    return load_corpus("conn_2k2free_n8")


@pytest.fixture(scope="session")
def corpus_3k2free_n8() -> list[Graph]:
    return load_corpus("conn_3k2free_n8")
