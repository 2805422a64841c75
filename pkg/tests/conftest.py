import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arbormat import Orientation, Tree, VertexMap


@pytest.fixture
def path3():
    return Tree([(1, 2), (2, 3)])


@pytest.fixture
def shift3(path3):
    """Path 1-2-3 with the cyclic shift map; its oriented matrix equals the
    2x2 companion matrix."""
    return VertexMap(path3, [2, 3, 1]), Orientation.canonical(2)


@pytest.fixture
def star4():
    return Tree([(1, 2), (1, 3), (1, 4)])
