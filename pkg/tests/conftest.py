# Third Party Imports
import pytest

# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, MixedGenSet, circulant
from mixed_abelian_cayley.lattice import AbelianGroup, IntMatrix


@pytest.fixture
def worked_matrix() -> IntMatrix:
    return IntMatrix(((3, -2, 0), (0, 4, 1), (0, 0, 2)))


@pytest.fixture
def circ10() -> MixedCayleyGraph:
    return circulant(10, involutions=(5,), pairs=(1,), directed=(2,))


@pytest.fixture
def circ36() -> MixedCayleyGraph:
    return circulant(36, involutions=(18,), pairs=(1, 5))


@pytest.fixture
def one_vertex() -> MixedCayleyGraph:
    return MixedCayleyGraph(AbelianGroup(()), MixedGenSet())


@pytest.fixture
def write_text(tmp_path):
    def write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
