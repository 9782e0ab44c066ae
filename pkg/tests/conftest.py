import pytest

from stratal.nominal import Atom


@pytest.fixture
def at():
    return Atom.named
