import pytest

from rankshot.cosets import PartitionChain
from rankshot.fields import ExtensionField, PrimeField
from rankshot.gabidulin import GabidulinCode
from rankshot.multilevel import MultilevelCodeSpec


@pytest.fixture(scope="session")
def f8():
    # x^3 + x + 1, the modulus every hand-computed value below assumes
    return ExtensionField(PrimeField(2), modulus=[1, 1, 0, 1])


@pytest.fixture(scope="session")
def f9():
    # x^2 + 1 is irreducible over F_3
    return ExtensionField(PrimeField(3), modulus=[1, 0, 1])


@pytest.fixture(scope="session")
def tiny2shot(f8):
    """N=3, chain 2>1>0 over F_8, two shots, [2,1,2] outer codes at both
    levels: 64 codewords, design rank distance 4."""
    code = GabidulinCode(f8, 3, 2)
    return MultilevelCodeSpec(PartitionChain(code, [2, 1, 0]), 2, [1, 1])
