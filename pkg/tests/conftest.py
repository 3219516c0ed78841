import numpy as np
import pytest

from htype.geometry import HTypeAlgebra

MODEL_SPECS = ("irr(1)", "irr(2)", "irr(3)", "irr(4)", "irr(5)", "irr(6)", "irr(7)",
               "irr(8)", "irr(9)", "sum(irr(3,+),irr(3,-))", "sum(irr(7,+),irr(7,-))")


@pytest.fixture(scope="session")
def algebras():
    return {spec: HTypeAlgebra.from_spec(spec) for spec in MODEL_SPECS}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
