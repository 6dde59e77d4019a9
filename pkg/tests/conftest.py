import numpy as np
import pytest

import syntomo as st


@pytest.fixture(scope="session")
def code3():
    return st.builtin_code("code3")


@pytest.fixture(scope="session")
def code5():
    return st.builtin_code("code5")


@pytest.fixture(scope="session")
def ad036():
    return st.builtin_channel("amplitude-damping", [0.36])


@pytest.fixture
def rng():
    return np.random.default_rng(4217)
