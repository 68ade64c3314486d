import pytest

from planar2 import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # jit compilation happens once here so timed tests measure compute only
    kernels.warmup()
