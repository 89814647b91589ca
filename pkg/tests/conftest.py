import pytest

from fdsearch import kernel


@pytest.fixture(params=kernel.available_backends())
def backend(request):
    """Run a test under each available kernel backend."""
    previous = kernel.ACTIVE_BACKEND
    kernel.use_backend(request.param)
    yield request.param
    kernel.use_backend(previous)
