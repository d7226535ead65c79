import numpy as np
import pytest

import visus.metrics
import visus.shares
import visus.stego
from visus import _fallback
from visus.image import RasterImage

try:
    from visus import _kernels
except ImportError:
    _kernels = None

BACKENDS = ["python"] + (["cython"] if _kernels is not None else [])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel implementation."""
    impl = _fallback if request.param == "python" else _kernels
    for mod in (visus.stego, visus.shares, visus.metrics):
        monkeypatch.setattr(mod, "kernels", impl)
    return request.param


def random_image(rng, width, height, low=0, high=256):
    return RasterImage(rng.integers(low, high, size=(height, width, 3), dtype=np.int64))


def dark_cover(rng, width, height, collisions=0):
    """Cover with plenty of carriers, optionally seeded with pattern-colliding pixels."""
    arr = rng.integers(0, 64, size=(height, width, 3), dtype=np.int64)
    flat = arr.reshape(-1, 3)
    for idx in rng.choice(flat.shape[0], size=min(collisions, flat.shape[0]), replace=False):
        px = [40, 40, 40]
        px[rng.integers(3)] = 40 + int(rng.integers(4))
        flat[idx] = px
    return RasterImage(arr)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args
    if rep.failed or (rep.when == "call" and key not in _criteria):
        _criteria[key] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"[{status}] AC{n}: {title}")
