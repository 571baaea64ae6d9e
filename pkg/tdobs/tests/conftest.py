"""
Pytest configuration and fixtures for tdobs tests
"""
import pytest

from obstructions.canon import clear_cache
from obstructions.graph_core import Graph, from_graph6
from obstructions.services.pipeline import RunConfig


@pytest.fixture(autouse=True)
def fresh_canon_cache():
    """Keep canonical labelings from leaking between tests"""
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def k2():
    return Graph.complete(2)


@pytest.fixture
def p4():
    """Path 0-1-2-3"""
    return Graph.path(4)


@pytest.fixture
def c4():
    return Graph.cycle(4)


@pytest.fixture
def triangle():
    return from_graph6('Bw')


@pytest.fixture
def out_dir(tmp_path):
    """Run directory for pipeline outputs"""
    return tmp_path / 'runs'


@pytest.fixture
def make_config(out_dir, settings):
    """Build a validated RunConfig against a temporary output directory"""
    settings.TDOBS = dict(settings.TDOBS, OUT_DIR=str(out_dir), WORKERS=1)

    def _make(k, n_max, **options):
        return RunConfig.from_options(k=k, n_max=n_max, out_dir=str(out_dir), **options)

    return _make
