import json
import pytest
from click.testing import CliRunner
from faker import Faker
from ..cli import main
from ..config import BaseTestConfig
from ..logging import init_logging
from ..spectral import PeriodicGrid
from .faker import SpectralFakerProvider

FAKER_SEED = 20240601


@pytest.fixture(scope="function")
def faker():
    result = Faker("en_GB")
    result.seed_instance(FAKER_SEED)
    result.add_provider(SpectralFakerProvider)

    yield result


@pytest.fixture(scope="function")
def test_config():
    init_logging(BaseTestConfig)

    yield BaseTestConfig


@pytest.fixture(scope="function")
def grid():
    yield PeriodicGrid(64)


@pytest.fixture(scope="function")
def coarse_grid():
    yield PeriodicGrid(32)


@pytest.fixture(scope="function")
def config_file(tmp_path):
    def _config_file(document, name='config.json'):
        path = tmp_path / name
        if isinstance(document, str):
            path.write_text(document, encoding='utf-8')
        else:
            path.write_text(json.dumps(document), encoding='utf-8')

        return path

    yield _config_file


@pytest.fixture(scope="function")
def cli(test_config):
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(main, [str(a) for a in args], obj=test_config)

    yield _invoke
