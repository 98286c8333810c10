import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synthetic import make_dataset, write_csvs  # noqa: E402


@pytest.fixture(scope="session")
def synthetic_data():
    return make_dataset(seed=11)


@pytest.fixture(scope="session")
def synthetic_csvs(synthetic_data, tmp_path_factory):
    directory = tmp_path_factory.mktemp("synthetic")
    return write_csvs(synthetic_data, directory)
