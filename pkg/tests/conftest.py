from __future__ import annotations

import pytest

from homesim.catalog import load_catalogs


@pytest.fixture(scope="session")
def catalogs():
    return load_catalogs()
