import importlib

import pytest

SUBPACKAGES = (
    "renewbound",
    "renewbound.boundary",
    "renewbound.cli",
    "renewbound.dataio",
    "renewbound.estimate",
    "renewbound.oufn",
    "renewbound.policy",
    "renewbound.view",
)


@pytest.mark.parametrize("name", SUBPACKAGES)
def test_exported_names_resolve(name: str):
    module = importlib.import_module(name)

    missing = [attr for attr in module.__all__ if not hasattr(module, attr)]

    assert missing == []


def test_boundary_file_names():
    from renewbound.boundary import BOUNDARY_CSV, BOUNDARY_JSON

    assert (BOUNDARY_CSV, BOUNDARY_JSON) == ("boundary.csv", "boundary.json")
