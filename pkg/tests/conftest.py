import pytest

from complyscore.checklist import load_default_checklist


@pytest.fixture(scope="session")
def default_checklist():
    return load_default_checklist()
