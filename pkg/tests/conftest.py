import os

import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def pytest_addoption(parser):
    parser.addoption(
        "--long", action="store_true", default=False,
        help="run the slow gated checks (large modular tables)",
    )


@pytest.fixture
def long_enabled(request):
    return request.config.getoption("--long") or bool(os.environ.get("GROWTHCONG_LONG"))
