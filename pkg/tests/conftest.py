import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--long",
        action="store_true",
        default=False,
        help="run the long enumeration cases (tens of thousands of trees)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "long: long-running case, enabled with --long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="pass --long to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
