from importlib import resources

import pytest

from scanboard.cost import plan_selections
from scanboard.layout import default_layout


@pytest.fixture(scope="session")
def layout():
    return default_layout()


@pytest.fixture(scope="session")
def square_source() -> str:
    return (resources.files("scanboard") / "data" / "square.logo"
            ).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def square_plan(layout, square_source):
    return plan_selections(square_source, layout)
