import json

import pytest
from hypothesis import settings

from nilpotent import catalog

settings.register_profile("exact", max_examples=25, deadline=None)
settings.load_profile("exact")

SIX_DIMENSIONAL = ["h1+R3", "h2+R", "g5+R", "h1+h1", "f6", "k6", "hC", "hC-e"]
STATIC = [
    "h1", "h1+R", "h1+R2", "h2", "g5", "h1+R3", "h2+R", "g5+R",
    "h1+h1", "f6", "k6", "hC", "hC-e", "hH", "singular7",
]


@pytest.fixture
def entry():
    return catalog.get


@pytest.fixture
def write_json(tmp_path):
    """Write an object (or raw text) to a file and return its path as a string."""

    def _write(name, payload):
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def algebra_file(write_json):
    """Catalog entry exported to the algebra file format."""

    def _file(name):
        return write_json(f"{name}.json", catalog.export(name))

    return _file
