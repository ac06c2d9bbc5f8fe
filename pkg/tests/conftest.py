# -*- coding: utf-8 -*-

"""Helpers for testing."""

import os
import platform
import sys

import psutil
import pytest

from semspace.ontology import load_ontology, parse_pairs, swing_fragment
from semspace.space import Space

from .utils import FakeClock

cwd = os.path.dirname(__file__)
fixtures_path = os.path.join(cwd, "fixtures")


def pytest_addoption(parser):
    parser.addoption(
        "--bench-scale",
        action="store",
        default="desk",
        help="Must be one of desk (sizes up to 8MB) and full (up to 51MB)"
    )


def pytest_configure(config):
    scale = config.getoption("bench_scale")
    if scale not in ("desk", "full"):
        raise pytest.UsageError(f"Invalid bench scale: {scale}")


def pytest_report_header(config):
    """Generate extra report headers"""
    memory = psutil.virtual_memory().total // (1024 * 1024)
    header = ("Python: {python}, Platform: {platform}, CPUs: {cpus}, "
              "Memory: {memory}MB, Bench scale: {scale}".format(
                  python=sys.version.split()[0],
                  platform=platform.platform(),
                  cpus=psutil.cpu_count(logical=True),
                  memory=memory,
                  scale=config.getoption("bench_scale")))
    return header


@pytest.fixture()
def filepath():
    """Returns full filepath for file in `fixtures` directory."""

    def make_filepath(filename):
        return os.path.join(fixtures_path, filename)

    return make_filepath


@pytest.fixture(scope="session")
def bench_scale(request):
    return request.config.getoption("bench_scale")


@pytest.fixture(scope="session")
def swing_pairs():
    return parse_pairs(swing_fragment())


@pytest.fixture(scope="session")
def swing_index():
    return load_ontology(swing_fragment())


@pytest.fixture()
def clock():
    return FakeClock()


@pytest.fixture()
def space(swing_index, clock):
    """A space with the Swing fragment loaded as the RDFS model."""
    space = Space(max_lease_ms=3600000, clock=clock)
    space.load_model("RDFS", swing_index)
    return space


@pytest.fixture()
def swing_file(tmp_path):
    path = tmp_path / "swing.pairs"
    path.write_text(swing_fragment(), encoding="utf-8")
    return str(path)
