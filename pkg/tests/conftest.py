import os
import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

sys.path.insert(0, str(Path(__file__).parent))

from kfeval import SENTINEL, DistanceMatrix

S = SENTINEL
EXAMPLE = [[1.0, 0.1, S], [S, 10.0, S], [S, 0.01, 100.0]]

RED = (255, 0, 0)
GREEN = (0, 255, 0)
BLUE = (0, 0, 255)


def pytest_addoption(parser):
    parser.addoption(
        "--vsumm-root", default=os.environ.get("KFEVAL_VSUMM_ROOT"),
        help="dataset root laid out as <root>/<video>/<method>/ and <root>/<video>/users/<user>/",
    )


@pytest.fixture
def example():
    return DistanceMatrix(EXAMPLE)


@pytest.fixture
def example_csv(tmp_path):
    path = tmp_path / "example.csv"
    path.write_text("1,0.1,1e9\n1e9,10,1e9\n1e9,0.01,100\n")
    return path


def solid(color, size=(4, 3)):
    return Image.new("RGB", size, color)


def save_dir(path: Path, images: dict) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    for name, img in images.items():
        img.save(path / name)
    return path


def random_image(rng, size=(6, 5)):
    return Image.fromarray(rng.integers(0, 256, size=(size[1], size[0], 3), dtype=np.uint8))


# One-line pass/fail summary per acceptance criterion.
_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if report.when == "call" or (report.when == "setup" and not report.passed):
            status = {"passed": "PASS", "failed": "FAIL"}.get(report.outcome, "SKIP")
            _ACCEPTANCE.append(f"{status}  {doc}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
