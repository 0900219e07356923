from __future__ import annotations

import numpy as np
import pytest

from rbacs.core import TspInstance
from rbacs.tsplib import NodeCoord, bundled_path, parse_tour, read_instance_file

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} :: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


def load_bundled(name: str) -> TspInstance:
    return TspInstance.from_tsplib(*read_instance_file(bundled_path(name)))


def load_opt_tour(name: str) -> list[int]:
    return parse_tour(bundled_path(name, ".opt.tour").read_text())


def random_instance(seed: int, n: int = 8, span: int = 100) -> TspInstance:
    rng = np.random.default_rng(seed)
    xy = rng.integers(0, span, size=(n, 2))
    return TspInstance.from_coords([NodeCoord(i + 1, int(x), int(y)) for i, (x, y) in enumerate(xy)])


@pytest.fixture(scope="session")
def eil51() -> TspInstance:
    return load_bundled("eil51")


@pytest.fixture
def triangle() -> TspInstance:
    return TspInstance(np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))


@pytest.fixture
def unit_square() -> TspInstance:
    coords = [NodeCoord(1, 0, 0), NodeCoord(2, 0, 1), NodeCoord(3, 1, 1), NodeCoord(4, 1, 0)]
    return TspInstance.from_coords(coords)
