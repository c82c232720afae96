"""Shared fixtures: random samplers and cached convergence sweeps."""
from __future__ import annotations

import math
import random

import pytest

from conicsteps import (
    Conic,
    ConvergenceReport,
    Ellipse,
    Hyperbola,
    Parabola,
    Placement,
    SweepConfig,
    run_sweep,
    standard_anchors,
)


def random_ellipse(rng: random.Random, placed: bool = False) -> Conic:
    a = rng.uniform(1.0, 10.0)
    b = rng.uniform(0.3 * a, a)
    return Conic(Ellipse(a, b), _placement(rng) if placed else Placement())


def random_parabola(rng: random.Random, placed: bool = False) -> Conic:
    p = rng.uniform(0.2, 5.0)
    return Conic(Parabola(p), _placement(rng) if placed else Placement())


def random_hyperbola(rng: random.Random, placed: bool = False) -> Conic:
    a = rng.uniform(0.5, 6.0)
    b = rng.uniform(0.5, 6.0)
    branch = rng.choice((1, -1))
    return Conic(Hyperbola(a, b, branch), _placement(rng) if placed else Placement())


def random_conic(rng: random.Random, placed: bool = False) -> Conic:
    pick = rng.randrange(3)
    if pick == 0:
        return random_ellipse(rng, placed)
    if pick == 1:
        return random_parabola(rng, placed)
    return random_hyperbola(rng, placed)


def random_param(rng: random.Random, conic: Conic) -> float:
    if conic.kind == "ellipse":
        return rng.uniform(0.0, 2.0 * math.pi)
    if conic.kind == "parabola":
        return rng.uniform(-2.5, 2.5)
    return rng.uniform(-1.5, 1.5)


def _placement(rng: random.Random) -> Placement:
    return Placement(
        rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0), rng.uniform(-math.pi, math.pi)
    )


# One verdict line per acceptance criterion, filled by test_acceptance.py
# and echoed as a terminal section so the lines survive output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def anchor_set():
    """The bundled (conic, anchor) fixture pairs: 8 per family."""
    return standard_anchors()


@pytest.fixture(scope="session")
def standard_sweeps(anchor_set) -> tuple[ConvergenceReport, ...]:
    """All-metric sweeps (delta0=0.1, 6 halvings) at every fixture anchor.

    Shared by the convergence-oriented acceptance criteria so the sweep
    work runs once per session.
    """
    reports = []
    for conic, anchor in anchor_set:
        cfg = SweepConfig(conic=conic, anchor=anchor, delta0=0.1, halvings=6)
        reports.append(run_sweep(cfg))
    return tuple(reports)
