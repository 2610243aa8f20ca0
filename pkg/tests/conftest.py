from __future__ import annotations

import os
import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from deltalens.corpus import acceptance_corpus  # noqa: E402
from deltalens.sopf import check_sopf_pullback  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = ROOT / "src" / "deltalens" / "sample_files"
GOLDEN = Path(__file__).parent / "golden"


@lru_cache(maxsize=None)
def corpus():
    return tuple(acceptance_corpus())


@lru_cache(maxsize=None)
def corpus_lenses():
    return tuple(inst.lens for inst in corpus())


@lru_cache(maxsize=None)
def sopf_lenses():
    return tuple(L for L in corpus_lenses() if check_sopf_pullback(L).holds)


@pytest.fixture(scope="session")
def lenses():
    return corpus_lenses()


@pytest.fixture(scope="session")
def sopf_members():
    return sopf_lenses()


# -- acceptance summary -------------------------------------------------

_CRITERIA: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    key = report.nodeid.split("::test_criterion_")[1]
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA[key] = _CRITERIA.get(key, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split("_")[0])):
        number, _, title = key.partition("_")
        verdict = "PASS" if _CRITERIA[key] else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {number}: {title.replace('_', ' ')}")
