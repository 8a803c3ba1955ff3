from __future__ import annotations

from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
CORPUS_DIR = TESTS_DIR / "corpus"
GOLDEN_DIR = TESTS_DIR / "golden"


def corpus_source(name: str) -> str:
    return (CORPUS_DIR / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def p1_source() -> str:
    return corpus_source("p1_build_tree.jalgo")


@pytest.fixture(scope="session")
def p2_source() -> str:
    return corpus_source("p2_counting_loop.jalgo")


@pytest.fixture(scope="session")
def p3_source() -> str:
    return corpus_source("p3_factorial.jalgo")
