from pathlib import Path

import pytest

from dsp.presentation import parse_presentation

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

TREFOIL = "gens: x y\nrel: x^2 y^-3\n"
Q8 = "gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b^-1 a b a\n"
S3 = "gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b\n"
FREE2 = "gens: a b\n"
BINARY_ICOSAHEDRAL = "gens: s t\nrel: s^3 t^-1 s^-1 t^-1 s^-1\nrel: t^5 t^-1 s^-1 t^-1 s^-1\n"


def corpus_files():
    return sorted(CORPUS.glob("*.grp"))


@pytest.fixture
def trefoil():
    return parse_presentation(TREFOIL)


@pytest.fixture
def q8():
    return parse_presentation(Q8)


@pytest.fixture
def s3():
    return parse_presentation(S3)


@pytest.fixture
def free2():
    return parse_presentation(FREE2)


@pytest.fixture
def binary_icosahedral():
    return parse_presentation(BINARY_ICOSAHEDRAL)
