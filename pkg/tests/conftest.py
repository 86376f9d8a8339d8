from pathlib import Path

import pytest

from otfsm import build_fill, build_gen_syllabification, build_ons

DATA = Path(__file__).resolve().parent.parent / "data" / "alqalamu"

SEGMENTS = "a l q a l a m u".split()
VOWELS = {"a", "u"}

# the single optimal syllabification
OPTIMUM = ("O:0", "N:a", "C:l", "O:q", "N:a", "O:l", "N:a", "O:m", "N:u")
# (al)(qal)(am)(u), accepted by GEN
AL_QAL_AM_U = ("N:a", "C:l", "O:q", "N:a", "C:l", "N:a", "C:m", "N:u")
# (alq)(al)(am)(u), rejected by GEN
ALQ_AL_AM_U = ("N:a", "C:l", "C:q", "N:a", "C:l", "N:a", "C:m", "N:u")
# (al)(qa)(la)(mu)
AL_QA_LA_MU = ("N:a", "C:l", "O:q", "N:a", "O:l", "N:a", "O:m", "N:u")


@pytest.fixture(scope="session")
def gen():
    return build_gen_syllabification(SEGMENTS, VOWELS)


@pytest.fixture(scope="session")
def ons(gen):
    return build_ons(gen.alphabet)


@pytest.fixture(scope="session")
def fill(gen):
    return build_fill(gen.alphabet)


@pytest.fixture
def data_dir():
    return DATA
