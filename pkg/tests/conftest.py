import os
import random
import sys

import numpy as np
import pytest

import chaopad

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def fixture_bits(n, seed):
    """Deterministic pseudo-random bits shared with the oracle scripts."""
    value = random.Random(seed).getrandbits(n)
    return np.frombuffer(format(value, f"0{n}b").encode(), dtype=np.uint8) - ord("0")


@pytest.fixture(scope="session")
def seed_image():
    return chaopad.bundled_image()


@pytest.fixture(scope="session")
def key_a():
    return chaopad.bundled_key("A")
