"""Shared fixtures and random-instance builders."""

from fractions import Fraction

import numpy as np
import pytest

from bwmllsm import BwmInstance, validate_bwm


def example1_instance() -> BwmInstance:
    """The published 6-alternative matrix whose best alternative loses."""
    return validate_bwm(
        n=6, best=1, worst=6,
        best_to_others={2: 2, 3: 2, 4: 2, 5: 2},
        others_to_worst={2: 9, 3: 2, 4: 2, 5: 2},
        best_to_worst=2,
    )


@pytest.fixture
def example1() -> BwmInstance:
    return example1_instance()


def random_instance(rng: np.random.Generator, n: int, scale=range(2, 10)) -> BwmInstance:
    """Uniform iid judgments over the scale, best = 1, worst = n."""
    scale = list(scale)
    middles = list(range(2, n))

    def draw():
        return scale[rng.integers(0, len(scale))]

    return validate_bwm(
        n=n, best=1, worst=n,
        best_to_others={j: draw() for j in middles},
        others_to_worst={j: draw() for j in middles},
        best_to_worst=draw(),
    )


def random_theorem1_instance(rng: np.random.Generator, n: int, p: int = 2) -> BwmInstance:
    """Entries sampled from the integer band [p, min(9, p^3)]: passes Theorem 1."""
    hi = min(9, p ** 3)
    return random_instance(rng, n, scale=range(p, hi + 1))


def random_theorem2_instance(rng: np.random.Generator, n: int, p: int = 2) -> BwmInstance:
    """Middle entries in [p, cap], best-vs-worst raised to the maximum drawn.

    cap is the integer part of min(9, p^(4/(n-3)+3)), so the instance
    satisfies every Theorem 2 premise by construction.
    """
    cap = min(9.0, float(p) ** (4.0 / (n - 3) + 3.0))
    hi = int(cap + 1e-9)
    scale = list(range(p, hi + 1))
    middles = list(range(2, n))

    def draw():
        return scale[rng.integers(0, len(scale))]

    bto = {j: draw() for j in middles}
    otw = {j: draw() for j in middles}
    top = max([*bto.values(), *otw.values()])
    a_bw = scale[rng.integers(scale.index(top), len(scale))]
    return validate_bwm(n=n, best=1, worst=n, best_to_others=bto,
                        others_to_worst=otw, best_to_worst=a_bw)


def consistent_pcm_vector(rng: np.random.Generator, n: int):
    """Random positive rationals in [1/2, 2]: all ratios stay on the Saaty range."""
    return [Fraction(int(rng.integers(8, 33)), 16) for _ in range(n)]
