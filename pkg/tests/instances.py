"""Random problem instances shared by the acceptance and property tests."""

import numpy as np

from gsbcast import BroadcastChannel


def random_channel(rng, K=None, k_max=6):
    K = int(rng.integers(1, k_max + 1)) if K is None else K
    noise = np.sort(10.0 ** rng.uniform(-2, 2, K))[::-1]
    power = 10.0 ** rng.uniform(-1, 3)
    b = rng.uniform(0.25, 4.0)
    return BroadcastChannel(tuple(noise), power, b)


def random_distortions(rng, K, low_exp=-4.0):
    return tuple(np.sort(10.0 ** rng.uniform(low_exp, 0.0, K))[::-1])


def scaled_valid(rng, K, scale):
    """d with scale[k] * d[k] still a valid distortion vector."""
    s = random_distortions(rng, K)
    return tuple(x / c for x, c in zip(s, scale))
