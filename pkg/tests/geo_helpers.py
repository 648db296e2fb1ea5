"""Shared geometry fixtures: seeded random profiles and generator nets."""

import math

import numpy as np

from liechannel import builder
from liechannel.cli import random_generator_net


def random_revolution_profile(rng: np.random.Generator, n: int):
    xs = 1.5 + rng.uniform(-0.35, 0.35, n)
    zs = np.cumsum(0.45 + rng.uniform(0.0, 0.35, n))
    profile = np.stack([xs, np.zeros(n), zs], axis=1)
    ang = rng.uniform(-0.5, 0.5)
    n0 = np.array([math.cos(ang), 0.0, math.sin(ang)])
    return profile, builder.propagate_profile_normals(profile, n0)


def revolution_net(seed: int = 0, n_profile: int = 8, m: int = 10):
    return random_generator_net("revolution", seed, n_profile, m)


def cylinder_net(seed: int = 0, n_profile: int = 8, m: int = 8):
    return random_generator_net("cylinder", seed, n_profile, m)


def cone_net(seed: int = 0, n_profile: int = 8, m: int = 8):
    return random_generator_net("cone", seed, n_profile, m)
