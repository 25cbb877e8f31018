import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def interior_points(rng, count, radius=0.8, gap=0.1):
    """Random finite points of Omega with |1 - zw| > gap."""
    pts = []
    while len(pts) < count:
        z, w = (complex(*rng.uniform(-radius, radius, 2)) for _ in range(2))
        if abs(1 - z * w) > gap:
            pts.append((z, w))
    return pts
