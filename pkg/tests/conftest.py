import math

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SQRT_PI = math.sqrt(math.pi)


def gauss_m(r: float) -> float:
    """M(r; 1/2) in closed form."""
    return math.exp(-r * r / 4.0) / SQRT_PI
