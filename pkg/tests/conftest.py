from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from hodgeball.scalar import GaussianRational

settings.register_profile(
    "exact", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
gaussians = st.builds(GaussianRational, rationals, rationals)
