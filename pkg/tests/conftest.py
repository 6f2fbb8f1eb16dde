from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from lcmlattice.enumeration import enumerate_meet_semilattices

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def semilattices(min_n: int = 1, max_n: int = 7):
    """Strategy drawing one enumerated meet semilattice."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.sampled_from(enumerate_meet_semilattices(n))
    )


ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
