import itertools
from functools import lru_cache

from hypothesis import strategies as st

from hecke_orbits.core import QElement, is_squarefree
from hecke_orbits.counting import even_divisors
from hecke_orbits.reduction import sample_elements

SMALL_N = [n for n in range(1, 51) if is_squarefree(n)]
SAMPLE_BOUND_A = 1000
SAMPLE_PER_N = 323  # 31 square-free n <= 50, so 10013 elements in all


@lru_cache(maxsize=None)
def standard_sample() -> tuple[QElement, ...]:
    """At least 10^4 elements over square-free n <= 50, |a| <= 1000."""
    out = []
    for n in SMALL_N:
        out.extend(itertools.islice(sample_elements(n, SAMPLE_BOUND_A, seed=n), SAMPLE_PER_N))
    return tuple(out)


@st.composite
def elements(draw, ns=tuple(SMALL_N), max_a=200):
    n = draw(st.sampled_from(ns))
    a = draw(st.integers(-max_a, max_a).filter(lambda a: (a - n) % 2 == 0))
    m = a * a + n
    c = draw(st.sampled_from(even_divisors(m))) * draw(st.sampled_from((1, -1)))
    return QElement(a, m // c, c, n)


def expanded_all_tn(e) -> bool:
    """Reference for the TN-quadruplet test: apply y three times and classify."""
    from hecke_orbits.classification import TN, classify
    from hecke_orbits.core import apply_y

    cur = e
    for _ in range(4):
        if classify(cur) is not TN:
            return False
        cur = apply_y(cur)
    return True
