import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from evolab.algebra import EvolutionAlgebra
from evolab.documents import load_corpus
from evolab.field import GF, QQ

settings.register_profile(
    "evolab",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "evolab"))


@pytest.fixture(scope="session")
def corpus():
    return {name: doc.algebra() for name, doc in load_corpus().items()}


def algebra(rows, field=QQ):
    return EvolutionAlgebra(field, tuple(tuple(field.coerce(x) for x in r) for r in rows))


def gf_algebras(p, min_n=1, max_n=4):
    """Strategy for arbitrary structure matrices over GF(p)."""
    f = GF(p)

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n))
        return algebra(rows, f)

    return build()


def gf_vectors(p, n):
    return st.lists(st.integers(0, p - 1), min_size=n, max_size=n).map(tuple)
