import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from relq.closure import ClosureSpace
from relq.corpus import closure_space_forms, lattice_forms, lattice_from_form, poset_forms, from_form

# every law runs on at least 1000 generated cases, reproducibly
settings.register_profile(
    "laws", max_examples=1000, derandomize=True, deadline=None, database=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("RELQ_HYPOTHESIS_PROFILE", "laws"))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ALL_POSET_FORMS = [f for n in range(1, 5) for f in poset_forms(n)]
ALL_LATTICE_FORMS = [f for n in range(1, 6) for f in lattice_forms(n)]
ALL_SPACE_FORMS = [f for n in range(1, 4) for f in closure_space_forms(n)]


@st.composite
def posets(draw):
    return from_form(draw(st.sampled_from(ALL_POSET_FORMS)))


@st.composite
def lattices(draw):
    return lattice_from_form(draw(st.sampled_from(ALL_LATTICE_FORMS)))


@st.composite
def spaces(draw):
    form = draw(st.sampled_from(ALL_SPACE_FORMS))
    n = max(form).bit_length()
    return ClosureSpace(tuple("xyz"[:n]), tuple(sorted(form, key=lambda m: (m.bit_count(), m))))


def subsets(n):
    return st.integers(min_value=0, max_value=(1 << n) - 1)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
