from __future__ import annotations

import random

from hypothesis import settings, strategies as st

from stabgeom.field import field_of_order
from stabgeom.linalg import subspace_from_rows

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELD_ORDERS = (2, 3, 4, 5, 9)


@st.composite
def subspaces(draw, q=None, ambient=None, max_ambient=7):
    """A random subspace (rows drawn uniformly, so any dimension is possible)."""
    q = draw(st.sampled_from(FIELD_ORDERS)) if q is None else q
    n = draw(st.integers(0, max_ambient)) if ambient is None else ambient
    k = draw(st.integers(0, n + 1))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    return subspace_from_rows(field_of_order(q), n, rows)


@st.composite
def subspace_pairs(draw, max_ambient=7):
    q = draw(st.sampled_from(FIELD_ORDERS))
    n = draw(st.integers(0, max_ambient))
    return draw(subspaces(q=q, ambient=n)), draw(subspaces(q=q, ambient=n))


def random_rows(rng: random.Random, q: int, n: int, k: int) -> list[list[int]]:
    return [[rng.randrange(q) for _ in range(n)] for _ in range(k)]


# --------------------------------------------------------------------------
# acceptance report: one line per criterion at the end of the run

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c}: {'PASS' if ok else 'FAIL'} - {detail}")
