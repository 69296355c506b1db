from __future__ import annotations

from hypothesis import settings
from hypothesis import strategies as st

from braidcg.braid_core import BraidWord, make_pure

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def words(draw, n=None, min_n=2, max_n=8, max_len=30):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    letters = draw(
        st.lists(
            st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))),
            max_size=max_len,
        )
    )
    return BraidWord(n, tuple(letters))


@st.composite
def word_pairs(draw, min_n=2, max_n=8, max_len=30):
    n = draw(st.integers(min_n, max_n))
    return draw(words(n=n, max_len=max_len)), draw(words(n=n, max_len=max_len))


@st.composite
def pure_words(draw, n=None, min_n=2, max_n=6, max_len=20):
    return make_pure(draw(words(n=n, min_n=min_n, max_n=max_n, max_len=max_len)))


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
