import pytest
from hypothesis import strategies as st

from esakia.posets import FinitePoset, from_relation


@pytest.fixture(scope="session")
def zoo():
    """Small named posets used across the suite."""
    fs = frozenset
    return {
        "one": FinitePoset(1, fs()),
        "chain2": FinitePoset(2, fs({(0, 1)}), ("r", "a")),
        "chain3": FinitePoset(3, fs({(0, 1), (1, 2)})),
        "chain4": FinitePoset(4, fs({(0, 1), (1, 2), (2, 3)})),
        "anti2": FinitePoset(2, fs()),
        "vee": FinitePoset(3, fs({(0, 1), (0, 2)}), ("b", "t1", "t2")),
        "lam": FinitePoset(3, fs({(1, 0), (2, 0)}), ("t", "a", "b")),
        "broom": FinitePoset(4, fs({(0, 1), (1, 2), (1, 3)})),
    }


@st.composite
def posets(draw, max_n: int = 6):
    n = draw(st.integers(1, max_n))
    rel = []
    for j in range(n):
        for i in range(j):
            if draw(st.booleans()):
                rel.append((i, j))
    up = [1 << i for i in range(n)]
    for i in reversed(range(n)):
        for a, b in rel:
            if a == i:
                up[i] |= up[b]
    pairs = [(i, j) for i in range(n) for j in range(n) if up[i] >> j & 1]
    return from_relation(n, pairs)


@st.composite
def trees(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    covers = frozenset(
        (draw(st.integers(0, i - 1)), i) for i in range(1, n))
    return FinitePoset(n, covers)


@st.composite
def forests(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    covers = set()
    for i in range(1, n):
        parent = draw(st.integers(-1, i - 1))
        if parent >= 0:
            covers.add((parent, i))
    return FinitePoset(n, frozenset(covers))
