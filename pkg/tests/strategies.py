"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from g2su3.exalg import Form, blades

FRAME6 = (1, 2, 3, 4, 5, 6)
FRAME7 = (1, 2, 3, 4, 5, 6, 7)

small = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def forms(draw, frame=FRAME7, degree=None, max_degree=None):
    k = degree if degree is not None else draw(st.integers(0, max_degree if max_degree is not None else len(frame)))
    bs = blades(frame, k)
    chosen = draw(st.lists(st.sampled_from(bs), max_size=min(len(bs), 8), unique=True)) if bs else []
    return Form(frame, k, {b: draw(small) for b in chosen})


@st.composite
def so6(draw):
    a = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i + 1, 6):
            v = draw(small)
            a[i][j], a[j][i] = v, -v
    return a
