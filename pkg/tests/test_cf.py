from hypothesis import given, strategies as st

from thurston4.cf import (cf_labels, decompose, decompose_pair, format_mat_letters,
                          recompose, stabilizer)
from thurston4.projective import ExtRational, act, fixed_point, mat_product, right_act

Q = ExtRational.parse


def test_seven_twelfths():
    d = decompose(Q("7/12"))
    assert d.mat_letters == (-1, -2, -2, -1)
    assert d.terminal == Q("1/0")
    assert format_mat_letters(d.mat_letters) == "A⁻¹ B⁻¹ B⁻¹ A⁻¹"
    assert str(d.fund_word) == "ABBA"
    assert cf_labels(d) == "[(0,1);(-inf,-1);(-inf,-1);(0,1);1/0]"


def test_small_cases():
    d = decompose(Q("0/1"))
    assert d.mat_letters == () and d.terminal == Q("0/1")
    assert cf_labels(d) == "[0/1]"
    d = decompose(Q("-1/1"))
    assert d.mat_letters == (1,) and d.terminal == Q("1/1")
    d = decompose(Q("2/1"))
    assert d.mat_letters == (2,) and d.terminal == Q("0/1")
    assert cf_labels(d) == "[(1,inf);0/1]"


def test_recompose_examples():
    assert recompose(decompose(Q("7/12"))) == Q("7/12")
    assert act(mat_product([2]), Q("0/1")) == Q("2/1")
    assert recompose(decompose(Q("1/1"))) == Q("1/1")


def test_stabilizers():
    assert stabilizer(Q("0/1")) == ((), (1,))
    assert stabilizer(Q("1/0")) == ((), (2,))
    w, v = stabilizer(Q("9/5"))
    assert w == (2, 1, 1)
    assert v in ((1, 2), (-2, -1))       # A B or its inverse generate the same stabilizer
    inv = tuple(-x for x in reversed(w))
    assert fixed_point(mat_product(w + v + inv)) == Q("9/5")


def test_exhaustive_small_range():
    height = 150
    for q in range(0, height + 1):
        for p in range(-height, height + 1):
            if (p, q) == (0, 0):
                continue
            x = ExtRational(p, q)
            if (x.p, x.q) != (p, q):
                continue
            d = decompose(x)
            assert recompose(d) == x
            assert right_act(d.terminal, d.fund_word) == x
            assert len(d.mat_letters) <= 2 * x.height + 2


@given(st.integers(-10**4, 10**4), st.integers(1, 10**4))
def test_height_decreases(p, q):
    x = ExtRational(p, q)
    (tp, tq), letters, tags = decompose_pair(x.p, x.q)
    pts = [x]
    for letter in letters:
        pts.append(act(mat_product([-letter]), pts[-1]))
    assert pts[-1] == ExtRational(tp, tq)
    for a, b in zip(pts, pts[1:]):
        assert b.height < a.height or (a == Q("-1/1") and b == Q("1/1"))


@given(st.integers(-10**4, 10**4), st.integers(1, 10**4))
def test_stabilizer_fixes(p, q):
    x = ExtRational(p, q)
    w, v = stabilizer(x)
    inv = tuple(-y for y in reversed(w))
    assert fixed_point(mat_product(w + v + inv)) == x
