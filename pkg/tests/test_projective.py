import pickle

import pytest
from hypothesis import given, strategies as st

from thurston4.cf import decompose
from thurston4.projective import (ExtRational, MobiusMat, ParityClass, ProjectiveError, act,
                                  fixed_point, gen_matrix, is_parabolic, mat_product,
                                  parity_class, right_act, slope_to_boundary, word_to_matrix)
from thurston4.words import parse

from conftest import moduli_words

Q = ExtRational.parse
A, B = gen_matrix("a"), gen_matrix("b")

fractions = st.tuples(st.integers(-500, 500), st.integers(0, 500)).filter(
    lambda t: t != (0, 0)).map(lambda t: ExtRational(*t))


def test_normalization():
    assert ExtRational(2, -4) == Q("-1/2")
    assert ExtRational(-3, 0) == Q("1/0")
    assert ExtRational(0, -5) == Q("0/1")
    assert str(Q("-6/4")) == "-3/2"
    assert Q("7") == ExtRational(7, 1)
    with pytest.raises(ProjectiveError):
        ExtRational(0, 0)
    with pytest.raises(ValueError):
        Q("1/2/3")


def test_generators():
    assert A.rows == ((1, 0), (-2, 1))
    assert B.rows == ((1, 2), (0, 1))
    assert gen_matrix("A").rows == ((1, 0), (2, 1))
    with pytest.raises(ValueError):
        gen_matrix("c")


def test_matrix_invariants():
    with pytest.raises(ValueError):
        MobiusMat(1, 1, 1, 1)
    assert MobiusMat(-1, 0, 2, -1) == MobiusMat(1, 0, -2, 1)
    assert (A @ A.inverse()).is_identity()
    assert A.in_gamma2() and B.in_gamma2()


def test_act_examples():
    assert act(A, Q("0/1")) == Q("0/1")
    assert act(B, Q("1/0")) == Q("1/0")
    assert act(A, Q("1/1")) == Q("-1/1")
    assert act(mat_product([-2, -1]), Q("-1/1")) == Q("-1/1")


def test_word_to_matrix_reverses():
    w = parse("AbaaB")
    assert word_to_matrix(w) == mat_product([-2, 1, 1, 2, -1])
    assert word_to_matrix(parse("e")).is_identity()
    assert word_to_matrix(parse("a")) == A


def test_right_act_examples():
    assert right_act(Q("1/0"), parse("AbaaB")) == Q("-41/18")
    assert right_act(Q("3/7"), parse("e")) == Q("3/7")
    assert right_act(Q("1/1"), parse("a")) == Q("-1/1")


def test_fixed_points():
    assert fixed_point(B) == Q("1/0")
    assert fixed_point(A) == Q("0/1")
    stab = mat_product([2, 1, 1, 1, 2, -1, -1, -2])      # B A^2 (A B) A^-2 B^-1
    assert is_parabolic(stab)
    assert fixed_point(stab) == Q("9/5")
    with pytest.raises(ValueError):
        fixed_point(A @ B.inverse())
    with pytest.raises(ValueError):
        fixed_point(MobiusMat.identity())


def test_parity_and_slopes():
    assert parity_class(Q("1/0")) is ParityClass.OE
    assert parity_class(Q("203/356")) is ParityClass.OE
    assert parity_class(Q("-1/1")) is ParityClass.OO
    assert slope_to_boundary(Q("1/0")) == Q("1/0")
    assert slope_to_boundary(Q("2/3")) == Q("-2/3")
    assert slope_to_boundary(Q("0/1")) == Q("0/1")


def test_pickle_roundtrip():
    x = Q("-41/18")
    assert pickle.loads(pickle.dumps(x)) == x
    assert pickle.loads(pickle.dumps(parse("abAB"))) == parse("abAB")


@given(moduli_words, fractions)
def test_parity_preserved(w, x):
    assert parity_class(act(word_to_matrix(w), x)) == parity_class(x)


@given(moduli_words, moduli_words, fractions)
def test_action_laws(u, v, x):
    mu, mv = word_to_matrix(u), word_to_matrix(v)
    assert act(mu, act(mv, x)) == act(mu @ mv, x)
    assert right_act(x, u * v) == right_act(right_act(x, u), v)


@given(moduli_words, st.sampled_from([(1,), (2,), (-2, -1)]))
def test_fixed_point_of_conjugates(w, v):
    m = word_to_matrix(w)
    vm = mat_product(v)
    assert fixed_point(m @ vm @ m.inverse()) == act(m, fixed_point(vm))


@given(fractions)
def test_orbit_representatives(x):
    # the terminal is one of the three transversal points (1/1 stands for -1/1)
    assert decompose(x).terminal in (Q("0/1"), Q("1/0"), Q("1/1"))
