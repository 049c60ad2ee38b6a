import pytest
from hypothesis import given, strategies as st

from thurston4.words import Context, Word, parse
from thurston4.wreath import (BUILTINS, Contracting, Perm, Unknown, WreathElement,
                              WreathError, act_level, apply, apply_letters, builtin, load,
                              nucleus_search, perm_order, phi_cross_check, restriction,
                              witness_power, wreath_inv, wreath_mul)

from conftest import H_words, free4_words, moduli_words

M = Context.MODULI


def el(secs, perm, d=4, ctx=M):
    return WreathElement(tuple(parse(s, ctx) for s in secs), Perm.parse(perm, d))


def test_perm_composition_is_left_first():
    assert Perm.parse("(1 4 2)", 4) * Perm.parse("(1 3 4)", 4) == Perm.parse("(2 3 4)", 4)
    assert str(Perm.parse("(1 3)(2 4)", 4)) == "(1 3)(2 4)"
    assert str(Perm.identity(3)) == "id"
    assert perm_order(Perm.parse("(1 2)(3 4 5)", 5)) == 6
    with pytest.raises(WreathError):
        Perm((1, 1, 2))


def test_worked_product():
    u = el(["e", "ba", "a", "B"], "(1 4 2)")
    v = el(["ba", "A", "e", "b"], "(1 3 4)")
    assert wreath_mul(u, v) == el(["b", "baba", "a", "BA"], "(2 3 4)")
    ident = WreathElement.identity(4, M)
    assert u * ident == u
    assert (u * wreath_inv(u)).is_identity()


def test_degree_mismatch():
    with pytest.raises(WreathError):
        wreath_mul(el(["e"] * 4, "id"), el(["e"] * 3, "id", d=3))


def test_builtins_verbatim():
    phi_m = builtin("phi-moduli")
    assert apply(phi_m, parse("b")) == el(["B", "ba", "e", "a"], "(1 2 3)")
    assert apply(phi_m, parse("a")) == el(["ba", "b", "A", "e"], "(1 3 4)")
    phi_f = builtin("phi-f")
    D = Context.DYNAMICAL
    assert apply(phi_f, parse("a", D)) == el(["e", "e", "b"], "(1 3)", 3, D)
    assert phi_f.images[4] == el(["d", "e", "e"], "(1 2)", 3, D)
    phi_g = builtin("phi-g")
    assert phi_g.images[1] == el(["e", "BDC", "e"], "(1 2)", 3, Context.FREE4)
    assert set(BUILTINS) == {"phi-moduli", "phi-f", "phi-g", "phi-f-b2"}
    with pytest.raises(WreathError):
        builtin("nope")


def test_apply_examples():
    r = builtin("phi-moduli")
    assert apply(r, parse("bababa")) == el(["ba", "ba", "bababa", "ab"], "id")
    assert apply(r, parse("aaa")).sections[0] == parse("b")
    assert apply_letters(builtin("phi-f"), (1, 3, 2, 4)).is_identity()
    with pytest.raises(WreathError):
        apply(r, parse("a", Context.FREE4))


def test_d_image_consistent_with_relation():
    r = builtin("phi-f")
    assert apply_letters(r, (4,)) == apply(r, parse("d", Context.DYNAMICAL))


def test_witness_powers():
    assert all(witness_power(n) for n in range(1, 7))


def test_restriction_and_levels():
    r = builtin("phi-moduli")
    assert restriction(r, parse("bababa"), [3]) == parse("bababa")
    assert restriction(r, parse("bababa"), [3, 3, 3]) == parse("bababa")
    with pytest.raises(WreathError):
        restriction(r, parse("a"), [5])
    f = builtin("phi-f")
    assert act_level(f, parse("a", Context.DYNAMICAL), 1) == Perm.parse("(1 3)", 3)
    for n in range(0, 4):
        assert act_level(f, Word((), Context.DYNAMICAL), n).is_identity()
    with pytest.raises(WreathError):
        act_level(f, parse("a", Context.DYNAMICAL), 13)


def test_nucleus_search_results():
    assert isinstance(nucleus_search(builtin("phi-f-b2"), 200, 50), Contracting)
    res = nucleus_search(builtin("phi-moduli"), 200, 50)
    assert isinstance(res, Unknown)
    assert res.max_length >= 12 and res.longest


def test_nucleus_of_trivial_recursion():
    r = load("degree 2\ncontext moduli\ngen a = <e, e>\ngen b = <e, e>")
    res = nucleus_search(r)
    assert isinstance(res, Contracting)
    assert res.nucleus == frozenset(parse(s) for s in ("e", "a", "A", "b", "B"))
    assert res.core == frozenset({Word()})


def test_loader_errors():
    with pytest.raises(WreathError):
        load("gen a = <e, e> (1 2)")
    with pytest.raises(WreathError):
        load("degree 2\ngen a = <e> (1 2)\ngen b = <e, e>\ngen c = <e, e>\ngen d = <e, e>")
    with pytest.raises(WreathError):
        load("degree 2\ncontext moduli\ngen a = <e, e> (1 3)\ngen b = <e, e>")
    with pytest.raises(WreathError):
        load("degree 2\ncontext moduli\ngen a = <e, e>")


def test_loader_roundtrip():
    r = builtin("phi-g")
    again = load(str(r))
    assert again.images == r.images and again.context == r.context


def test_phi_cross_check_examples():
    assert phi_cross_check(parse("aaa"))
    assert phi_cross_check(parse("bbb"))


@given(H_words)
def test_phi_cross_check(w):
    assert phi_cross_check(w)


@given(moduli_words, moduli_words)
def test_apply_homomorphism(u, v):
    r = builtin("phi-moduli")
    assert apply(r, u * v) == wreath_mul(apply(r, u), apply(r, v))


@given(free4_words, st.lists(st.integers(1, 3), min_size=1, max_size=3),
       st.lists(st.integers(1, 3), max_size=3))
def test_restriction_composes(w, v1, v2):
    r = builtin("phi-g")
    assert restriction(r, w, v1 + v2) == restriction(r, restriction(r, w, v1), v2)


@given(free4_words, st.integers(0, 4))
def test_levels_compatible(w, n):
    r = builtin("phi-g")
    fine, coarse = act_level(r, w, n + 1), act_level(r, w, n)
    # vertex i at level n+1 sits below vertex (i - 1) // 3 + 1 at level n
    for i in range(1, 3 ** (n + 1) + 1):
        assert (fine(i) - 1) // 3 + 1 == coarse((i - 1) // 3 + 1)
