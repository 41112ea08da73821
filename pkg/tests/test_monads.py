"""Monad data and laws; xi closed forms recomputed independently."""

from itertools import product

import pytest

from tvcat.monads import (FormatError, LabelledMonad, Monoid, WordMonad, can_map,
                          check_bc_samples, check_monad_laws, monad_by_name,
                          monad_from_dict, z2)
from tvcat.quantale import lukasiewicz, two

XS = ("a", "b")


def test_identity_monad_is_trivial(q2):
    m = monad_by_name("identity")
    assert m.carrier(XS) == XS
    assert m.unit("a") == "a"
    assert m.mult("a") == "a"
    assert m.xi(1, q2) == 1
    assert check_monad_laws(m, XS, q2).status == "pass"


def test_finite_ultrafilter_reduces_to_identity(q2):
    m = monad_by_name("finite_ultrafilter")
    assert m.kind == "finite_ultrafilter"
    assert m.carrier(XS) == XS
    assert check_monad_laws(m, XS, q2).status == "pass"


def test_word_carrier_counts():
    # words of length <= L over an alphabet of size k: sum k^i
    for L in (1, 2, 3):
        m = WordMonad(L)
        assert len(m.carrier(XS)) == sum(2 ** i for i in range(L + 1))


def test_word_mult_truncation():
    m = WordMonad(2)
    assert m.mult((("a",), ("b",))) == ("a", "b")
    assert m.mult((("a", "b"), ("a",))) is None
    assert m.mult(((), ())) == ()
    assert m.unit("a") == ("a",)


def test_word_xi_is_tensor_fold():
    q = lukasiewicz(3)
    m = WordMonad(3)
    for w in m.carrier(tuple(range(q.n))):
        expect = q.unit
        for v in w:
            expect = q.tens(expect, v)
        assert m.xi(w, q) == expect
        assert m.xi_of_values(list(w), q) == expect
    assert m.xi((), q) == q.unit


def test_word_laws_bounded(q2):
    rep = check_monad_laws(WordMonad(2), XS, q2)
    assert rep.status == "bounded-pass"
    assert rep.skipped > 0


def test_labelled_monad_shape(q2):
    m = monad_by_name("labelled:z2")
    assert set(m.carrier(("x",))) == {("x", "e"), ("x", "g")}
    assert m.unit("x") == ("x", "e")
    assert m.mult((("x", "g"), "g")) == ("x", "e")
    assert m.xi((1, "g"), q2) == 1
    assert check_monad_laws(m, XS, q2).status == "pass"


def test_monoid_validation():
    with pytest.raises(FormatError):
        Monoid(("e", "g"), ((0, 1), (0, 0)), 0)  # unit law fails on the right
    m = z2()
    assert m.mul("g", "g") == "e"


def test_can_map_components():
    m = WordMonad(2)
    cm = can_map(m, ("x",), ("y", "z"))
    w = (("x", "y"), ("x", "z"))
    assert cm[w] == (("x", "x"), ("y", "z"))
    ident = monad_by_name("identity")
    assert can_map(ident, XS, XS)[("a", "b")] == ("a", "b")


def test_can_map_word_surjective_on_equal_lengths():
    # every pair of equal-length words is hit by exactly one joint word
    m = WordMonad(2)
    cm = can_map(m, XS, XS)
    hits = {}
    for w, pair in cm.items():
        hits.setdefault(pair, []).append(w)
    for wx in m.carrier(XS):
        for wy in m.carrier(XS):
            if len(wx) == len(wy):
                assert len(hits[(wx, wy)]) == 1
            else:
                assert (wx, wy) not in hits


def test_serialization_roundtrip():
    for spec in ("identity", "finite_ultrafilter", "word:3", "labelled:z2"):
        m = monad_by_name(spec)
        m2 = monad_from_dict(m.describe())
        assert type(m2) is type(m)
        assert m2.carrier(XS) == m.carrier(XS)


def test_bad_specs():
    with pytest.raises(FormatError):
        monad_by_name("word:x")
    with pytest.raises(FormatError):
        monad_by_name("nosuch")
    with pytest.raises(FormatError):
        monad_from_dict({"kind": "word"})


@pytest.mark.parametrize("spec", ["identity", "word:2", "labelled:z2"])
def test_bc_squares(spec):
    rep = check_bc_samples(monad_by_name(spec))
    assert rep.passed


def test_labelled_monad_custom_monoid(q2):
    # three-element cyclic monoid
    z3 = Monoid(("0", "1", "2"),
                tuple(tuple((i + j) % 3 for j in range(3)) for i in range(3)), 0)
    m = LabelledMonad(z3)
    assert check_monad_laws(m, XS, q2).status == "pass"
    assert len(m.carrier(XS)) == 6
