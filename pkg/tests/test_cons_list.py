import gc
import operator

import pytest
from hypothesis import given, settings, strategies as st

from mediator_market import cons_list
from mediator_market.cons_list import (
    NIL, ConsList, _py_append, _py_length, _py_nth, _py_set, _tailrec_foldl,
    _tailrec_get_def, _tailrec_length, append, cons, foldl, get, length_def,
    length_fl, length_tr, set, set_def,
)

from conftest import random_lists

small_lists = st.lists(st.integers(0, 15), max_size=64)
indices = st.integers(0, 70)


def L(*xs):
    return ConsList.of(xs)


def list_set(xs, i, e):
    """Plain-list reference for a positional update."""
    ys = list(xs)
    if i < len(ys):
        ys[i] = e
    return ys


# -- construction and equality ----------------------------------------------

def test_nil_and_cons():
    assert NIL.is_nil and not NIL
    one = cons(1, NIL)
    assert one.head == 1 and one.tail == NIL
    assert list(cons(0, one)) == [0, 1]
    with pytest.raises(ValueError):
        NIL.head
    with pytest.raises(ValueError):
        NIL.tail


def test_structural_equality():
    assert L(1, 2, 3) == L(1, 2, 3)
    assert L(1, 2) != L(1, 2, 3)
    assert L(1, 2, 3) != L(1, 2)
    assert L(1, 2, 4) != L(1, 2, 3)
    assert L() == NIL
    assert hash(L(1, 2)) == hash(L(1, 2))
    assert L(1, 2) != [1, 2]
    assert repr(L(1, 2)) == "ConsList([1, 2])"


def test_equality_of_long_lists_does_not_recurse():
    xs = range(10**5)
    assert ConsList.of(xs) == ConsList.of(xs)


# -- fold and the three lengths -----------------------------------------------

def test_foldl_examples():
    assert foldl(NIL, 7, operator.add) == 7
    assert foldl(L(1, 2, 3), 0, operator.add) == 6
    # order matters: left fold
    assert foldl(L(1, 2, 3), "", lambda acc, x: acc + str(x)) == "123"
    assert _tailrec_foldl(L(4), 1, operator.add) == 5


def test_foldl_counts_like_length_def():
    for xs, lst in random_lists(1, 500):
        assert foldl(lst, 0, lambda acc, _: acc + 1) == length_def(lst) == len(xs)


def test_length_examples():
    assert length_def(NIL) == 0
    assert length_def(L("a", "b", "c")) == 3
    assert length_tr(NIL) == 0
    assert length_fl(NIL) == 0
    assert length_fl(L("x")) == 1


def test_three_lengths_agree():
    for xs, lst in random_lists(2, 1000):
        n = len(xs)
        assert length_fl(lst) == n
        assert length_tr(lst) == n
        assert length_def(lst) == n
        assert len(lst) == n


@pytest.mark.parametrize("accum", [0, 1, 17, 64])
def test_accumulator_lemma(accum):
    for _, lst in random_lists(3, 200):
        assert _tailrec_length(lst, accum) == _tailrec_length(lst, 0) + accum


def test_length_def_exhausts_the_stack_on_large_lists():
    with pytest.raises(RecursionError):
        length_def(ConsList.of(range(10**5)))


# -- get ---------------------------------------------------------------------

def test_get_examples():
    assert get(NIL, 0) is None
    assert get(L("x", "y", "z"), 1) == "y"
    assert get(L("x"), 2**70) is None


@given(small_lists, indices)
def test_get_matches_plain_indexing(xs, i):
    lst = ConsList.of(xs)
    expected = xs[i] if i < len(xs) else None
    assert get(lst, i) == expected
    assert _tailrec_get_def(lst, i, 0) == expected
    assert _py_nth(lst._cell, i, None) == expected


@given(small_lists, st.integers(0, 4))
def test_get_totality(xs, extra):
    lst = ConsList.of(xs)
    assert get(lst, len(xs) + extra) is None
    for i in range(len(xs)):
        assert get(lst, i) is not None


# -- set ---------------------------------------------------------------------

def test_set_def_examples():
    assert set_def(NIL, 3, "e") == NIL
    assert set_def(L("a", "b", "c"), 0, "e") == L("e", "b", "c")
    assert set_def(L("a", "b"), 5, "e") == L("a", "b")
    assert set_def(L("a", "b", "c"), 2, "e") == L("a", "b", "e")


def test_set_examples():
    assert set(NIL, 0, 1) == NIL
    assert set(L(1, 2, 3), 1, 9) == L(1, 9, 3)
    assert set(L(1, 2), 2, 9) == L(1, 2)
    assert set(L(1, 2), 2**80, 9) == L(1, 2)


@given(small_lists, indices, st.integers(0, 15))
def test_set_matches_plain_update(xs, i, e):
    lst = ConsList.of(xs)
    expected = list_set(xs, i, e)
    assert list(set(lst, i, e)) == expected
    assert list(set_def(lst, i, e)) == expected
    assert list(ConsList(_py_set(lst._cell, i, e))) == expected


def test_set_equals_set_def_on_random_cases(rng):
    for xs, lst in random_lists(4, 1000, max_len=2**8):
        i = rng.randint(0, len(xs) + 2)
        e = rng.randrange(16)
        assert set(lst, i, e) == set_def(lst, i, e)


@given(small_lists, indices, st.integers(0, 15))
def test_set_preserves_length(xs, i, e):
    lst = ConsList.of(xs)
    assert length_tr(set(lst, i, e)) == length_tr(lst)
    assert length_def(set_def(lst, i, e)) == length_def(lst)


@given(small_lists, indices, indices, st.integers(16, 20))
def test_get_set_coherence(xs, i, j, e):
    lst = ConsList.of(xs)
    updated = set(lst, i, e)
    if i < len(xs):
        assert get(updated, i) == e
    else:
        assert updated == lst
    if j != i:
        assert get(updated, j) == get(lst, j)


def test_set_leaves_input_untouched_and_shares_the_suffix():
    lst = L(0, 1, 2, 3, 4)
    updated = set(lst, 1, 9)
    assert lst == L(0, 1, 2, 3, 4)
    # cells after the updated position are the same objects
    assert updated._cell[1][1] is lst._cell[1][1]


def test_append():
    assert append(NIL, 1) == L(1)
    lst = L(1, 2)
    assert append(lst, 3) == L(1, 2, 3)
    assert lst == L(1, 2)
    assert list(ConsList(_py_append(lst._cell, 3))) == [1, 2, 3]


# -- large inputs ----------------------------------------------------------------

N = 10**5


@pytest.fixture(scope="module")
def big():
    return ConsList.of(range(N))


def test_large_list_operations_are_stack_safe(big):
    assert length_tr(big) == N
    assert length_fl(big) == N
    assert len(big) == N
    assert foldl(big, 0, operator.add) == N * (N - 1) // 2
    assert get(big, N - 1) == N - 1
    updated = set(big, N - 1, -1)
    assert get(updated, N - 1) == -1
    assert length_tr(updated) == N
    assert _py_length(_py_set(big._cell, N - 1, -1)) == N


def test_dropping_a_long_chain_does_not_recurse():
    lst = ConsList.of(range(10**6))
    assert len(lst) == 10**6
    del lst
    gc.collect()


def test_backend_is_reported():
    assert cons_list.KERNEL in ("native", "python")


@pytest.mark.skipif(cons_list.KERNEL != "native", reason="compiled kernel not built")
def test_native_kernel_rejects_foreign_chains():
    from mediator_market import _kernel

    with pytest.raises(TypeError):
        _kernel.length((1, None))
    with pytest.raises(TypeError):
        _kernel.Cell(1, (2, None))
    with pytest.raises(ValueError):
        _kernel.nth(None, -1, None)
    cell = _kernel.Cell(1, None)
    assert cell[0] == 1 and cell[1] is None and len(cell) == 2
    with pytest.raises(IndexError):
        cell[2]


@settings(max_examples=50)
@given(small_lists, st.integers(0, 15))
def test_immutable_under_every_update(xs, e):
    lst = ConsList.of(xs)
    for i in range(len(xs) + 2):
        set(lst, i, e)
        append(lst, e)
    assert list(lst) == xs


def test_pure_python_backend(tmp_path):
    import os
    import subprocess
    import sys

    code = (
        "from mediator_market import cons_list as c\n"
        "from mediator_market.market import Market, run_script, total_money\n"
        "from mediator_market.instance_gen import GenParams, generate\n"
        "assert c.KERNEL == 'python', c.KERNEL\n"
        "lst = c.ConsList.of(range(10**5))\n"
        "assert len(lst) == 10**5 and c.get(c.set(lst, 99999, -1), 99999) == -1\n"
        "assert c.append(c.NIL, 1) == c.ConsList.of([1])\n"
        "final, log = run_script(Market(), generate(GenParams(3, 20, 200, 1)), strict=True)\n"
        "assert total_money(final) == 3 * 100 * 200\n"
    )
    env = dict(os.environ, MEDIATOR_MARKET_PURE="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
