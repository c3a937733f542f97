"""Immutable singly-linked lists.

A list is either ``NIL`` or a head prepended to a tail. Internally the
empty list is ``None`` and a cons cell indexes like the pair
``(head, tail_cell)``; :class:`ConsList` is a thin handle around the first
cell. Updates rebuild the prefix up to the touched position and share the rest.

Two families of definitions live here. The production ones (``foldl``,
``length_tr``, ``length_fl``, ``get``, ``set``) run in constant stack
space. ``length_def`` and ``set_def`` are the direct structural
recursions; they recurse once per element and exist as test oracles.

When the compiled ``_kernel`` extension is importable, cells are its
``Cell`` objects and ``get``, ``set``, ``append`` and ``len()`` run natively.
Otherwise, or when ``MEDIATOR_MARKET_PURE`` is set in the environment,
cells are plain tuples. ``KERNEL`` names the active backend.
"""

from __future__ import annotations

import os
from typing import Any, Callable, Iterable, Iterator, Optional, TypeVar

from .naturals import Nat, monus1

A = TypeVar("A")
B = TypeVar("B")

if os.environ.get("MEDIATOR_MARKET_PURE"):
    _kernel = None
else:
    try:
        from . import _kernel
    except ImportError:  # pragma: no cover - depends on the build
        _kernel = None

if _kernel is not None:
    _mkcell = _kernel.Cell
else:  # pragma: no cover
    def _mkcell(head, tail):
        return (head, tail)


# -- pure-Python cell walkers ------------------------------------------------

def _py_length(cell) -> int:
    n = 0
    while cell is not None:
        n += 1
        cell = cell[1]
    return n


def _py_nth(cell, index, default):
    while cell is not None:
        if not index:
            return cell[0]
        index -= 1
        cell = cell[1]
    return default


def _py_set(cell, index, element):
    heads = []
    node = cell
    while node is not None and index:
        heads.append(node[0])
        node = node[1]
        index -= 1
    if node is None:
        return cell
    node = _mkcell(element, node[1])
    for head in reversed(heads):
        node = _mkcell(head, node)
    return node


def _py_append(cell, element):
    heads = []
    while cell is not None:
        heads.append(cell[0])
        cell = cell[1]
    node = _mkcell(element, None)
    for head in reversed(heads):
        node = _mkcell(head, node)
    return node


if _kernel is not None:
    KERNEL = "native"
    _length, _nth, _set, _append = _kernel.length, _kernel.nth, _kernel.set, _kernel.append
else:  # pragma: no cover
    KERNEL = "python"
    _length, _nth, _set, _append = _py_length, _py_nth, _py_set, _py_append


class ConsList:
    """Handle on an immutable cons chain.

    Build lists with :data:`NIL`, :func:`cons` or :meth:`ConsList.of`.
    Equality is structural and iterative, so it is safe on long lists.
    """

    __slots__ = ("_cell",)

    def __init__(self, cell=None):
        self._cell = cell

    @classmethod
    def of(cls, items: Iterable[A] = ()) -> "ConsList":
        node = None
        for x in reversed(list(items)):
            node = _mkcell(x, node)
        return cls(node)

    @property
    def is_nil(self) -> bool:
        return self._cell is None

    @property
    def head(self):
        if self._cell is None:
            raise ValueError("head of Nil")
        return self._cell[0]

    @property
    def tail(self) -> "ConsList":
        if self._cell is None:
            raise ValueError("tail of Nil")
        return ConsList(self._cell[1])

    def __iter__(self) -> Iterator:
        cell = self._cell
        while cell is not None:
            yield cell[0]
            cell = cell[1]

    def __len__(self) -> int:
        return _length(self._cell)

    def __bool__(self) -> bool:
        return self._cell is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConsList):
            return NotImplemented
        a, b = self._cell, other._cell
        while a is not b:
            if a is None or b is None:
                return False
            if a[0] != b[0]:
                return False
            a, b = a[1], b[1]
        return True

    def __hash__(self) -> int:
        return hash(tuple(self))

    def __repr__(self) -> str:
        return f"ConsList({list(self)!r})"


NIL = ConsList(None)


def cons(head, tail: ConsList) -> ConsList:
    return ConsList(_mkcell(head, tail._cell))


# -- folds and lengths --------------------------------------------------------

def _tailrec_foldl(list: ConsList, current: B, next: Callable[[B, Any], B]) -> B:
    # the tail call, compiled to a loop
    cell = list._cell
    while cell is not None:
        current = next(current, cell[0])
        cell = cell[1]
    return current


def foldl(list: ConsList, initial: B, next: Callable[[B, Any], B]) -> B:
    """Left fold: ``next(...next(next(initial, e1), e2)..., en)``."""
    return _tailrec_foldl(list, initial, next)


def length_fl(list: ConsList) -> Nat:
    return _tailrec_foldl(list, 0, lambda accum, _elem: accum + 1)


def _tailrec_length(list: ConsList, accum: Nat) -> Nat:
    cell = list._cell
    while cell is not None:
        accum += 1
        cell = cell[1]
    return accum


def length_tr(list: ConsList) -> Nat:
    return _tailrec_length(list, 0)


def length_def(list: ConsList) -> Nat:
    """Length by structural recursion; one stack frame per element.

    Raises ``RecursionError`` once the list outgrows the interpreter's
    recursion limit.
    """
    if list.is_nil:
        return 0
    return length_def(list.tail) + 1


# -- access and update --------------------------------------------------------

def _tailrec_get_def(list: ConsList, index: Nat, current: Nat) -> Optional[A]:
    cell = list._cell
    while cell is not None:
        if current == index:
            return cell[0]
        current += 1
        cell = cell[1]
    return None


def get(list: ConsList, index: Nat) -> Optional[A]:
    """Element at ``index``, or ``None`` when out of range."""
    return _nth(list._cell, index, None)


def set_def(list: ConsList, index: Nat, element) -> ConsList:
    """Replace position ``index`` by structural recursion (test oracle)."""
    if list.is_nil:
        return NIL
    if index == 0:
        return cons(element, list.tail)
    return cons(list.head, set_def(list.tail, monus1(index), element))


def set(list: ConsList, index: Nat, element) -> ConsList:
    """Replace position ``index``; an out-of-range index returns ``list``.

    The prefix before ``index`` is rebuilt and the suffix after it is
    shared with the input.
    """
    return ConsList(_set(list._cell, index, element))


def append(list: ConsList, element) -> ConsList:
    """New list with ``element`` at position ``len(list)``; copies every cell."""
    return ConsList(_append(list._cell, element))
