"""The mediator's state and the buy/sell protocol as pure functions.

A market holds every account balance and every item. Users and items are
identified by their position in those lists. Each operation returns a new
market and leaves its input untouched; a rejected operation raises a
:class:`MarketError` subclass and produces no new state.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import cons_list
from .cons_list import NIL, ConsList
from .naturals import Nat, add
from .operations import Assign, Deposit, Operation, Price, Sell

Money = Nat


class Item(NamedTuple):
    owner: Nat
    price: Money


@dataclass(frozen=True)
class Market:
    accounts: ConsList = NIL
    items: ConsList = NIL

    @classmethod
    def of(cls, accounts: Iterable[Money] = (), items: Iterable[tuple] = ()) -> "Market":
        return cls(ConsList.of(accounts), ConsList.of(Item(*it) for it in items))


class MarketError(Exception):
    """An operation the mediator refuses to carry out."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class UserIndexGap(MarketError):
    pass


class ItemIndexGap(MarketError):
    pass


class UnknownUser(MarketError):
    pass


class UnknownItem(MarketError):
    pass


class NotAdvertised(MarketError):
    pass


class InsufficientFunds(MarketError):
    pass


def _upsert(lst: ConsList, index: Nat, element, gap: type, what: str) -> ConsList:
    n = len(lst)
    if index < n:
        return cons_list.set(lst, index, element)
    if index == n:
        return cons_list.append(lst, element)
    raise gap(f"{what} {index} skips past the next free index {n}")


def _item(market: Market, item: Nat) -> Item:
    entry = cons_list.get(market.items, item)
    if entry is None:
        raise UnknownItem(f"item {item} is not declared")
    return entry


def deposit(market: Market, user: Nat, amount: Money) -> Market:
    """Credit ``amount`` to ``user``, declaring the account if it is the next one."""
    balance = cons_list.get(market.accounts, user)
    if balance is not None:
        accounts = cons_list.set(market.accounts, user, add(balance, amount))
    else:
        accounts = _upsert(market.accounts, user, amount, UserIndexGap, "user")
    return Market(accounts, market.items)


def assign(market: Market, item: Nat, user: Nat) -> Market:
    """Give ``item`` to ``user`` and hide it; declares the item if it is the next one."""
    if cons_list.get(market.accounts, user) is None:
        raise UnknownUser(f"user {user} is not declared")
    items = _upsert(market.items, item, Item(user, 0), ItemIndexGap, "item")
    return Market(market.accounts, items)


def price(market: Market, item: Nat, amount: Money) -> Market:
    """Advertise ``item`` at ``amount``, or hide it when ``amount`` is 0."""
    entry = _item(market, item)
    items = cons_list.set(market.items, item, Item(entry.owner, amount))
    return Market(market.accounts, items)


def sell(market: Market, item: Nat, buyer: Nat) -> Market:
    """Move ``item`` to ``buyer`` and its price from buyer to owner, then hide it.

    The three updates are computed before the new market is built, so a
    rejected sale has no effect. A self-sale moves no money but still
    takes the item off sale.
    """
    entry = _item(market, item)
    balance = cons_list.get(market.accounts, buyer)
    if balance is None:
        raise UnknownUser(f"user {buyer} is not declared")
    cost = entry.price
    if cost == 0:
        raise NotAdvertised(f"item {item} is not for sale")
    if balance < cost:
        raise InsufficientFunds(f"user {buyer} has {balance}, item {item} costs {cost}")

    accounts = market.accounts
    seller = entry.owner
    if seller != buyer:
        accounts = cons_list.set(accounts, buyer, balance - cost)
        accounts = cons_list.set(accounts, seller, add(cons_list.get(accounts, seller), cost))
    items = cons_list.set(market.items, item, Item(buyer, 0))
    return Market(accounts, items)


def total_money(market: Market) -> Money:
    return cons_list.foldl(market.accounts, 0, operator.add)


def is_advertised(market: Market, item: Nat) -> bool:
    return _item(market, item).price > 0


_DISPATCH = {
    Deposit: lambda m, op: deposit(m, op.user, op.amount),
    Assign: lambda m, op: assign(m, op.item, op.user),
    Price: lambda m, op: price(m, op.item, op.amount),
    Sell: lambda m, op: sell(m, op.item, op.buyer),
}


def apply_operation(market: Market, op: Operation) -> Market:
    try:
        handler = _DISPATCH[type(op)]
    except KeyError:
        raise TypeError(f"not an operation: {op!r}") from None
    return handler(market, op)


class ScriptAborted(Exception):
    """Strict replay stopped at the first rejected operation."""

    def __init__(self, index: int, error: MarketError):
        super().__init__(f"operation {index} failed: {error.kind}: {error}")
        self.index = index
        self.error = error


@dataclass
class Replay:
    """What happened while replaying a script."""

    market: Market
    operations: int = 0
    sells: int = 0
    failures: list = field(default_factory=list)  # (index, error kind)


def run_script(market: Market, ops: Sequence[Operation], strict: bool = False):
    """Left-fold ``apply_operation`` over ``ops``.

    Returns ``(final_market, replay)``. In strict mode the first rejected
    operation raises :class:`ScriptAborted`; otherwise it is logged and the
    market from before it carries forward.
    """
    log = Replay(market)
    sells = 0
    index = -1
    for index, op in enumerate(ops):
        try:
            market = apply_operation(market, op)
        except MarketError as err:
            if strict:
                raise ScriptAborted(index, err) from err
            log.failures.append((index, err.kind))
            continue
        if type(op) is Sell:
            sells += 1
    log.market = market
    log.operations = index + 1
    log.sells = sells
    return market, log
