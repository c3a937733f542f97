"""Mediator-based marketplace engine on immutable cons lists."""

from .cons_list import NIL, ConsList, cons
from .market import (
    Item,
    Market,
    MarketError,
    apply_operation,
    assign,
    deposit,
    is_advertised,
    price,
    run_script,
    sell,
    total_money,
)
from .operations import Assign, Deposit, Operation, Price, Sell

__all__ = [
    "NIL", "ConsList", "cons",
    "Item", "Market", "MarketError",
    "apply_operation", "assign", "deposit", "is_advertised", "price", "run_script", "sell",
    "total_money",
    "Assign", "Deposit", "Operation", "Price", "Sell",
]
