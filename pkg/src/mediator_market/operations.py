"""The four script commands understood by the mediator."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Union

from .naturals import Nat, check_nat


class _Op:
    __slots__ = ()

    def __post_init__(self):
        for f in fields(self):
            check_nat(getattr(self, f.name), f.name)


@dataclass(frozen=True, slots=True)
class Deposit(_Op):
    user: Nat
    amount: Nat


@dataclass(frozen=True, slots=True)
class Assign(_Op):
    item: Nat
    user: Nat


@dataclass(frozen=True, slots=True)
class Price(_Op):
    item: Nat
    amount: Nat


@dataclass(frozen=True, slots=True)
class Sell(_Op):
    item: Nat
    buyer: Nat


Operation = Union[Deposit, Assign, Price, Sell]

# tag used in script files -> (class, field names in canonical order)
SCHEMA = {
    "deposit": (Deposit, ("user", "amount")),
    "assign": (Assign, ("item", "user")),
    "price": (Price, ("item", "amount")),
    "sell": (Sell, ("item", "buyer")),
}

TAGS = {cls: tag for tag, (cls, _) in SCHEMA.items()}
