"""Deterministic synthetic scripts for throughput experiments.

An instance declares every user with enough money for any purchase
sequence, declares and prices every item, then alternates sales with
re-advertisements. Randomness comes from a fixed 64-bit LCG, so equal
parameters give byte-identical scripts on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .naturals import NAT_MAX, check_nat
from .operations import Assign, Deposit, Operation, Price, Sell

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = 2**64 - 1

MAX_PRICE = 100


def prng_next(state: int) -> Tuple[int, int]:
    """Advance the generator; returns ``(new_state, value)`` with value < 2**31."""
    state = (state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64
    return state, state >> 33


class Lcg:
    """Stateful convenience wrapper around :func:`prng_next`."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def draw(self) -> int:
        self.state, value = prng_next(self.state)
        return value


@dataclass(frozen=True)
class GenParams:
    users: int
    items: int
    transactions: int
    seed: int = 0

    def __post_init__(self):
        for name in ("users", "items", "transactions"):
            check_nat(getattr(self, name), name)
        if self.users < 1 or self.items < 1:
            raise ValueError("users and items must both be at least 1")
        if not 0 <= self.seed <= NAT_MAX:
            raise ValueError("seed must fit in 64 unsigned bits")

    @property
    def operation_count(self) -> int:
        return self.users + 2 * self.items + 2 * self.transactions


def generate(p: GenParams) -> List[Operation]:
    rng = Lcg(p.seed)
    draw = rng.draw
    ops: List[Operation] = []
    emit = ops.append

    budget = 100 * p.transactions
    for u in range(p.users):
        emit(Deposit(u, budget))

    for i in range(p.items):
        emit(Assign(i, i % p.users))
        emit(Price(i, 1 + draw() % MAX_PRICE))

    for _ in range(p.transactions):
        i = draw() % p.items
        b = draw() % p.users
        emit(Sell(i, b))
        emit(Price(i, 1 + draw() % MAX_PRICE))
    return ops
