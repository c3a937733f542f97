"""Timed replay and the throughput benchmark."""

from __future__ import annotations

import gc
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .instance_gen import GenParams, generate
from .market import Market, Replay, run_script, total_money
from .operations import Operation


@dataclass
class RunReport:
    users_declared: int
    items_declared: int
    operations_total: int
    sell_count: int
    failures: List[Tuple[int, str]] = field(default_factory=list)
    parse_time_s: float = 0.0
    exec_time_s: float = 0.0
    total_time_s: float = 0.0
    transactions_per_s: float = 0.0
    final_total_money: int = 0

    def to_yaml(self) -> str:
        lines = [
            f"users_declared: {self.users_declared}",
            f"items_declared: {self.items_declared}",
            f"operations_total: {self.operations_total}",
            f"sell_count: {self.sell_count}",
        ]
        if self.failures:
            lines.append("failures:")
            for index, kind in self.failures:
                lines.append(f"  - index: {index}")
                lines.append(f"    error: {kind}")
        else:
            lines.append("failures: []")
        lines += [
            f"parse_time_s: {self.parse_time_s:.6f}",
            f"exec_time_s: {self.exec_time_s:.6f}",
            f"total_time_s: {self.total_time_s:.6f}",
            f"transactions_per_s: {self.transactions_per_s:.3f}",
            f"final_total_money: {self.final_total_money}",
        ]
        return "\n".join(lines) + "\n"


@contextmanager
def gc_paused():
    """Keep the cyclic collector out of a timed section, as ``timeit`` does."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def timed_replay(ops: Sequence[Operation], strict: bool = False) -> Tuple[Replay, float]:
    with gc_paused():
        start = time.perf_counter()
        _, log = run_script(Market(), ops, strict)
        elapsed = time.perf_counter() - start
    return log, elapsed


def make_report(log: Replay, exec_time: float, parse_time: float = 0.0,
                total_time: float | None = None) -> RunReport:
    if total_time is None:
        total_time = parse_time + exec_time
    market = log.market
    return RunReport(
        users_declared=len(market.accounts),
        items_declared=len(market.items),
        operations_total=log.operations,
        sell_count=log.sells,
        failures=list(log.failures),
        parse_time_s=parse_time,
        exec_time_s=exec_time,
        total_time_s=max(total_time, parse_time, exec_time),
        transactions_per_s=log.sells / exec_time if exec_time > 0 else 0.0,
        final_total_money=total_money(market),
    )


class InfeasibleInstance(RuntimeError):
    pass


def bench(params: GenParams, repeat: int = 3) -> List[RunReport]:
    """Replay one generated instance ``repeat`` times; generation is not timed."""
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    ops = generate(params)
    reports = []
    for _ in range(repeat):
        log, elapsed = timed_replay(ops)
        if log.failures:
            index, kind = log.failures[0]
            raise InfeasibleInstance(f"generated operation {index} failed with {kind}")
        reports.append(make_report(log, elapsed))
    return reports


def summarize(reports: Sequence[RunReport]) -> dict:
    times = [r.exec_time_s for r in reports]
    rates = [r.transactions_per_s for r in reports]
    return {
        "repetitions": len(reports),
        "exec_time_s_min": min(times),
        "exec_time_s_median": statistics.median(times),
        "transactions_per_s_max": max(rates),
        "transactions_per_s_median": statistics.median(rates),
    }


def summary_yaml(summary: dict) -> str:
    lines = ["summary:"]
    for key, value in summary.items():
        text = f"{value:.6f}" if isinstance(value, float) else str(value)
        lines.append(f"  {key}: {text}")
    return "\n".join(lines) + "\n"
