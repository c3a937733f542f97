"""Natural numbers backed by machine-range integers.

Values live in ``[0, NAT_MAX]``. Arithmetic that would leave that range
raises instead of wrapping.
"""

Nat = int

NAT_MAX = 2**64 - 1


def is_nat(value) -> bool:
    return type(value) is int and 0 <= value <= NAT_MAX


def check_nat(value, what: str = "value") -> Nat:
    """Return ``value`` unchanged if it is a natural number in range."""
    if type(value) is not int:
        raise TypeError(f"{what} must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"{what} must be non-negative, got {value}")
    if value > NAT_MAX:
        raise OverflowError(f"{what} exceeds 64-bit range: {value}")
    return value


def succ(n: Nat) -> Nat:
    if n >= NAT_MAX:
        raise OverflowError(f"succ({n}) leaves the 64-bit range")
    return n + 1


def monus1(index: Nat) -> Nat:
    # Succ_ k => k, anything else => 0
    if index > 0:
        return index - 1
    return 0


def monus(a: Nat, b: Nat) -> Nat:
    """Truncated subtraction: ``max(a - b, 0)``."""
    return a - b if a > b else 0


def add(a: Nat, b: Nat) -> Nat:
    total = a + b
    if total > NAT_MAX:
        raise OverflowError(f"{a} + {b} leaves the 64-bit range")
    return total
