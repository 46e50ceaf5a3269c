"""Exceptions shared across the package."""


class CycleError(ValueError):
    """The input pairs force i before j and j before i for distinct items."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        pretty = " -> ".join(str(x) for x in self.cycle)
        super().__init__(f"precedence cycle: {pretty}")


class CapExceeded(RuntimeError):
    """Brute-force work was requested above the configured size cap."""

    def __init__(self, n, cap, what="enumeration"):
        self.n = n
        self.cap = cap
        super().__init__(f"{what} is capped at n <= {cap}, got n = {n}")


class PosetFormatError(ValueError):
    """A poset text file failed to parse. `line` is the 1-based line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class BoundingViolation(RuntimeError):
    """A coupled step produced a permutation outside its bounding state."""
