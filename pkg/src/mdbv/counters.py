"""Instrumentation for the three costed group operations.

The cost model accounts for scalar multiplications (M), map-to-point
hashes (H) and pairings (P). The primitives report each invocation here;
internal bookkeeping work such as cofactor clearing or subgroup checks is
deliberately not reported, so the counts line up with the symbolic model.
"""

import contextlib
import contextvars
from dataclasses import dataclass


@dataclass
class OpCounts:
    """Numbers of costed operations observed while a collector was active."""

    m: int = 0  # scalar multiplications in G1
    h: int = 0  # map-to-point hashes
    p: int = 0  # pairings

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(self.m + other.m, self.h + other.h, self.p + other.p)

    def as_tuple(self):
        return (self.m, self.h, self.p)


_collector: contextvars.ContextVar = contextvars.ContextVar(
    "mdbv_op_collector", default=None
)


@contextlib.contextmanager
def count_ops():
    """Collect operation counts for the enclosed block.

    with count_ops() as ops:
        sign(...)
    assert ops.as_tuple() == (3, 1, 0)
    """
    counts = OpCounts()
    token = _collector.set(counts)
    try:
        yield counts
    finally:
        _collector.reset(token)


def tick(kind: str, amount: int = 1) -> None:
    counts = _collector.get()
    if counts is None:
        return
    if kind == "m":
        counts.m += amount
    elif kind == "h":
        counts.h += amount
    elif kind == "p":
        counts.p += amount
    else:
        raise ValueError(f"unknown operation kind {kind!r}")
