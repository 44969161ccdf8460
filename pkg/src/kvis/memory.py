"""The memory-constrained execution model.

Input lives in a :class:`ReadOnlyView` that counts element reads, mutable
state is accounted cooperatively on a :class:`WorkspaceMeter`, and results go
to an append-only :class:`WriteOnlySink`.

Word accounting is fixed-size: an index or small integer is one word, an
exact scalar (numerator and denominator) is two, and a point or sort key is
four.  Fixture coordinates are bounded so these sizes are honest.
"""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from typing import Any, Iterator, Sequence

INDEX_WORDS = 1
SCALAR_WORDS = 2
POINT_WORDS = 4
KEY_WORDS = 4
ENTRY_WORDS = KEY_WORDS + INDEX_WORDS


class BudgetExceeded(RuntimeError):
    def __init__(self, tag: str, requested: int, budget: int):
        super().__init__(f"workspace budget exceeded at {tag!r}: {requested} > {budget} words")
        self.tag = tag
        self.requested = requested
        self.budget = budget


class ReadOnlyView(Sequence):
    """Random-access, read-only input array with a monotone read counter."""

    __slots__ = ("_items", "_reads")

    def __init__(self, items: Sequence[Any]):
        self._items = tuple(items)
        self._reads = 0

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i):
        if isinstance(i, slice):
            raise TypeError("slicing would copy the input; index elements one at a time")
        self._reads += 1
        return self._items[i]

    def __iter__(self) -> Iterator[Any]:
        for i in range(len(self._items)):
            yield self[i]

    @property
    def reads(self) -> int:
        return self._reads

    def add_reads(self, count: int) -> None:
        """Credit reads performed by a compiled kernel on the raw arrays."""
        if count < 0:
            raise ValueError("read counts never decrease")
        self._reads += int(count)

    def peek(self, i):
        """Uncounted access, reserved for validation and reporting."""
        return self._items[i]


class WorkspaceMeter:
    def __init__(self, budget_words: int | None = None, strict: bool = False):
        self.budget_words = budget_words
        self.strict = strict
        self.current_words = 0
        self.peak_words = 0

    def charge(self, delta_words: int, tag: str = "") -> None:
        new = self.current_words + delta_words
        if new < 0:
            raise ValueError(f"workspace released below zero at {tag!r}")
        if self.strict and self.budget_words is not None and new > self.budget_words:
            raise BudgetExceeded(tag, new, self.budget_words)
        self.current_words = new
        if new > self.peak_words:
            self.peak_words = new

    def release(self, words: int, tag: str = "") -> None:
        self.charge(-words, tag)

    def hold(self, words: int, tag: str = "") -> "_Hold":
        return _Hold(self, words, tag)


class _Hold:
    __slots__ = ("meter", "words", "tag")

    def __init__(self, meter: WorkspaceMeter, words: int, tag: str):
        self.meter, self.words, self.tag = meter, words, tag

    def __enter__(self):
        self.meter.charge(self.words, self.tag)
        return self

    def __exit__(self, *exc):
        self.meter.charge(-self.words, self.tag)
        return False


class WriteOnlySink:
    """Append-only output stream."""

    def __init__(self):
        self._out: list[Any] = []

    def emit(self, record: Any) -> None:
        self._out.append(record)

    @property
    def count(self) -> int:
        return len(self._out)

    def records(self) -> list[Any]:
        """Hand the stream to the consumer; algorithms never call this."""
        return list(self._out)

    def __len__(self) -> int:
        return len(self._out)


@dataclass(frozen=True)
class CounterReport:
    reads: int
    peak_words: int
    emitted: int


def snapshot_counters(view: ReadOnlyView, meter: WorkspaceMeter, sink: WriteOnlySink | None = None) -> CounterReport:
    return CounterReport(view.reads, meter.peak_words, sink.count if sink is not None else 0)


@dataclass(frozen=True)
class CounterRow:
    algo: str
    n: int
    k: int
    s: int
    c: int
    reads: int
    peak_words: int
    emitted: int

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(astuple(self))
        return buf.getvalue()
