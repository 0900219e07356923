"""Per-iteration best-so-far records and their CSV form."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import IO, Iterator, NamedTuple

CSV_HEADER = ("iteration", "black_best", "red_best", "global_best")


class TraceRow(NamedTuple):
    iteration: int
    black_best: int
    red_best: int | None
    global_best: int


@dataclass
class ConvergenceTrace:
    rows: list[TraceRow] = field(default_factory=list)
    stop_reason: str = ""

    def append(self, iteration: int, black: int, red: int | None, best: int) -> None:
        if self.rows and best > self.rows[-1].global_best:
            raise ValueError("global best may not increase")
        self.rows.append(TraceRow(iteration, black, red, best))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TraceRow]:
        return iter(self.rows)

    @property
    def global_best(self) -> list[int]:
        return [r.global_best for r in self.rows]

    @property
    def black_best(self) -> list[int]:
        return [r.black_best for r in self.rows]

    @property
    def red_best(self) -> list[int | None]:
        return [r.red_best for r in self.rows]


def emit_trace_csv(trace: ConvergenceTrace, sink: IO[str]) -> int:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in trace.rows:
        writer.writerow(
            (row.iteration, row.black_best, "" if row.red_best is None else row.red_best, row.global_best)
        )
    return len(trace.rows)


def read_trace_csv(source: IO[str]) -> ConvergenceTrace:
    reader = csv.reader(source)
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected trace header: {header}")
    trace = ConvergenceTrace()
    for it, black, red, best in reader:
        trace.rows.append(TraceRow(int(it), int(black), int(red) if red else None, int(best)))
    return trace
