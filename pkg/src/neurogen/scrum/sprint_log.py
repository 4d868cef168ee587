from __future__ import annotations

import csv
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import IO, Iterator

from neurogen.errors import CodebaseIOError


@dataclass(frozen=True)
class SprintRecord:
    sprint: int
    developer: str
    operator: str | None
    reward: float
    length: int
    aborted: bool


SPRINT_COLUMNS = tuple(f.name for f in fields(SprintRecord))


class SprintLog:
    """
    One record per proposal, in sprint order. When ``path`` is given, records are also streamed to a CSV file as
    they arrive.
    """

    def __init__(self, path: Path | None = None):
        self.records: list[SprintRecord] = []
        self.path = Path(path) if path is not None else None
        self._fh: IO[str] | None = None
        self._writer: csv.DictWriter | None = None
        if self.path is not None:
            try:
                self._fh = self.path.open("w", encoding="utf-8", newline="")
            except OSError as exc:
                raise CodebaseIOError(f"failed to open {self.path}: {exc}") from exc
            self._writer = csv.DictWriter(self._fh, fieldnames=SPRINT_COLUMNS)
            self._writer.writeheader()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[SprintRecord]:
        return iter(self.records)

    def __enter__(self) -> "SprintLog":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def append(self, record: SprintRecord) -> None:
        if self.records and record.sprint <= self.records[-1].sprint:
            raise ValueError(f"sprint {record.sprint} does not follow sprint {self.records[-1].sprint}")
        self.records.append(record)
        if self._writer is not None:
            row = asdict(record)
            row["operator"] = row["operator"] or ""
            self._writer.writerow(row)

    def rewards(self) -> list[float]:
        return [record.reward for record in self.records]

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None
            self._writer = None


def read_sprint_log(path: Path) -> list[SprintRecord]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        return [
            SprintRecord(
                sprint=int(row["sprint"]),
                developer=row["developer"],
                operator=row["operator"] or None,
                reward=float(row["reward"]),
                length=int(row["length"]),
                aborted=row["aborted"] == "True",
            )
            for row in csv.DictReader(fh)
        ]
