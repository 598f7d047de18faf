"""Experiment reports: named checks plus a CSV payload they can be recomputed from."""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field


def digest_of(params: dict) -> str:
    """Stable 12-hex digest of canonicalized key=value lines."""
    lines = sorted(f"{key}={_canon(value)}" for key, value in params.items())
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()[:12]


def _canon(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ",".join(_canon(v) for v in value)
    return str(value)


@dataclass
class ExperimentReport:
    """Outcome of one experiment.

    `rows` is the CSV payload; `checks` maps criterion names to booleans and
    is recomputable from the payload together with `extras` (the derived
    constants the checks compare against). No timestamps: a report is a pure
    function of its configuration.
    """

    name: str
    config_digest: str
    seeds: tuple[int, ...]
    columns: tuple[str, ...]
    rows: list[tuple]
    checks: dict[str, bool]
    extras: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        checks = " ".join(f"{key}={'ok' if ok else 'FAIL'}" for key, ok in self.checks.items())
        return f"{status} {self.name} {checks} digest={self.config_digest}"

    def write_csv(self, handle) -> None:
        handle.write(f"# experiment={self.name}\n")
        handle.write(f"# config_digest={self.config_digest}\n")
        handle.write(f"# seeds={','.join(str(s) for s in self.seeds)}\n")
        for key in sorted(self.extras):
            handle.write(f"# {key}={_canon(self.extras[key])}\n")
        for note in self.notes:
            handle.write(f"# note={note}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()
