"""
Name: run_report.py
Description: Machine-readable JSON report written by every trendlab command.
Author: Connor Kasarda
Date: 2025-06-08

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, field
import json
import math
from numbers import Number
import typer
from common.errors import NumericBlowup
from parsing.file_writer import write_lines

def _finite(value: object) -> bool:
    if isinstance(value, dict):
        return all(_finite(item) for item in value.values())
    if isinstance(value, (list, tuple)):
        return all(_finite(item) for item in value)
    if isinstance(value, Number) and not isinstance(value, bool):
        return math.isfinite(float(value))
    return True

@dataclass
class RunReport:
    """
    Outcome of one command.

    Attributes:
        command (str): Subcommand name.
        config (dict): Fully resolved configuration, enough to rerun the command.
        seed (int | None): Seed of the run.
        metrics (dict): Named results; every number must be finite.
        artifacts (dict[str, str]): Files written by the command.
        wall_time_seconds (float): Elapsed time.
    """

    command: str
    config: dict = field(default_factory=dict)
    seed: int = None
    metrics: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    wall_time_seconds: float = 0.0

    def to_json(self) -> str:
        """
        Serializes the report.

        Raises:
            NumericBlowup: If a metric is NaN or Inf.
        """

        if not _finite(self.metrics):
            raise NumericBlowup(f'{self.command}: report metrics contain NaN or Inf')
        payload = {
            'command': self.command,
            'config': self.config,
            'seed': self.seed,
            'metrics': self.metrics,
            'artifacts': self.artifacts,
            'wall_time_seconds': self.wall_time_seconds,
        }
        return json.dumps(payload, indent=2, default=str)

    def write(self, path: str = None) -> None:
        """
        Writes the report to a file, or to stdout when no path is given.
        """

        text = self.to_json()
        if path is None:
            typer.echo(text)
        else:
            write_lines(path, [text])
