"""Report - rich rendering of errors and result summaries on stderr"""

from typing import Iterable

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..services import AlignmentResult, DistanceMatrix
from ..utils.formatting import format_distance


class Report:
    """Human-readable views; results for machines go to stdout elsewhere"""

    def __init__(self, console: Console):
        self.console = console

    def error(self, e: Exception):
        self.console.print(f"[red]Error: {e}[/red]")

    def errors(self, failures: Iterable):
        for failure in failures:
            self.error(failure)

    def matrix_table(self, matrix: DistanceMatrix):
        """Render the distance matrix, failed pairs in red"""
        table = Table(title="Distances", border_style="blue")
        table.add_column("", style="cyan", no_wrap=True)
        for label in matrix.labels:
            table.add_column(label, justify="right")

        for label, row in zip(matrix.labels, matrix.values):
            cells = ["[red]failed[/red]" if np.isnan(v) else format_distance(v) for v in row]
            table.add_row(label, *cells)

        self.console.print(table)

    def alignment_summary(self, result: AlignmentResult):
        info = Table.grid(padding=(0, 2))
        info.add_column(style="cyan", justify="right")
        info.add_column()

        info.add_row("Unaligned:", format_distance(result.unaligned))
        info.add_row("Aligned:", f"[bold green]{format_distance(result.aligned)}[/bold green]")
        slopes = result.phi.slopes()
        info.add_row("Warp slopes:", f"{slopes.min():.3g} .. {slopes.max():.3g}")

        panel = Panel(info, title="Alignment", border_style="cyan")
        self.console.print(panel)
