#!/usr/bin/env python3
"""
Elastic SRVT - Main Entry Point

Distances, geodesics and alignment of curves in R^d, on S², in chart
manifolds and in SO(3)/SE(3) through the square root velocity transform.
"""

import functools
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Tuple

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler

from .config import SRVTConfig, parse_slopes
from .errors import AngleNearPi, CutLocusViolation, GeodesicLeftChart
from .models import CurveKind, KindSelector
from .services import (
    CurveFileService,
    DistanceMatrixService,
    Metric,
    VisualizationService,
    create_backend,
)
from .services.backends import Curve
from .services.storage import DRIFT_TOL
from .ui import Report
from .utils.formatting import format_distance

logger = logging.getLogger(__name__)

GEOMETRY_ERRORS = (CutLocusViolation, AngleNearPi, GeodesicLeftChart)
EXIT_INVALID = 2
EXIT_GEOMETRY = 3


class Session:
    """Configuration, file access and reporting shared by one command run"""

    def __init__(
        self,
        kind: Optional[str] = None,
        samples: Optional[int] = None,
        star: Optional[str] = None,
        slopes: Optional[str] = None,
        scheme: str = "euler",
        workers: int = 4,
        verbose: bool = False
    ):
        self.console = Console(stderr=True)
        self.report = Report(self.console)
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.WARNING,
            format="%(message)s",
            handlers=[RichHandler(console=self.console, show_time=False)],
            force=True,
        )
        self.selector = KindSelector.parse(kind) if kind else None
        self.samples = samples
        self.star_text = star
        overrides = {"inverse_scheme": scheme, "workers": workers}
        if slopes:
            overrides["slopes"] = parse_slopes(slopes)
        self.config = replace(SRVTConfig(), **overrides)
        self.storage = CurveFileService(self.config)

    def load(self, paths: List[Path]) -> Tuple[KindSelector, List[Curve]]:
        """Read curve files of one kind, resampled when --samples is given"""
        selector = self.selector
        curves = []
        for path in paths:
            found, curve = self.storage.read(path, selector)
            selector = selector or found
            curves.append(curve)
        if self.samples is not None:
            backend = self.backend(selector)
            curves = [backend.resample(c, self.samples) for c in curves]
        logger.debug("loaded %d %s curves", len(curves), selector)
        return selector, curves

    def star(self, selector: KindSelector) -> Optional[np.ndarray]:
        if not selector.kind.is_manifold:
            return None
        if not self.star_text:
            raise click.UsageError(f"--star is required for {selector} curves")
        try:
            star = np.array([float(x) for x in self.star_text.split(",")])
        except ValueError:
            raise click.BadParameter(f"cannot parse {self.star_text!r}", param_hint="--star") from None
        if selector.kind is CurveKind.SPHERE2:
            norm = np.linalg.norm(star)
            if abs(norm - 1.0) > DRIFT_TOL:
                raise click.BadParameter("sphere reference point must be a unit vector", param_hint="--star")
            star = star / norm
        return star

    def backend(self, selector: KindSelector):
        spec = self.storage.manifold_spec(selector) if selector.kind.is_manifold else None
        return create_backend(selector, self.config, spec, self.star(selector))


def run_command(func):
    """Map package errors to exit codes: 2 for invalid input, 3 for geometry"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        console = Console(stderr=True)
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except GEOMETRY_ERRORS as e:
            Report(console).error(e)
            sys.exit(EXIT_GEOMETRY)
        except (ValueError, OSError) as e:
            Report(console).error(e)
            sys.exit(EXIT_INVALID)

    return wrapper


def curve_options(func):
    options = [
        click.option('--kind', default=None,
                     help='euclidean, sphere2, so3, se3 or chart:<name> (default: from file)'),
        click.option('--samples', type=click.IntRange(min=1), default=None,
                     help='Resample every curve to N subintervals on ingest'),
        click.option('--star', default=None, help='Reference point x,y,z for manifold curves'),
        click.option('--slopes', default=None, help='Warp slope set, e.g. 1/2,1,2'),
        click.option('--scheme', type=click.Choice(['euler', 'midpoint']), default='euler',
                     help='Stepping of the manifold inverse transform'),
        click.option('--verbose', is_flag=True, help='Debug logging on stderr'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


METRIC_OPTION = click.option(
    '--metric', type=click.Choice([m.value for m in Metric]), default=Metric.BASED.value,
    help='plain: SRVT only, based: plus start points, shape: aligned'
)


@click.group()
def cli():
    """
    Elastic SRVT - square root velocity distances between curves

    Compare curves in R^d, on the sphere, in chart manifolds and in the
    rotation and rigid motion groups.
    """


@cli.command()
@click.argument('first', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument('second', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@METRIC_OPTION
@curve_options
@run_command
def distance(first, second, metric, kind, samples, star, slopes, scheme, verbose):
    """Print the distance between two curves"""
    session = Session(kind, samples, star, slopes, scheme, verbose=verbose)
    selector, (a, c) = session.load([first, second])
    value = session.backend(selector).distance(a, c, Metric(metric))
    click.echo(format_distance(value))


@cli.command()
@click.argument('directory', type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='CSV file (default: standard output)')
@click.option('--workers', type=click.IntRange(min=1), default=4, help='Worker threads')
@click.option('--show', is_flag=True, help='Render the matrix as a table on stderr')
@click.option('--plot', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write heatmap data as JSON')
@METRIC_OPTION
@curve_options
@run_command
def matrix(directory, out, workers, show, plot, metric, kind, samples, star, slopes, scheme, verbose):
    """Pairwise distance matrix of the curve files in a directory"""
    session = Session(kind, samples, star, slopes, scheme, workers, verbose)
    paths = session.storage.list_curve_files(directory)
    if len(paths) < 2:
        raise click.UsageError(f"{directory} holds fewer than 2 curve files")
    selector, curves = session.load(paths)
    service = DistanceMatrixService(session.backend(selector), session.config.workers)
    result = service.compute([p.name for p in paths], curves, Metric(metric))

    if not result.ok:
        session.report.errors(result.failures)
        geometric = any(isinstance(f.error, GEOMETRY_ERRORS) for f in result.failures)
        sys.exit(EXIT_GEOMETRY if geometric else EXIT_INVALID)

    if show:
        session.report.matrix_table(result)
    if plot:
        VisualizationService.write(plot, VisualizationService.matrix_chart(result))
    if out:
        result.write_csv(out)
    else:
        click.echo(result.to_csv(), nl=False)


@cli.command()
@click.argument('first', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument('second', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--steps', type=click.IntRange(min=1), default=4, help='Number of subdivisions k')
@click.option('--out', type=click.Path(file_okay=False, path_type=Path), default=Path('geodesic'),
              help='Output directory')
@click.option('--plot', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write the interpolants as plot-ready JSON')
@curve_options
@run_command
def geodesic(first, second, steps, out, plot, kind, samples, star, slopes, scheme, verbose):
    """Write the k+1 curves of the SRVT geodesic between two curves"""
    session = Session(kind, samples, star, slopes, scheme, verbose=verbose)
    selector, (a, c) = session.load([first, second])
    path = session.backend(selector).geodesic(a, c, steps)

    width = max(3, len(str(steps)))
    for j, curve in enumerate(path):
        target = out / f"geodesic_{j:0{width}d}{first.suffix.lower()}"
        click.echo(str(session.storage.write(target, curve, selector)))
    if plot:
        VisualizationService.write(plot, VisualizationService().geodesic_chart(path, selector))


@cli.command()
@click.argument('first', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument('second', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--out', type=click.Path(file_okay=False, path_type=Path), default=Path('aligned'),
              help='Output directory for the warped curve and warp.json')
@click.option('--show', is_flag=True, help='Render an alignment summary on stderr')
@click.option('--plot', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write the warp as plot-ready JSON')
@curve_options
@run_command
def align(first, second, out, show, plot, kind, samples, star, slopes, scheme, verbose):
    """Reparametrize the second curve to match the first"""
    session = Session(kind, samples, star, slopes, scheme, verbose=verbose)
    selector, (a, c) = session.load([first, second])
    result = session.backend(selector).align(a, c)

    session.storage.write(out / f"{second.stem}_aligned{second.suffix.lower()}", result.warped, selector)
    session.storage.write_warp(out / "warp.json", result.phi)
    if show:
        session.report.alignment_summary(result)
    if plot:
        VisualizationService.write(plot, VisualizationService.warp_chart(result.phi, result))
    click.echo(f"unaligned={format_distance(result.unaligned)}")
    click.echo(f"aligned={format_distance(result.aligned)}")


if __name__ == "__main__":
    cli()
