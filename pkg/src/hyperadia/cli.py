"""Command-line interface for hyperadia."""

import json
import logging
import sys
from typing import List, Optional

import click

from hyperadia import __version__
from hyperadia.artifacts import ArtifactRunner
from hyperadia.config import Config
from hyperadia.core.exceptions import ConfigError
from hyperadia.core.models import ArtifactKind, Channel, GridSpec, OutputFormat, RunConfig
from hyperadia.utils.output_formatter import OutputFormatter

# Configure logging
logging.basicConfig(
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    level=logging.INFO
)
logger = logging.getLogger(__name__)

DEFAULT_LAMBDA_STAR = 10.0


def _potential_options(f):
    f = click.option('--v0bar', type=float, help='Step strength v0bar (exclusive with --lambda-star)')(f)
    f = click.option('--lambda-star', 'lambda_star', type=float,
                     help='Strength as lambda_star; 10 when neither is given')(f)
    return f


def _output_options(f):
    f = click.option('--tol-override', 'overrides', multiple=True, metavar='KEY=VAL',
                     help='Override a configuration value, e.g. adiabatic.xtol=1e-14')(f)
    f = click.option('--jobs', '-j', type=int, default=None, help='Worker processes')(f)
    f = click.option('--out', '-o', type=click.Path(file_okay=False), help='Output directory')(f)
    f = click.option('--format', '-f', 'fmt', type=click.Choice(['csv', 'json']), default=None,
                     help='Output format')(f)
    return f


def _channel_option(f):
    return click.option('--channel', 'channels', multiple=True, metavar='L1,L2,L',
                        help='Channel quantum numbers (repeatable)')(f)


def _rho_option(f):
    return click.option('--rho', type=float, help='Hyperradius (default 5)')(f)


def _rho_grid_option(f):
    return click.option('--rho-grid', help='Grid min:max:points[:log|lin] or min..max')(f)


def _parse_n_max(values: List[str]) -> List[int]:
    out: List[int] = []
    for item in values:
        for part in item.split(','):
            if part.strip():
                try:
                    out.append(int(part))
                except ValueError:
                    raise ConfigError(f"--n-max entries must be integers, got {part!r}")
    return out


def _build_run(
    ctx,
    lambda_star: Optional[float] = None,
    v0bar: Optional[float] = None,
    channels=(),
    rho: Optional[float] = None,
    rho_grid: Optional[str] = None,
    n_max=(),
    k_grid: Optional[str] = None,
    fmt: Optional[str] = None,
    out: Optional[str] = None,
    jobs: Optional[int] = None,
    overrides=(),
    **extra,
) -> RunConfig:
    config: Config = ctx.obj['config']
    config.apply_overrides(overrides)
    if lambda_star is None and v0bar is None:
        lambda_star = DEFAULT_LAMBDA_STAR
    return RunConfig(
        lambda_star=lambda_star,
        v0bar=v0bar,
        channels=[Channel.from_string(c) for c in channels],
        rho=rho,
        rho_grid=GridSpec.from_string(rho_grid) if rho_grid else None,
        n_max=_parse_n_max(list(n_max)),
        k_grid=GridSpec.from_string(k_grid) if k_grid else None,
        output_format=OutputFormat(fmt or config.get('output.format', 'csv')),
        out=out,
        jobs=jobs if jobs is not None else int(config.get('runtime.jobs', 1)),
        overrides=list(overrides),
        **extra,
    )


def _emit(ctx, kind: ArtifactKind, **options):
    """Build one artifact, write it, and map the outcome to the exit code."""
    config: Config = ctx.obj['config']
    try:
        run = _build_run(ctx, **options)
        table = ArtifactRunner(config).run(kind, run)
        formatter = OutputFormatter(
            pretty=bool(config.get('output.pretty_print', True)),
            digits=int(config.get('output.digits', 12)),
        )
        if run.out:
            table_path, sidecar_path = formatter.write(table, run.out, run.output_format.value)
            if not ctx.obj['quiet']:
                click.echo(f"Output written to: {table_path} (sidecar {sidecar_path})")
        else:
            text = formatter.format(table, run.output_format.value)
            click.echo(text, nl=not text.endswith('\n'))
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if table.partial:
        click.echo(f"Error: {len(table.errors)} rows failed: {table.errors[0]}", err=True)
        sys.exit(1)
    if not table.reference_ok:
        failed = [c for c in table.comparisons if not c.passed]
        for c in failed:
            click.echo(
                f"Reference mismatch {c.key}: computed {c.computed:.12g}, expected "
                f"{c.reference:.12g} ({c.provenance}), |diff| {c.abs_diff:.3g} > {c.tolerance:.3g}",
                err=True,
            )
        sys.exit(2)


@click.group()
@click.version_option(version=__version__, prog_name="hyperadia")
@click.option('--config', '-c', type=click.Path(exists=True), help='Configuration file path')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose output')
@click.option('--quiet', '-q', is_flag=True, help='Suppress all output except results')
@click.pass_context
def cli(ctx, config, verbose, quiet):
    """hyperadia - adiabatic eigenvalues of the 2D step-potential three-body problem.

    Solves the angular channel problem exactly, by truncated matrices and
    asymptotically, and reproduces the published tables as CSV.
    """
    ctx.ensure_object(dict)

    try:
        ctx.obj['config'] = Config(config) if config else Config()
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    root = logging.getLogger()
    if quiet:
        root.setLevel(logging.ERROR)
    elif verbose:
        root.setLevel(logging.DEBUG)
    else:
        root.setLevel(str(ctx.obj['config'].get('logging.level', 'INFO')).upper())

    log_file = ctx.obj['config'].get('logging.file')
    if log_file:
        handler = logging.FileHandler(log_file)
        handler.setFormatter(logging.Formatter(ctx.obj['config'].get('logging.format')))
        root.addHandler(handler)

    ctx.obj['verbose'] = verbose
    ctx.obj['quiet'] = quiet


@cli.command()
@_potential_options
@_channel_option
@_rho_option
@_output_options
@click.pass_context
def direct(ctx, **options):
    """Solve the matching condition of each channel at one hyperradius.

    Examples:
        hyperadia direct --lambda-star 10 --channel 0,0,0 --rho 5
        hyperadia direct --v0bar 0 --channel 1,1,1
    """
    _emit(ctx, ArtifactKind.DIRECT, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_grid_option
@_output_options
@click.pass_context
def sweep(ctx, **options):
    """Solve each channel along a rho grid.

    Examples:
        hyperadia sweep --channel 0,0,0 --rho-grid 1:1000:30:log
    """
    _emit(ctx, ArtifactKind.SWEEP, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_grid_option
@_output_options
@click.pass_context
def asym(ctx, **options):
    """Compare exact V_eff with the asymptotic models.

    Examples:
        hyperadia asym --channel 0,0,0 --rho-grid 50:10000:20
        hyperadia asym --channel 1,0,0 --rho-grid 10:1000:20
    """
    _emit(ctx, ArtifactKind.ASYM, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_option
@click.option('--n-max', 'n_max', multiple=True, help='Harmonic cutoffs, e.g. 40,60,80')
@_output_options
@click.pass_context
def matrix(ctx, **options):
    """Rayleigh-Ritz V_eff for growing basis cutoffs.

    Examples:
        hyperadia matrix --channel 0,0,0 --n-max 20,40,60
    """
    _emit(ctx, ArtifactKind.MATRIX, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_option
@click.option('--n-max', 'n_max', multiple=True, help='Harmonic cutoffs (default 110,120,130,140)')
@_output_options
@click.pass_context
def table1(ctx, **options):
    """Convergence of the matrix method for the ground channel."""
    _emit(ctx, ArtifactKind.TABLE1, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_option
@click.option('--n-max', 'n_max', multiple=True, help='Harmonic cutoff for every row')
@_output_options
@click.pass_context
def table2(ctx, **options):
    """Ritz and direct effective potentials of sixteen channels."""
    _emit(ctx, ArtifactKind.TABLE2, **options)


@cli.command()
@_potential_options
@_channel_option
@_output_options
@click.pass_context
def table3(ctx, **options):
    """Closed-form inverse-logarithmic coefficients."""
    _emit(ctx, ArtifactKind.TABLE3, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_grid_option
@_output_options
@click.pass_context
def fig2(ctx, **options):
    """KL, wider and best models against exact V_eff (l1 = 0)."""
    _emit(ctx, ArtifactKind.FIG2, **options)


@cli.command()
@_potential_options
@_channel_option
@_rho_grid_option
@click.option('--l1', type=int, default=None, help='|l1| of the channel (l1,0,0); default 1')
@_output_options
@click.pass_context
def fig3(ctx, **options):
    """Scaled exact V_eff approaching the inverse-power amplitude q (|l1| >= 1)."""
    _emit(ctx, ArtifactKind.FIG3, **options)


@cli.command()
@_potential_options
@_channel_option
@click.option('--k-grid', help='Wave numbers min:max:points[:log|lin] or min..max')
@click.option('--hard-disc', is_flag=True, help='Two-body hard-disc phase shifts instead')
@click.option('--L', 'L', type=int, default=0, help='Partial wave of the hard-disc reference')
@_output_options
@click.pass_context
def phase(ctx, **options):
    """Low-energy phase shifts and their fitted threshold law.

    Examples:
        hyperadia phase --channel 0,0,0 --k-grid 1e-6..1e-3
        hyperadia phase --channel 1,0,0
        hyperadia phase --hard-disc --L 0
    """
    _emit(ctx, ArtifactKind.PHASE, **options)


@cli.command()
@click.option('--json', 'output_json', is_flag=True, help='Output as JSON')
@click.pass_context
def info(ctx, output_json):
    """Show information about hyperadia.

    Examples:
        hyperadia info
        hyperadia info --json
    """
    config: Config = ctx.obj['config']
    info_data = {
        "version": __version__,
        "commands": [kind.value for kind in ArtifactKind],
        "modules": ["specfun", "adiabatic", "asymptotics", "matrixmethod", "phaseshift", "cli"],
        "output_formats": [f.value for f in OutputFormat],
        "default_potential": {"lambda_star": DEFAULT_LAMBDA_STAR},
        "defaults": {
            section: config.get(section)
            for section in ("specfun", "adiabatic", "matrix", "phase", "output", "runtime")
        },
        "reference_data": config.get('reference.path') or "packaged",
    }

    if output_json:
        click.echo(json.dumps(info_data, indent=2, sort_keys=True))
        return

    click.echo(f"hyperadia v{__version__}")
    click.echo("\nCommands:")
    click.echo(f"  {', '.join(info_data['commands'])}")
    click.echo("\nModules:")
    for module in info_data["modules"]:
        click.echo(f"  - {module}")
    click.echo("\nDefaults:")
    for section, values in info_data["defaults"].items():
        click.echo(f"  {section}:")
        for key, value in values.items():
            click.echo(f"    {key}: {value}")
    click.echo(f"\nReference data: {info_data['reference_data']}")
    click.echo(f"Output formats: {', '.join(info_data['output_formats'])}")


def main():
    """Main entry point for the CLI."""
    cli(obj={})


if __name__ == '__main__':
    main()
