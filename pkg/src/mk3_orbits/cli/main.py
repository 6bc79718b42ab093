"""mk3-orbits CLI entry point."""

import click

from .cage_cmd import cage
from .census_cmd import census_cmd
from .char0_cmd import char0
from .fibral_cmd import fibral
from .golden_cmd import golden
from .helpers import Mk3Group, configure_logging
from .init_cmd import init_cmd
from .linkcheck_cmd import linkcheck
from .linkcurve_cmd import linkcurve
from .orbit_cmd import orbit
from .orbits_cmd import orbits
from .points_cmd import points
from .singular_cmd import singular


@click.group(cls=Mk3Group)
@click.version_option(package_name="mk3-orbits")
@click.option("-v", "--verbose", count=True, help="Log progress (-v info, -vv debug).")
def cli(verbose: int) -> None:
    """mk3-orbits: Orbits of the automorphism group on Markoff-type K3 surfaces."""
    configure_logging(verbose)


cli.add_command(init_cmd, name="init")
cli.add_command(points)
cli.add_command(orbits)
cli.add_command(orbit)
cli.add_command(fibral)
cli.add_command(cage)
cli.add_command(linkcheck)
cli.add_command(linkcurve)
cli.add_command(singular)
cli.add_command(census_cmd, name="census")
cli.add_command(char0)
cli.add_command(golden)


if __name__ == "__main__":
    cli()
