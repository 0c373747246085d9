import logging

import click

from agqss import __version__
from agqss.commands import commands_analyze, commands_instance, commands_shares
from agqss.core.config import get_settings
from agqss.core.errors import AgqssError
from agqss.core.logging import setup_logging

logger = logging.getLogger("agqss")


class AgqssGroup(click.Group):
    """Maps library errors onto the exit-code contract."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except AgqssError as exc:
            logger.error("%s: %s", type(exc).__name__, exc.detail)
            click.echo(f"error: {exc.detail}", err=True)
            ctx.exit(int(exc.exit_code))


@click.group(cls=AgqssGroup)
@click.version_option(__version__, prog_name="agqss")
def cli():
    """Quantum ramp secret sharing from algebraic-geometry code pairs."""
    setup_logging(get_settings())


cli.add_command(commands_analyze.analyze_cmd)
cli.add_command(commands_shares.deal_cmd)
cli.add_command(commands_shares.reconstruct_cmd)
cli.add_command(commands_instance.thresholds_cmd)
cli.add_command(commands_instance.validate_cmd)
cli.add_command(commands_instance.curve_cmd)
