from pathlib import Path

import click

from agqss import __version__
from agqss.core.deps import Instance, get_instance
from agqss.models.funcfield import (
    affine_places,
    enumerate_rational_places,
    genus,
    hasse_weil_bound,
    is_maximal,
    rr_basis,
)
from agqss.models.scheme import Thresholds, thresholds
from agqss.sharing.qsim import verify_isometry

config_argument = click.argument("config", type=click.Path(exists=True, dir_okay=False, path_type=Path))


def echo_header(inst: Instance) -> None:
    click.echo(f"agqss {__version__}")
    click.echo(f"instance {inst.instance_hash}")


def _offset(t: int) -> str:
    if t == 0:
        return "k"
    return f"k{t:+d}"


def format_thresholds(th: Thresholds) -> str:
    forbidden = f"forbidden ≤ {th.t_forbidden}" + (" (vacuous)" if th.forbidden_vacuous else "")
    qualified = f"qualified ≥ {th.t_qualified}" + (" (vacuous)" if th.qualified_vacuous else "")
    return f"{forbidden}, {qualified}, strong(|Ī|=k): ≤ {_offset(th.t_forbidden)}"


@click.command("thresholds")
@config_argument
def thresholds_cmd(config: Path):
    """Print the sufficient-condition thresholds of an instance."""
    inst = get_instance(config)
    th = thresholds(inst.config.to_params())
    echo_header(inst)
    click.echo(f"u={th.u} n={th.n} L={th.secret_length} genus={th.genus}")
    click.echo(format_thresholds(th))


@click.command("validate")
@config_argument
def validate_cmd(config: Path):
    """Build the code pair, check the rank conditions and the encoding isometry."""
    inst = get_instance(config)
    cp = inst.code_pair
    params = cp.params
    echo_header(inst)
    click.echo(f"curve: {params.curve}, genus {params.genus}")
    click.echo(f"share places: {' '.join(str(P) for P in params.share_places)}")
    click.echo(f"secret places: {' '.join(str(P) for P in params.secret_places)}")
    click.echo(f"dim C1 = {cp.dim_c1}, dim C2 = {cp.dim_c2}, L = {cp.secret_length}")
    click.echo(f"isometry: {'ok' if verify_isometry(cp) else 'FAILED'}")


@click.command("curve")
@config_argument
@click.option("--max-u", type=int, default=None, help="Largest degree to tabulate (default: the instance u).")
def curve_cmd(config: Path, max_u):
    """Rational places, genus and Riemann-Roch dimensions of the instance curve."""
    inst = get_instance(config)
    curve = inst.config.curve_model()
    places = enumerate_rational_places(curve)
    echo_header(inst)
    click.echo(f"curve: {curve}")
    click.echo(f"rational places: {len(places)} ({len(affine_places(curve))} affine + Q_inf)")
    click.echo(f"genus: {genus(curve)}")
    click.echo(f"Hasse-Weil bound: {hasse_weil_bound(curve)}, maximal: {'yes' if is_maximal(curve) else 'no'}")
    top = max_u if max_u is not None else inst.config.u
    dims = " ".join(f"{u}:{rr_basis(curve, u).dim}" for u in range(top + 1))
    click.echo(f"dim L(u Q_inf): {dims}")
