import logging
from pathlib import Path

import click

from agqss import __version__
from agqss.commands.commands_instance import echo_header
from agqss.core.config import get_settings
from agqss.core.deps import get_instance, parse_model, read_json
from agqss.core.errors import AmbiguousSecretError, InstanceMismatchError, SchemaError
from agqss.schemas.instance import FieldConfig
from agqss.schemas.shares import ShareEntry, ShareFile
from agqss.sharing.classical_ss import Ambiguous, deal, reconstruct

logger = logging.getLogger(__name__)

config_argument = click.argument("config", type=click.Path(exists=True, dir_okay=False, path_type=Path))


def parse_digits(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise SchemaError(f"{what} must be a comma separated list of integers, got {text!r}") from exc


@click.command("deal")
@config_argument
@click.option("--secret", required=True, help="Secret digits as element reprs, e.g. '1,3'.")
@click.option("--seed", type=int, default=None, help="Overrides the instance seed.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
def deal_cmd(config: Path, secret: str, seed, out):
    """Deal classical shares of a secret."""
    inst = get_instance(config)
    cp = inst.code_pair
    seed = seed if seed is not None else inst.config.seed
    shares = deal(cp, parse_digits(secret, "--secret"), seed=seed)

    share_file = ShareFile(
        tool="agqss",
        version=__version__,
        instance_hash=inst.instance_hash,
        field=FieldConfig.from_spec(cp.spec),
        n=cp.n,
        seed=seed,
        rng=get_settings().rng_algorithm,
        shares=[ShareEntry(index=j + 1, value=v) for j, v in enumerate(shares.values)],
    )
    text = share_file.model_dump_json(indent=2) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("wrote %d shares to %s", cp.n, out)


@click.command("reconstruct")
@config_argument
@click.argument("shares", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--subset", default=None, help="1-based participants to use, e.g. '1,2,5' (default: all in the file).")
def reconstruct_cmd(config: Path, shares: Path, subset):
    """Recover the secret from a share file restricted to a subset of participants."""
    inst = get_instance(config)
    share_file = parse_model(shares, read_json(shares), ShareFile.model_validate)
    if share_file.instance_hash != inst.instance_hash:
        raise InstanceMismatchError(
            f"{shares} was dealt for instance {share_file.instance_hash[:12]}, "
            f"config is {inst.instance_hash[:12]}"
        )

    wanted = parse_digits(subset, "--subset") if subset is not None else None
    try:
        J, values = share_file.values_on(wanted)
    except KeyError as exc:
        raise SchemaError(f"{shares} has no share for participants {exc.args[0]}") from exc

    result = reconstruct(inst.code_pair, J, values)
    if isinstance(result, Ambiguous):
        raise AmbiguousSecretError(
            f"shares {[j + 1 for j in J]} are consistent with {result.count} secrets", result.count
        )
    echo_header(inst)
    click.echo("secret: " + " ".join(str(s) for s in result))
