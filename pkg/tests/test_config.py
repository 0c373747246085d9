import json
import logging

import pytest

from agqss.core.config import Settings, get_settings
from agqss.core.deps import get_instance, load_config
from agqss.core.errors import CapExceededError, SchemaError
from agqss.core.logging import setup_logging
from agqss.models.gf import FieldSpec
from agqss.schemas.instance import HermitianInstance, InstanceBase, RationalInstance
from agqss.sharing.qsim import CheckMode, is_forbidden_exact


def test_defaults():
    settings = get_settings()
    assert settings.operator_cap == 4096
    assert settings.coset_cap == 2**20
    assert settings.threads == 1
    assert settings.moduli["2^2"] == [1, 1, 1]


def test_env_override(monkeypatch):
    monkeypatch.setenv("AGQSS_OPERATOR_CAP", "10")
    monkeypatch.setenv("AGQSS_THREADS", "3")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.operator_cap == 10
    assert settings.threads == 3


def test_operator_cap_from_env(instance_rs, monkeypatch):
    monkeypatch.setenv("AGQSS_OPERATOR_CAP", "10")
    get_settings.cache_clear()
    with pytest.raises(CapExceededError):
        is_forbidden_exact(instance_rs, [0], mode=CheckMode.oracle)
    assert is_forbidden_exact(instance_rs, [0], mode=CheckMode.oracle, cap=25)


def test_moduli_override(monkeypatch):
    monkeypatch.setenv("AGQSS_MODULI", json.dumps({"3^2": [1, 2, 2]}))
    get_settings.cache_clear()
    assert FieldSpec.default(3, 2).modulus == (1, 2, 2)
    # unconfigured degrees fall back to the Conway polynomial
    assert FieldSpec.default(2, 2).modulus == (1, 1, 1)


def test_logging_fallback(tmp_path):
    setup_logging(Settings(logging_config=tmp_path / "missing.ini", log_level="debug"))
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert len(root.handlers) == 1
    assert isinstance(root.handlers[0], logging.StreamHandler)


def test_logging_file(tmp_path):
    ini = tmp_path / "logging.ini"
    ini.write_text(
        "[loggers]\nkeys = root\n\n[handlers]\nkeys = null\n\n[formatters]\nkeys =\n\n"
        "[logger_root]\nlevel = WARNING\nhandlers = null\n\n"
        "[handler_null]\nclass = NullHandler\nargs = ()\n",
        encoding="utf-8",
    )
    setup_logging(Settings(logging_config=ini, log_level="INFO"))
    root = logging.getLogger()
    assert isinstance(root.handlers[0], logging.NullHandler)
    assert root.level == logging.INFO


# -------- instance configs --------


def test_load_instance_a(instances_dir):
    config = load_config(instances_dir / "instance_a.json")
    assert isinstance(config, HermitianInstance)
    assert config.secret_length == 2
    assert config.mode is CheckMode.both
    assert config.caps.operator is None


def test_load_rational(instances_dir):
    config = load_config(instances_dir / "rs.json")
    assert isinstance(config, RationalInstance)
    assert config.mode is CheckMode.both
    params = config.to_params()
    assert [P.coords for P in params.secret_places] == [(3,)]


def test_instance_hash_is_canonical(instances_dir, tmp_path):
    data = json.loads((instances_dir / "instance_a.json").read_text(encoding="utf-8"))
    reordered = tmp_path / "reordered.json"
    reordered.write_text(json.dumps(dict(reversed(list(data.items()))), indent=4), encoding="utf-8")
    original = get_instance(instances_dir / "instance_a.json").instance_hash
    assert get_instance(reordered).instance_hash == original

    data["seed"] = 1
    changed = tmp_path / "changed.json"
    changed.write_text(json.dumps(data), encoding="utf-8")
    assert get_instance(changed).instance_hash != original


def test_operator_cap_precedence(instances_dir, tmp_path):
    data = json.loads((instances_dir / "rs.json").read_text(encoding="utf-8"))
    data["caps"] = {"operator": 50}
    path = tmp_path / "capped.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    inst = get_instance(path)
    assert inst.operator_cap() == 50
    assert inst.operator_cap(7) == 7
    assert get_instance(instances_dir / "rs.json").operator_cap() is None


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        load_config(tmp_path / "nope.json")


def test_missing_discriminator(tmp_path):
    path = tmp_path / "nocurve.json"
    path.write_text(json.dumps({"field": {"p": 5}, "u": 1, "n": 2, "L": 1}), encoding="utf-8")
    with pytest.raises(SchemaError, match="curve"):
        load_config(path)


def test_instance_base_is_abstract():
    with pytest.raises(TypeError):
        InstanceBase(field={"p": 5}, u=1, n=2, L=1)
