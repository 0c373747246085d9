import logging
from pathlib import Path

import pytest

from agqss.core.config import get_settings
from agqss.models.funcfield import CurveModel, Place
from agqss.models.gf import FieldSpec
from agqss.models.scheme import SchemeParams, build

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture(scope="session")
def f4() -> FieldSpec:
    return FieldSpec.default(2, 2)


@pytest.fixture(scope="session")
def f5() -> FieldSpec:
    return FieldSpec.default(5)


@pytest.fixture(scope="session")
def hermitian2(f4) -> CurveModel:
    return CurveModel.hermitian(f4, 2)


@pytest.fixture(scope="session")
def instance_a(hermitian2):
    """F4, y^2 + y = x^3, u = 4, n = 6, L = 2."""
    return build(SchemeParams.with_default_places(hermitian2, 4, 6, 2))


@pytest.fixture(scope="session")
def instance_b(hermitian2):
    """F4, y^2 + y = x^3, u = 4, n = 7, L = 1."""
    return build(SchemeParams.with_default_places(hermitian2, 4, 7, 1))


@pytest.fixture(scope="session")
def instance_rs(f5):
    """Rational over F5, u = 1, shares at 0, 1, 2, secret at 3."""
    curve = CurveModel.rational(f5)
    params = SchemeParams(
        curve, 1, 3, 1,
        share_places=(Place.affine(0), Place.affine(1), Place.affine(2)),
        secret_places=(Place.affine(3),),
    )
    return build(params)


@pytest.fixture(scope="session")
def toy():
    """Repetition code over F3: |s>|s>."""
    curve = CurveModel.rational(FieldSpec.default(3))
    return build(SchemeParams.with_default_places(curve, 0, 2, 1))


@pytest.fixture
def instances_dir() -> Path:
    return INSTANCES
